"""
异常定义
所有分析错误都继承自 SummabilityError
"""


class SummabilityError(Exception):
    """分析错误基类"""


class InputError(SummabilityError, ValueError):
    """输入不合法（空序列、长度不一致、参数越界等）"""


class CapabilityError(SummabilityError):
    """当前尺度或表示无法完成计算"""


class RefusedError(SummabilityError):
    """硬性前提不成立，拒绝计算"""


class InconclusiveError(SummabilityError):
    """窗口内没有可用于判定的下标"""


class GaugeLawError(InputError):
    """规范函数违反 F(t)=0 当且仅当 t=0 等定律"""
