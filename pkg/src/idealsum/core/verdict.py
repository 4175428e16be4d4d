"""
判定结果
所有收敛检验都返回携带尺度的 Verdict
"""
import math
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, List, Dict, Any, Union, Iterable

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import InputError


class VerdictStatus(str, Enum):
    """判定状态"""
    HOLDS = "holds_at_scale"
    FAILS = "fails_at_scale"
    INCONCLUSIVE = "inconclusive"

    @property
    def exit_code(self) -> int:
        return {
            VerdictStatus.HOLDS: 0,
            VerdictStatus.FAILS: 1,
            VerdictStatus.INCONCLUSIVE: 2,
        }[self]


# +∞ 残差在报告中的表示
RESIDUAL_CAP = sys.float_info.max


def to_jsonable(value: Any) -> Any:
    """把 numpy 标量、复数、嵌套容器转换为可 JSON 序列化的对象"""
    if isinstance(value, Verdict):
        return value.to_dict()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if value.imag == 0:
            return to_jsonable(value.real)
        return {'re': to_jsonable(value.real), 'im': to_jsonable(value.imag)}
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    return value


@dataclass
class Verdict:
    """
    有限尺度下的收敛判定

    Attributes:
        status: 判定状态
        scale: 判定所用尺度
        estimate: 极限估计（可为复数或 ±∞；无估计时为 None）
        residual: 非负残差
        witnesses: 见证下标（失败时非空）
        name: 检验名称
        diagnostics: 诊断信息
        hypotheses: 结论所依赖的前提判定
    """
    status: VerdictStatus
    scale: Scale
    estimate: Optional[Union[float, complex]] = None
    residual: float = 0.0
    witnesses: List[int] = field(default_factory=list)
    name: str = ''
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    hypotheses: Dict[str, 'Verdict'] = field(default_factory=dict)

    def __post_init__(self):
        self.status = VerdictStatus(self.status)
        self.witnesses = [int(w) for w in self.witnesses]
        residual = float(self.residual)
        if math.isnan(residual) and self.status != VerdictStatus.INCONCLUSIVE:
            raise InputError(f"判定 '{self.name}' 的残差为 NaN")
        if math.isinf(residual):
            self.diagnostics.setdefault('residual_infinite', True)
            residual = RESIDUAL_CAP
        if residual < 0:
            raise InputError(f"判定 '{self.name}' 的残差为负: {residual}")
        self.residual = residual
        if self.status == VerdictStatus.FAILS and not self.witnesses:
            raise InputError(f"判定 '{self.name}' 为失败但没有见证下标")

    @property
    def holds(self) -> bool:
        return self.status == VerdictStatus.HOLDS

    @property
    def fails(self) -> bool:
        return self.status == VerdictStatus.FAILS

    @property
    def inconclusive(self) -> bool:
        return self.status == VerdictStatus.INCONCLUSIVE

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    @classmethod
    def no_claim(cls, name: str, scale: Scale, reason: str, hypotheses: Optional[Dict[str, 'Verdict']] = None,
                 **diagnostics: Any) -> 'Verdict':
        """前提不成立时的 "不作结论" 判定"""
        diagnostics['refused'] = reason
        return cls(VerdictStatus.INCONCLUSIVE, scale, name=name, residual=0.0,
                   diagnostics=diagnostics, hypotheses=dict(hypotheses or {}))

    @classmethod
    def combine(cls, name: str, verdicts: Dict[str, 'Verdict'], scale: Scale,
                estimate: Optional[Union[float, complex]] = None) -> 'Verdict':
        """
        合取: 任一失败则失败，全部成立则成立，否则不确定

        Args:
            name: 合成判定名称
            verdicts: 子判定
            scale: 尺度
            estimate: 合成判定的估计

        Returns:
            合成判定，子判定记录在 hypotheses 中
        """
        items = list(verdicts.values())
        residual = max((v.residual for v in items), default=0.0)
        failing = [v for v in items if v.fails]
        if failing:
            status = VerdictStatus.FAILS
            witnesses = failing[0].witnesses
        elif items and all(v.holds for v in items):
            status = VerdictStatus.HOLDS
            witnesses = []
        else:
            status = VerdictStatus.INCONCLUSIVE
            witnesses = []
        return cls(status, scale, estimate=estimate, residual=residual, witnesses=witnesses,
                   name=name, hypotheses=dict(verdicts))

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典（键排序由 JSON 输出负责）"""
        return {
            'name': self.name,
            'status': self.status.value,
            'estimate': to_jsonable(self.estimate),
            'residual': to_jsonable(self.residual),
            'witnesses': list(self.witnesses),
            'scale': to_jsonable(self.scale.to_dict()),
            'diagnostics': to_jsonable(self.diagnostics),
            'hypotheses': {k: v.to_dict() for k, v in self.hypotheses.items()},
        }

    def __repr__(self) -> str:
        return f"<Verdict {self.name}: {self.status.value} est={self.estimate} res={self.residual:.3g}>"


def first_witnesses(mask: np.ndarray, count: int = 10, offset: int = 0) -> List[int]:
    """掩码中前 count 个 True 的数学下标"""
    idx = np.flatnonzero(np.asarray(mask, dtype=bool))[:count]
    return [int(i) + 1 + offset for i in idx]


def sample_witnesses(indices: Iterable[int], fallback: int = 1) -> List[int]:
    """保证见证列表非空"""
    out = [int(i) for i in indices]
    return out or [int(fallback)]
