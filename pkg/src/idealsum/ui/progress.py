"""进度回调接口 - 用于解耦UI和分析逻辑"""
from abc import ABC, abstractmethod
from datetime import datetime
from typing import Any, Dict, Optional

from idealsum.core.verdict import Verdict


class ProgressCallback(ABC):
    """进度回调基类 - 分析器通过此接口向UI传递信息"""

    @abstractmethod
    def on_start(self, config: Dict[str, Any]):
        """
        分析开始时调用

        Args:
            config: 回显的分析配置
        """
        pass

    @abstractmethod
    def on_log(self, message: str, level: str = 'info'):
        """
        日志消息

        Args:
            message: 日志内容
            level: 日志级别 (info, success, warning, error)
        """
        pass

    @abstractmethod
    def on_phase_change(self, phase: str, phase_num: int, total_phases: int):
        """
        阶段切换

        Args:
            phase: 阶段名称
            phase_num: 当前阶段编号
            total_phases: 总阶段数
        """
        pass

    @abstractmethod
    def on_complete(self, stats: Dict[str, Any]):
        """
        分析完成时调用

        Args:
            stats: 统计信息字典
        """
        pass

    @abstractmethod
    def on_error(self, error: Exception):
        """
        错误发生时调用

        Args:
            error: 异常对象
        """
        pass

    def on_verdict(self, name: str, verdict: Verdict):
        """
        得到一个判定时调用（前提或结论）

        Args:
            name: 判定在报告中的键
            verdict: 判定
        """
        pass  # 默认空实现，子类可选择性重写


STATUS_LABELS = {
    'holds_at_scale': '成立',
    'fails_at_scale': '不成立',
    'inconclusive': '不确定',
}


class ConsoleProgress(ProgressCallback):
    """简单的控制台进度输出（当禁用Rich时使用）"""

    def __init__(self, stream=None):
        self.start_time: Optional[datetime] = None
        self.stream = stream

    def _print(self, text: str = ''):
        print(text, file=self.stream)

    def on_start(self, config: Dict[str, Any]):
        """开始分析"""
        self.start_time = datetime.now()
        self._print(f"\n开始分析:")
        self._print(f"  模式: {config.get('mode')}")
        self._print(f"  矩阵: {config.get('matrix', {}).get('kind')}")
        self._print(f"  理想: {config.get('ideal', {}).get('kind')}")
        self._print(f"  窗口: N={config.get('scale', {}).get('N')}")
        self._print()

    def on_log(self, message: str, level: str = 'info'):
        """输出日志"""
        prefix = {
            'info': '[ℹ️]',
            'success': '[✅]',
            'warning': '[⚠️]',
            'error': '[❌]'
        }.get(level, '[ℹ️]')
        self._print(f"{prefix} {message}")

    def on_phase_change(self, phase: str, phase_num: int, total_phases: int):
        """阶段切换"""
        self._print(f"\n{'=' * 60}")
        self._print(f"阶段 {phase_num}/{total_phases}: {phase}")
        self._print(f"{'=' * 60}\n")

    def on_verdict(self, name: str, verdict: Verdict):
        """判定"""
        label = STATUS_LABELS.get(verdict.status.value, verdict.status.value)
        self._print(f"  {name}: {label} (残差 {verdict.residual:.3g})")

    def on_complete(self, stats: Dict[str, Any]):
        """分析完成"""
        elapsed = (datetime.now() - self.start_time).total_seconds() if self.start_time else 0.0
        self._print(f"\n{'=' * 60}")
        self._print("分析完成!")
        self._print(f"{'=' * 60}")
        self._print(f"结论: {STATUS_LABELS.get(stats.get('status'), stats.get('status'))}")
        self._print(f"判定数: {stats.get('verdicts', 0)}")
        self._print(f"分析时间: {elapsed:.2f} 秒")
        if stats.get('output_path'):
            self._print(f"输出文件: {stats['output_path']}")
        self._print()

    def on_error(self, error: Exception):
        """错误处理"""
        self._print(f"\n[错误] {str(error)}")


class SilentProgress(ProgressCallback):
    """不输出任何内容（--quiet 与批量模式使用）"""

    def on_start(self, config: Dict[str, Any]):
        pass

    def on_log(self, message: str, level: str = 'info'):
        pass

    def on_phase_change(self, phase: str, phase_num: int, total_phases: int):
        pass

    def on_complete(self, stats: Dict[str, Any]):
        pass

    def on_error(self, error: Exception):
        pass
