"""
Rich终端UI模块
使用Rich库渲染日志、判定表与结论面板
"""
import time
from datetime import datetime
from typing import Any, Dict, List, Tuple

from rich.box import DOUBLE, HEAVY, ROUNDED
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from idealsum.core.verdict import Verdict
from .progress import ProgressCallback, STATUS_LABELS


class RichUI(ProgressCallback):
    """Rich终端UI"""

    COLORS = {
        'title': '#00D9FF',
        'holds': '#00FF88',
        'inconclusive': '#FFD93D',
        'fails': '#FF5555',
        'info': '#8BE9FD',
        'accent': '#BD93F9',
        'muted': '#6272A4',
    }

    # 日志级别 -> (颜色键, 图标)
    LEVEL_STYLES = {
        'success': ('holds', '✅'),
        'warning': ('inconclusive', '⚠️'),
        'error': ('fails', '❌'),
        'info': ('info', '💬'),
    }

    # 判定状态 -> 颜色键
    STATUS_COLORS = {
        'holds_at_scale': 'holds',
        'fails_at_scale': 'fails',
        'inconclusive': 'inconclusive',
    }

    def __init__(self, config: Dict[str, Any], console: Console = None):
        """
        初始化Rich UI

        Args:
            config: 运行配置字典
            console: 输出控制台，默认写到标准错误，报告可以走标准输出
        """
        self.console = console or Console(stderr=True)
        self.config = config
        self.analysis: Dict[str, Any] = {}
        self.verdicts: List[Tuple[str, Verdict]] = []
        self.start_time = None

    def start_ui(self):
        """显示标题"""
        title = Text()
        title.append("idealsum", style=f"bold {self.COLORS['title']}")
        title.append("  序列可和性分析", style=self.COLORS['accent'])
        self.console.print(Panel(title, border_style=self.COLORS['title'], box=ROUNDED))

    # ========== ProgressCallback 接口实现 ==========

    def on_start(self, config: Dict[str, Any]):
        """分析开始"""
        self.analysis = config
        self.start_time = time.time()
        self.console.print(self._create_config_panel())

    def on_log(self, message: str, level: str = 'info'):
        """添加日志"""
        self.add_log(message, level)

    def on_phase_change(self, phase: str, phase_num: int, total_phases: int):
        """阶段切换"""
        self.add_log(f"阶段 {phase_num}/{total_phases}: {phase}", "info")

    def on_verdict(self, name: str, verdict: Verdict):
        """记录判定"""
        self.verdicts.append((name, verdict))

    def on_complete(self, stats: Dict[str, Any]):
        """分析完成"""
        elapsed = time.time() - self.start_time if self.start_time else 0
        self.add_log(f"分析完成! 总耗时: {elapsed:.2f} 秒", "success")
        if self.verdicts:
            self.console.print(self._create_verdict_table())
        self._show_final_stats(stats, elapsed)

    def on_error(self, error: Exception):
        """错误处理"""
        self.add_log(f"错误: {str(error)}", "error")
        self.console.print()
        error_panel = Panel(
            f"[{self.COLORS['fails']}]{str(error)}[/]",
            title=f"[bold {self.COLORS['fails']}]分析失败[/]",
            border_style=self.COLORS['fails'],
            box=HEAVY
        )
        self.console.print(error_panel)

    # ========== UI 渲染方法 ==========

    def add_log(self, message: str, level: str = "info"):
        """输出一条日志"""
        timestamp = datetime.now().strftime("%H:%M:%S.%f")[:-3]

        key, icon = self.LEVEL_STYLES.get(level, ('muted', '💬'))
        self.console.print(f"[dim]{timestamp}[/dim] [{self.COLORS[key]}]{icon}[/] {message}")

    def _status_text(self, status: str) -> str:
        color = self.COLORS[self.STATUS_COLORS.get(status, 'info')]
        return f"[{color}]{STATUS_LABELS.get(status, status)}[/]"

    def _create_config_panel(self) -> Panel:
        """创建配置信息面板"""
        table = Table.grid(padding=(0, 2), expand=False)
        table.add_column(style=f"{self.COLORS['muted']}", justify="right", no_wrap=True)
        table.add_column(style="white", overflow="fold")

        scale = self.analysis.get('scale', {})
        table.add_row("模式", f"[bold {self.COLORS['accent']}]{self.analysis.get('mode', 'N/A')}[/]")
        table.add_row("矩阵", str(self.analysis.get('matrix', {}).get('kind', 'N/A')))
        table.add_row("理想", str(self.analysis.get('ideal', {}).get('kind', 'N/A')))
        if self.analysis.get('gauges'):
            table.add_row("规范函数", str(self.analysis['gauges'].get('kind')))
        table.add_row("窗口", f"N={scale.get('N', 'N/A'):,}" if isinstance(scale.get('N'), int) else 'N/A')
        table.add_row("i_max", str(scale.get('i_max', 'N/A')))
        if self.analysis.get('target') is not None:
            table.add_row("极限 a", f"{self.analysis['target']:g}")
        table.add_row("输入", self._truncate_path(str(self.config.get('input_path') or 'N/A'), 40))
        table.add_row("输出", self._truncate_path(str(self.config.get('output_path') or '标准输出'), 40))

        return Panel(
            table,
            title=f"[bold {self.COLORS['title']}]分析配置[/]",
            border_style=self.COLORS['title'],
            box=ROUNDED,
            padding=(0, 1)
        )

    def _create_verdict_table(self) -> Table:
        """创建判定表"""
        table = Table(box=ROUNDED, border_style=self.COLORS['accent'], header_style=f"bold {self.COLORS['accent']}")
        table.add_column("判定")
        table.add_column("状态")
        table.add_column("估计", justify="right")
        table.add_column("残差", justify="right")
        table.add_column("见证", style=self.COLORS['muted'])
        for name, verdict in self.verdicts:
            estimate = '' if verdict.estimate is None else f"{verdict.estimate:.6g}"
            witnesses = ', '.join(str(w) for w in verdict.witnesses[:5])
            refused = verdict.diagnostics.get('refused')
            if refused:
                witnesses = f"前提: {refused}"
            table.add_row(name, self._status_text(verdict.status.value), estimate, f"{verdict.residual:.3g}",
                          witnesses)
        return table

    def _show_final_stats(self, stats: Dict[str, Any], elapsed: float):
        """显示最终结论，边框颜色随结论变化"""
        status = stats.get('status', 'inconclusive')
        color = self.COLORS[self.STATUS_COLORS.get(status, 'info')]
        table = Table(show_header=False, box=DOUBLE, border_style=color, padding=(0, 2))
        table.add_column(style=f"bold {self.COLORS['muted']}", justify="right")
        table.add_column(style="white")

        table.add_row("结论", self._status_text(status))
        if stats.get('estimate') is not None:
            table.add_row("估计", f"[{self.COLORS['info']}]{stats['estimate']}[/]")
        table.add_row("判定数", f"{stats.get('verdicts', len(self.verdicts)):,}")
        if stats.get('eps_skipped'):
            table.add_row("跳过的 ε", f"[{self.COLORS['inconclusive']}]{stats['eps_skipped']}[/]")
        table.add_row("退出码", str(stats.get('exit_code', '')))

        minutes = int(elapsed // 60)
        seconds = elapsed % 60
        table.add_row("分析时间", f"[{self.COLORS['accent']}]{minutes}:{seconds:05.2f}[/]")

        output_path = stats.get('output_path') or '标准输出'
        table.add_row("输出文件", f"[{self.COLORS['info']}]{self._truncate_path(output_path, 50)}[/]")

        title = Text()
        title.append("分析完成", style=f"bold {color}")
        self.console.print(Panel(table, title=title, border_style=color, box=DOUBLE, padding=(1, 2)))

    @staticmethod
    def _truncate_path(path: str, max_length: int) -> str:
        """过长的路径只保留末尾部分"""
        if len(path) <= max_length:
            return path
        return '...' + path[-(max_length - 3):]
