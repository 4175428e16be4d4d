"""UI模块"""
from .progress import ProgressCallback, ConsoleProgress, SilentProgress
from .rich_ui import RichUI

__all__ = ['ProgressCallback', 'ConsoleProgress', 'SilentProgress', 'RichUI']
