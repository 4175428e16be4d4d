"""规范函数实现"""
from .power import PowerGauge
from .table import TableGauge
from .callable_gauge import CallableGauge

__all__ = [
    'PowerGauge',
    'TableGauge',
    'CallableGauge',
]
