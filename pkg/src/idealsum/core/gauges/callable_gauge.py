"""
函数句柄规范函数
"""
from typing import Any, Callable, Dict

import numpy as np

from idealsum.errors import InputError
from ..gauge_base import GaugeFunction, ORLICZ, MODULUS


class CallableGauge(GaugeFunction):
    """
    包装向量化函数 t -> F(t)

    Args:
        fn: 向量化函数
        kind: 'orlicz' 或 'modulus'
        name: 名称
    """

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], kind: str = ORLICZ, name: str = 'callable'):
        if kind not in (ORLICZ, MODULUS):
            raise InputError(f"未知的规范类型: {kind}")
        self._fn = fn
        self._kind = kind
        self._name = name

    @classmethod
    def exp_minus_one(cls) -> 'CallableGauge':
        """e^t − 1"""
        return cls(lambda t: np.where(t > 700.0, np.inf, np.expm1(np.minimum(t, 700.0))),
                   kind=ORLICZ, name='exp(t)-1')

    @property
    def name(self) -> str:
        return self._name

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {'kind': 'callable', 'name': self._name}

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        return np.asarray(self._fn(np.asarray(t, dtype=float)), dtype=float)
