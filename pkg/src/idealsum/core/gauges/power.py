"""
幂函数规范 F_p(t) = t^p
p >= 1 时为 Orlicz 函数，0 < p <= 1 时为模函数
"""
from typing import Any, Dict

import numpy as np

from idealsum.errors import InputError
from ..gauge_base import GaugeFunction, ORLICZ, MODULUS


class PowerGauge(GaugeFunction):
    """
    幂函数 t^p

    Args:
        p: 幂次，必须为正
    """

    def __init__(self, p: float):
        p = float(p)
        if not p > 0:
            raise InputError(f"幂次 p 必须为正: {p}")
        self.p = p

    @property
    def name(self) -> str:
        return f't^{self.p:g}'

    @property
    def kind(self) -> str:
        return ORLICZ if self.p >= 1 else MODULUS

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {'kind': 'power', 'p': self.p}

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        with np.errstate(over='ignore'):
            return np.power(np.asarray(t, dtype=float), self.p)
