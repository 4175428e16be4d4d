"""
规范函数族
"""
from typing import Callable, Dict, Optional

import numpy as np

from idealsum.errors import InputError
from .gauge_base import GaugeFamily, GaugeFunction, ORLICZ, MODULUS
from .gauges import PowerGauge, CallableGauge


class UniformGaugeFamily(GaugeFamily):
    """所有 (k, i) 使用同一个规范函数"""

    def __init__(self, gauge: GaugeFunction):
        self.gauge = gauge

    @property
    def name(self) -> str:
        return f'uniform({self.gauge.name})'

    @property
    def uniform(self) -> Optional[GaugeFunction]:
        return self.gauge

    def member(self, k: int, i: int) -> GaugeFunction:
        return self.gauge


class PowerGaugeFamily(GaugeFamily):
    """
    幂函数族 F_k^{(i)}(t) = t^{p_{ki}}，p_{ki} ∈ [p_min, p_max]

    不给种子时 p_{ki} 依 (k + i) 循环取 [p_min, p_max] 上的 16 个等距值（含两端点）；
    给定种子时 p_{ki} 为均匀随机数。

    Args:
        p_min: 最小幂次
        p_max: 最大幂次
        seed: 随机种子
    """

    LEVELS = 16

    def __init__(self, p_min: float = 1.0, p_max: float = 2.0, seed: Optional[int] = None):
        if not (0 < p_min <= p_max):
            raise InputError(f"幂次范围不合法: [{p_min}, {p_max}]")
        self.p_min = float(p_min)
        self.p_max = float(p_max)
        self.seed = seed
        self._levels = np.linspace(self.p_min, self.p_max, self.LEVELS)
        self._cache: Dict[int, np.ndarray] = {}

    @property
    def name(self) -> str:
        return f'power[{self.p_min:g},{self.p_max:g}]'

    @property
    def kind(self) -> str:
        if self.p_min >= 1:
            return ORLICZ
        return MODULUS if self.p_max <= 1 else 'mixed'

    def exponents(self, ks: np.ndarray, i: int) -> np.ndarray:
        """p_{ki}，ks 从 1 开始"""
        ks = np.asarray(ks, dtype=int)
        if self.seed is None:
            return self._levels[(ks + i) % self.LEVELS]
        top = int(ks.max()) if ks.size else 0
        cached = self._cache.get(i)
        if cached is None or cached.size < top:
            # 同一种子下前缀与长度无关
            rng = np.random.default_rng([int(self.seed), int(i)])
            cached = self.p_min + (self.p_max - self.p_min) * rng.random(max(top, 1024))
            self._cache[i] = cached
        return cached[ks - 1]

    def member(self, k: int, i: int) -> GaugeFunction:
        return PowerGauge(float(self.exponents(np.array([k]), i)[0]))

    def evaluate(self, x: np.ndarray, i: int, ks: Optional[np.ndarray] = None) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        ks = np.arange(1, x.size + 1) if ks is None else np.asarray(ks)
        with np.errstate(over='ignore'):
            return np.power(x, self.exponents(ks, i))

    def evaluate_pairs(self, x: np.ndarray, ks: np.ndarray, ls: np.ndarray, i: int,
                       j: Optional[int] = None) -> np.ndarray:
        p = self.exponents(np.maximum.outer(np.asarray(ks), np.asarray(ls)).ravel(), i).reshape(np.shape(x))
        with np.errstate(over='ignore'):
            return np.power(np.asarray(x, dtype=float), p)


class CallableGaugeFamily(GaugeFamily):
    """
    由向量化函数 (t, k, i) -> F_k^{(i)}(t) 给出的族

    Args:
        fn: 向量化函数，t 与 k 为同形数组
        kind: 成员类型
        name: 名称
    """

    def __init__(self, fn: Callable[[np.ndarray, np.ndarray, int], np.ndarray], kind: str = MODULUS,
                 name: str = 'callable_family'):
        self._fn = fn
        self._kind = kind
        self._name = name

    @classmethod
    def scaled_identity(cls) -> 'CallableGaugeFamily':
        """F_k(t) = t/k，下包络随 k 趋于 0"""
        return cls(lambda t, k, i: t / k, kind=ORLICZ, name='t/k')

    @classmethod
    def clipped_linear(cls) -> 'CallableGaugeFamily':
        """F_k(t) = min(1, k·t)，对 k 不等度连续"""
        return cls(lambda t, k, i: np.minimum(1.0, k * t), kind=MODULUS, name='min(1,kt)')

    @property
    def name(self) -> str:
        return self._name

    @property
    def kind(self) -> str:
        return self._kind

    def member(self, k: int, i: int) -> GaugeFunction:
        fn = self._fn
        return CallableGauge(lambda t: fn(t, np.full(np.shape(t), k), i), kind=self._kind,
                             name=f'{self._name}[k={k},i={i}]')

    def evaluate(self, x: np.ndarray, i: int, ks: Optional[np.ndarray] = None) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        ks = np.arange(1, x.size + 1) if ks is None else np.asarray(ks)
        return np.asarray(self._fn(x, ks.astype(float), i), dtype=float)

    def evaluate_pairs(self, x: np.ndarray, ks: np.ndarray, ls: np.ndarray, i: int,
                       j: Optional[int] = None) -> np.ndarray:
        k_grid = np.maximum.outer(np.asarray(ks), np.asarray(ls)).astype(float)
        return np.asarray(self._fn(np.asarray(x, dtype=float), k_grid, i), dtype=float)
