"""
常数行矩阵 b_nk = w_k（每行相同，无穷支撑）
"""
import math
from typing import Callable, Optional

import numpy as np

from ..matrix_base import SummabilityMatrix, Row


class ConstantRowMatrix(SummabilityMatrix):
    """
    每一行都是同一个权重序列的矩阵

    Args:
        weights: 向量化函数 k -> w_k
        tail: K -> Σ_{k>K} |w_k| 的上界
        name: 名称
    """

    def __init__(self, weights: Callable[[np.ndarray], np.ndarray],
                 tail: Callable[[int], float], name: str = 'constant_row'):
        self._weights = weights
        self._tail = tail
        self._name = name

    @classmethod
    def geometric(cls, ratio: float = 0.5) -> 'ConstantRowMatrix':
        """b_nk = ratio^k，尾部 ratio^{K+1}/(1-ratio)"""
        return cls(
            lambda k: np.power(ratio, np.asarray(k, dtype=float)),
            lambda K: ratio ** (K + 1) / (1.0 - ratio),
            name=f'geometric({ratio:g})',
        )

    @property
    def name(self) -> str:
        return self._name

    @property
    def nonnegative(self) -> bool:
        return bool(np.all(self._weights(np.arange(1, 4097)) >= 0))

    def row(self, n: int, k_max: Optional[int] = None) -> Row:
        k_max = self._require_k_max(k_max)
        ks = np.arange(1, k_max + 1)
        return ks, np.asarray(self._weights(ks), dtype=float)

    def support_end(self, n: int) -> float:
        return math.inf

    def tail_bound(self, n: int, K: int) -> float:
        return float(self._tail(K))

    def apply(self, values: np.ndarray, n_max: int) -> np.ndarray:
        values = np.asarray(values)
        w = self._weights(np.arange(1, values.size + 1))
        return np.full(n_max, np.dot(w, values))

    def row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        k_max = self._require_k_max(k_max)
        return np.full(n_max, float(np.sum(self._weights(np.arange(1, k_max + 1)))))

    def abs_row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        k_max = self._require_k_max(k_max)
        return np.full(n_max, float(np.sum(np.abs(self._weights(np.arange(1, k_max + 1))))))
