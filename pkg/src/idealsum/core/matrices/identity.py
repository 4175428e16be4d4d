"""
单位矩阵与对角矩阵
"""
from typing import Callable, Optional

import numpy as np

from ..matrix_base import SummabilityMatrix, Row

_EMPTY = (np.zeros(0, dtype=int), np.zeros(0))


class DiagonalMatrix(SummabilityMatrix):
    """
    对角矩阵 a_nn = d(n)

    Args:
        diagonal: 向量化函数 n -> a_nn
        name: 名称
    """

    def __init__(self, diagonal: Callable[[np.ndarray], np.ndarray], name: str = 'diagonal'):
        self._diagonal = diagonal
        self._name = name

    @property
    def name(self) -> str:
        return self._name

    @property
    def lower_triangular(self) -> bool:
        return True

    @property
    def nonnegative(self) -> bool:
        return bool(np.all(self._diagonal(np.arange(1, 4097)) >= 0))

    def row(self, n: int, k_max: Optional[int] = None) -> Row:
        if k_max is not None and n > k_max:
            return _EMPTY
        return np.array([n]), np.atleast_1d(np.asarray(self._diagonal(np.array([n])), dtype=float))

    def support_end(self, n: int) -> float:
        return n

    def apply(self, values: np.ndarray, n_max: int) -> np.ndarray:
        values = np.asarray(values)
        m = min(n_max, values.size)
        out = np.zeros(n_max, dtype=np.result_type(values.dtype, float))
        out[:m] = self._diagonal(np.arange(1, m + 1)) * values[:m]
        return out

    def row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        n = np.arange(1, n_max + 1)
        out = np.asarray(self._diagonal(n), dtype=float)
        if k_max is not None:
            out = np.where(n <= k_max, out, 0.0)
        return out

    def abs_row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        return np.abs(self.row_sums(n_max, k_max))


class IdentityMatrix(DiagonalMatrix):
    """单位矩阵，J_{B,I} 退化为 I"""

    def __init__(self):
        super().__init__(lambda n: np.ones(np.shape(n)), name='identity')

    @property
    def description(self) -> str:
        return '单位矩阵 a_nn = 1'

    @property
    def nonnegative(self) -> bool:
        return True
