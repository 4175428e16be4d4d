"""
平移矩阵 b_nk^{(i)} = a_{n,k-i} (k > i)，k <= i 时为 0
"""
from typing import Optional

import numpy as np
from scipy import sparse

from idealsum.errors import InputError
from ..matrix_base import SummabilityMatrix, Row


class ShiftedMatrix(SummabilityMatrix):
    """
    把基础矩阵的列整体右移 shift 位

    Args:
        base: 基础矩阵
        shift: 平移量 i >= 0
    """

    def __init__(self, base: SummabilityMatrix, shift: int):
        if shift < 0:
            raise InputError(f"平移量不能为负: {shift}")
        self.base = base
        self.shift = int(shift)

    @property
    def name(self) -> str:
        return f'{self.base.name}>>{self.shift}'

    @property
    def lower_triangular(self) -> bool:
        return self.shift == 0 and self.base.lower_triangular

    @property
    def nonnegative(self) -> bool:
        return self.base.nonnegative

    def _base_k(self, k_max: Optional[int]) -> Optional[int]:
        return None if k_max is None else k_max - self.shift

    def row(self, n: int, k_max: Optional[int] = None) -> Row:
        base_k = self._base_k(k_max)
        if base_k is not None and base_k < 1:
            return np.zeros(0, dtype=int), np.zeros(0)
        ks, vals = self.base.row(n, k_max=base_k)
        return ks + self.shift, vals

    def support_end(self, n: int) -> float:
        return self.base.support_end(n) + self.shift

    def tail_bound(self, n: int, K: int) -> float:
        return self.base.tail_bound(n, max(K - self.shift, 0))

    def max_row(self, N: int) -> int:
        return max(self.base.max_row(N - self.shift), 0) if N > self.shift else 0

    def apply(self, values: np.ndarray, n_max: int) -> np.ndarray:
        values = np.asarray(values)
        if values.size <= self.shift:
            return np.zeros(n_max, dtype=np.result_type(values.dtype, float))
        return self.base.apply(values[self.shift:], n_max)

    def row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        base_k = self._base_k(k_max)
        if base_k is not None and base_k < 1:
            return np.zeros(n_max)
        return self.base.row_sums(n_max, base_k)

    def abs_row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        base_k = self._base_k(k_max)
        if base_k is not None and base_k < 1:
            return np.zeros(n_max)
        return self.base.abs_row_sums(n_max, base_k)

    def block(self, n_max: int, k_max: int) -> sparse.csr_matrix:
        base_k = k_max - self.shift
        if base_k < 1:
            return sparse.csr_matrix((n_max, k_max))
        return sparse.hstack([sparse.csr_matrix((n_max, self.shift)), self.base.block(n_max, base_k)]).tocsr()
