"""
Cesàro 矩阵
a_nk = 1/n (k <= n)，否则为 0
"""
from typing import Optional

import numpy as np
from scipy import sparse

from ..matrix_base import SummabilityMatrix, Row


class CesaroMatrix(SummabilityMatrix):
    """Cesàro 算术平均矩阵"""

    @property
    def name(self) -> str:
        return 'cesaro'

    @property
    def description(self) -> str:
        return 'Cesàro 均值 a_nk = 1/n (k <= n)'

    @property
    def lower_triangular(self) -> bool:
        return True

    @property
    def nonnegative(self) -> bool:
        return True

    def row(self, n: int, k_max: Optional[int] = None) -> Row:
        end = n if k_max is None else min(n, k_max)
        ks = np.arange(1, end + 1)
        return ks, np.full(ks.size, 1.0 / n)

    def support_end(self, n: int) -> float:
        return n

    def apply(self, values: np.ndarray, n_max: int) -> np.ndarray:
        values = np.asarray(values)
        csum = np.cumsum(values)
        n = np.arange(1, n_max + 1)
        idx = np.minimum(n, values.size) - 1
        return csum[idx] / n

    def row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        n = np.arange(1, n_max + 1)
        if k_max is None:
            return np.ones(n_max)
        return np.minimum(n, k_max) / n

    abs_row_sums = row_sums

    def block(self, n_max: int, k_max: int) -> sparse.csr_matrix:
        n = np.arange(1, n_max + 1)
        counts = np.minimum(n, k_max)
        rows = np.repeat(n - 1, counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        cols = np.arange(rows.size) - starts
        data = 1.0 / (rows + 1)
        return sparse.csr_matrix((data, (rows, cols)), shape=(n_max, k_max))
