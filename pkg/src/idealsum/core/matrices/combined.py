"""
线性组合矩阵 Σ_j c_j A_j
"""
from typing import List, Optional, Sequence, Tuple

import numpy as np

from idealsum.errors import InputError
from ..matrix_base import SummabilityMatrix, Row


class CombinedMatrix(SummabilityMatrix):
    """
    若干矩阵的线性组合

    Args:
        terms: (系数, 矩阵) 列表
        name: 名称
    """

    def __init__(self, terms: Sequence[Tuple[complex, SummabilityMatrix]], name: Optional[str] = None):
        if not terms:
            raise InputError("线性组合至少需要一项")
        self.terms: List[Tuple[complex, SummabilityMatrix]] = list(terms)
        self._name = name or ' + '.join(f'{c:g}·{m.name}' for c, m in self.terms)

    @classmethod
    def scaled(cls, matrix: SummabilityMatrix, factor: float) -> 'CombinedMatrix':
        return cls([(factor, matrix)], name=f'{factor:g}×{matrix.name}')

    @classmethod
    def difference(cls, a: SummabilityMatrix, b: SummabilityMatrix) -> 'CombinedMatrix':
        return cls([(1.0, a), (-1.0, b)], name=f'{a.name} − {b.name}')

    @property
    def name(self) -> str:
        return self._name

    @property
    def lower_triangular(self) -> bool:
        return all(m.lower_triangular for _, m in self.terms)

    @property
    def nonnegative(self) -> bool:
        if all(np.isreal(c) and c >= 0 and m.nonnegative for c, m in self.terms):
            return True
        return super().nonnegative

    def row(self, n: int, k_max: Optional[int] = None) -> Row:
        parts = [(c, *m.row(n, k_max=k_max)) for c, m in self.terms]
        ks_all = np.concatenate([ks for _, ks, _ in parts]) if parts else np.zeros(0, dtype=int)
        if ks_all.size == 0:
            return np.zeros(0, dtype=int), np.zeros(0)
        vals_all = np.concatenate([c * vals for c, _, vals in parts])
        ks, inverse = np.unique(ks_all, return_inverse=True)
        vals = np.zeros(ks.size, dtype=vals_all.dtype)
        np.add.at(vals, inverse, vals_all)
        keep = vals != 0
        return ks[keep], vals[keep]

    def support_end(self, n: int) -> float:
        return max(m.support_end(n) for _, m in self.terms)

    def tail_bound(self, n: int, K: int) -> float:
        return float(sum(abs(c) * m.tail_bound(n, K) for c, m in self.terms))

    def max_row(self, N: int) -> int:
        return min(m.max_row(N) for _, m in self.terms)

    def apply(self, values: np.ndarray, n_max: int) -> np.ndarray:
        return sum(c * m.apply(values, n_max) for c, m in self.terms)

    def row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        return np.real(sum(c * m.row_sums(n_max, k_max) for c, m in self.terms))
