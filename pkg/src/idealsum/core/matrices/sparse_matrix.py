"""
稀疏矩阵
由 (n, k, value) 三元组或 CSV 文件给出的有限行矩阵，其余行为 0
"""
import csv
from pathlib import Path
from typing import Iterable, Optional, Tuple

import numpy as np
from scipy import sparse

from idealsum.errors import InputError
from ..matrix_base import SummabilityMatrix, Row


class SparseMatrix(SummabilityMatrix):
    """
    基于 scipy.sparse.csr_matrix 的有限行矩阵

    Args:
        matrix: (行数, 列数) 的 CSR 矩阵，第 n-1 行对应行 n
        name: 名称
    """

    def __init__(self, matrix: sparse.spmatrix, name: str = 'sparse'):
        self._matrix = sparse.csr_matrix(matrix)
        self._matrix.sort_indices()
        self._matrix.eliminate_zeros()
        self._name = name

    @classmethod
    def from_triples(cls, triples: Iterable[Tuple[int, int, float]], name: str = 'sparse') -> 'SparseMatrix':
        """
        由三元组构建

        Args:
            triples: (n, k, a_nk)，下标从 1 开始；重复项累加
            name: 名称

        Returns:
            稀疏矩阵
        """
        triples = list(triples)
        if not triples:
            return cls(sparse.csr_matrix((0, 0)), name=name)
        ns, ks, vals = zip(*triples)
        ns = np.asarray(ns, dtype=int)
        ks = np.asarray(ks, dtype=int)
        if ns.min() < 1 or ks.min() < 1:
            raise InputError("矩阵下标必须从 1 开始")
        data = np.asarray(vals)
        shape = (int(ns.max()), int(ks.max()))
        return cls(sparse.coo_matrix((data, (ns - 1, ks - 1)), shape=shape).tocsr(), name=name)

    @classmethod
    def from_csv(cls, path: str, name: Optional[str] = None) -> 'SparseMatrix':
        """
        从 CSV 读取 (n,k,value) 三元组，允许首行为表头

        Raises:
            InputError: 文件不存在或某一行格式错误（错误信息包含行号）
        """
        file_path = Path(path)
        if not file_path.exists():
            raise InputError(f"矩阵文件不存在: {path}")

        triples = []
        with file_path.open('r', encoding='utf-8', newline='') as fh:
            for line_no, record in enumerate(csv.reader(fh), 1):
                if not record or all(not cell.strip() for cell in record):
                    continue
                if len(record) != 3:
                    raise InputError(f"{path}:{line_no}: 需要 3 列 (n,k,value)，实际 {len(record)} 列")
                try:
                    n, k, value = int(record[0]), int(record[1]), float(record[2])
                except ValueError:
                    if line_no == 1:
                        continue
                    raise InputError(f"{path}:{line_no}: 无法解析 {record}")
                triples.append((n, k, value))
        return cls.from_triples(triples, name=name or file_path.stem)

    @property
    def name(self) -> str:
        return self._name

    @property
    def matrix(self) -> sparse.csr_matrix:
        return self._matrix

    @property
    def lower_triangular(self) -> bool:
        coo = self._matrix.tocoo()
        return bool(np.all(coo.col <= coo.row))

    @property
    def nonnegative(self) -> bool:
        data = self._matrix.data
        return not np.iscomplexobj(data) and bool(np.all(data >= 0))

    def row(self, n: int, k_max: Optional[int] = None) -> Row:
        if n > self._matrix.shape[0]:
            return np.zeros(0, dtype=int), np.zeros(0, dtype=self._matrix.dtype)
        start, stop = self._matrix.indptr[n - 1], self._matrix.indptr[n]
        ks = self._matrix.indices[start:stop] + 1
        vals = self._matrix.data[start:stop]
        if k_max is not None:
            keep = ks <= k_max
            ks, vals = ks[keep], vals[keep]
        return ks, vals

    def support_end(self, n: int) -> float:
        ks, _ = self.row(n)
        return float(ks[-1]) if ks.size else 0.0

    def max_row(self, N: int) -> int:
        # 超出定义范围的行全为 0
        for n in range(1, min(N, self._matrix.shape[0]) + 1):
            if self.support_end(n) > N:
                return n - 1
        return N

    def _restricted(self, n_max: int, k_max: int) -> sparse.csr_matrix:
        coo = self._matrix.tocoo()
        keep = (coo.row < n_max) & (coo.col < k_max)
        return sparse.csr_matrix(
            (coo.data[keep], (coo.row[keep], coo.col[keep])),
            shape=(n_max, k_max),
        )

    def apply(self, values: np.ndarray, n_max: int) -> np.ndarray:
        values = np.asarray(values)
        return np.asarray(self._restricted(n_max, values.size) @ values).ravel()

    def row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        k_max = k_max or max(self._matrix.shape[1], 1)
        return np.real(np.asarray(self._restricted(n_max, k_max).sum(axis=1)).ravel())

    def abs_row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        k_max = k_max or max(self._matrix.shape[1], 1)
        return np.asarray(abs(self._restricted(n_max, k_max)).sum(axis=1)).ravel()

    def block(self, n_max: int, k_max: int) -> sparse.csr_matrix:
        return self._restricted(n_max, k_max)
