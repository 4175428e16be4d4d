"""
可和矩阵基类模块
定义按行生成的无穷矩阵的通用接口
"""
import math
from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

from idealsum.errors import CapabilityError

Row = Tuple[np.ndarray, np.ndarray]


class SummabilityMatrix(ABC):
    """
    可和矩阵抽象基类

    行 n 以稀疏形式 (列下标数组, 元素数组) 给出，列下标从 1 开始且升序。
    截断后的尾部 Σ_{k>K} |a_nk| 由 tail_bound 给出上界。
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """
        矩阵名称（用于标识）

        Returns:
            矩阵的简短名称
        """
        pass

    @property
    def description(self) -> str:
        """矩阵描述"""
        return self.name

    @property
    def lower_triangular(self) -> bool:
        """是否下三角 (a_nk = 0 for k > n)"""
        return False

    @property
    def nonnegative(self) -> bool:
        """抽样检查元素非负"""
        for n in range(1, 65):
            _, vals = self.row(n, k_max=4096)
            if np.iscomplexobj(vals) or np.any(vals < 0):
                return False
        return True

    @abstractmethod
    def row(self, n: int, k_max: Optional[int] = None) -> Row:
        """
        第 n 行的非零元素

        Args:
            n: 行号（从 1 开始）
            k_max: 只返回 k <= k_max 的元素；无穷支撑的行必须给出

        Returns:
            (列下标, 元素值)
        """
        pass

    @abstractmethod
    def support_end(self, n: int) -> float:
        """第 n 行最后一个非零列下标；无穷支撑返回 math.inf"""
        pass

    def tail_bound(self, n: int, K: int) -> float:
        """Σ_{k>K} |a_nk| 的上界，关于 K 非增"""
        return 0.0 if self.support_end(n) <= K else math.inf

    def entry(self, n: int, k: int) -> float:
        ks, vals = self.row(n, k_max=k)
        hit = np.flatnonzero(ks == k)
        return vals[hit[0]] if hit.size else 0.0

    def max_row(self, N: int) -> int:
        """
        长度为 N 的前缀能完整计算的最大行号

        下三角矩阵为 N；无穷支撑但有尾部界的行在任意 n 都可计算。
        """
        if self.lower_triangular:
            return N
        if math.isinf(self.support_end(1)) and math.isfinite(self.tail_bound(1, N)):
            return N
        lo, hi = 0, N
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.support_end(mid) <= N:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def apply(self, values: np.ndarray, n_max: int) -> np.ndarray:
        """
        行变换 (A v)(n) = Σ_{k<=len(v)} a_nk v_k，n = 1..n_max

        Args:
            values: 序列值 v_1..v_L
            n_max: 计算到的行号

        Returns:
            长度为 n_max 的数组
        """
        values = np.asarray(values)
        L = values.size
        out = np.zeros(n_max, dtype=np.result_type(values.dtype, float))
        for n in range(1, n_max + 1):
            ks, vals = self.row(n, k_max=L)
            if ks.size:
                out[n - 1] = np.dot(vals, values[ks - 1])
        return out

    def tail_errors(self, n_max: int, K: int) -> np.ndarray:
        """每行截断到 K 列的尾部界"""
        return np.array([self.tail_bound(n, K) for n in range(1, n_max + 1)], dtype=float)

    def row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        """行和 Σ_{k<=k_max} a_nk"""
        out = np.zeros(n_max, dtype=float)
        for n in range(1, n_max + 1):
            _, vals = self.row(n, k_max=k_max)
            out[n - 1] = np.real(np.sum(vals))
        return out

    def abs_row_sums(self, n_max: int, k_max: Optional[int] = None) -> np.ndarray:
        """绝对行和 Σ_{k<=k_max} |a_nk|"""
        out = np.zeros(n_max, dtype=float)
        for n in range(1, n_max + 1):
            _, vals = self.row(n, k_max=k_max)
            out[n - 1] = np.sum(np.abs(vals))
        return out

    def block(self, n_max: int, k_max: int) -> sparse.csr_matrix:
        """左上角 n_max × k_max 块"""
        rows, cols, data = [], [], []
        for n in range(1, n_max + 1):
            ks, vals = self.row(n, k_max=k_max)
            rows.append(np.full(ks.size, n - 1))
            cols.append(ks - 1)
            data.append(vals)
        if not rows:
            return sparse.csr_matrix((n_max, k_max))
        return sparse.csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n_max, k_max),
        )

    def _require_k_max(self, k_max: Optional[int]) -> int:
        if k_max is None:
            raise CapabilityError(f"矩阵 '{self.name}' 的行是无穷支撑的，必须指定截断列 k_max")
        return int(k_max)

    def __repr__(self) -> str:
        """字符串表示"""
        return f"<{self.__class__.__name__}: {self.name}>"
