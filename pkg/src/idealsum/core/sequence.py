"""
序列前缀与下标集合
下标约定: 数学下标 n (从 1 开始) 对应数组位置 n-1
"""
from dataclasses import dataclass, field
from typing import Callable, Optional, Iterable, List, Dict, Any

import numpy as np

from idealsum.errors import InputError


@dataclass
class SequencePrefix:
    """
    实/复序列的有限截断

    Attributes:
        values: 前 N 项 s_1..s_N
        name: 名称（用于报告）
        limit: 已知的解析极限（若有）
        bound: 整个序列的已知上界 sup|s_k|；None 表示未知或无界
        bounded: 序列是否有界（几乎收敛等操作要求有界）
    """
    values: np.ndarray
    name: str = 'sequence'
    limit: Optional[complex] = None
    bound: Optional[float] = None
    bounded: bool = True
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 1:
            raise InputError(f"序列必须是一维数组，实际维度 {values.ndim}")
        if values.size == 0:
            raise InputError("序列前缀不能为空")
        if np.iscomplexobj(values):
            values = values.astype(complex)
        else:
            values = values.astype(float)
        if np.any(np.isnan(values)):
            raise InputError("序列中含有 NaN")
        self.values = values
        if self.bound is None and self.bounded and np.all(np.isfinite(values)):
            self.bound = float(np.max(np.abs(values)))

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], N: int, **kwargs) -> 'SequencePrefix':
        """由向量化函数 n -> s_n 生成前缀"""
        n = np.arange(1, N + 1)
        return cls(np.asarray(fn(n)), **kwargs)

    @property
    def N(self) -> int:
        return int(self.values.size)

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values)

    @property
    def sup_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __len__(self) -> int:
        return self.N

    def __getitem__(self, n: int):
        """按数学下标 (从 1 开始) 取值"""
        if not 1 <= n <= self.N:
            raise IndexError(f"下标 {n} 超出 [1, {self.N}]")
        return self.values[n - 1]

    def window(self, N: int) -> 'SequencePrefix':
        """截取前 N 项"""
        if N > self.N:
            raise InputError(f"序列长度 {self.N} 小于要求的窗口 {N}")
        return SequencePrefix(self.values[:N], name=self.name, limit=self.limit,
                              bound=self.bound, bounded=self.bounded, metadata=dict(self.metadata))

    def map(self, fn: Callable[[np.ndarray], np.ndarray], name: Optional[str] = None) -> 'SequencePrefix':
        return SequencePrefix(np.asarray(fn(self.values)), name=name or self.name, bounded=self.bounded)

    def real(self) -> np.ndarray:
        """返回实数值；复序列报错"""
        if not self.is_real:
            raise InputError(f"序列 '{self.name}' 是复序列，此操作只接受实序列")
        return self.values


def as_values(s) -> np.ndarray:
    """把 SequencePrefix 或数组统一成一维数组"""
    if isinstance(s, SequencePrefix):
        return s.values
    values = np.asarray(s)
    if values.ndim != 1 or values.size == 0:
        raise InputError("需要非空一维序列")
    return values


@dataclass
class VectorSequencePrefix:
    """
    d 维向量序列的有限截断

    Attributes:
        vectors: 形状 (N, d) 的数组，第 n-1 行为 x_n
    """
    vectors: np.ndarray
    name: str = 'vectors'

    def __post_init__(self):
        vectors = np.asarray(self.vectors, dtype=float)
        if vectors.ndim != 2 or vectors.shape[0] == 0:
            raise InputError(f"向量序列必须是非空二维数组，实际形状 {vectors.shape}")
        if not np.all(np.isfinite(vectors)):
            raise InputError("向量序列必须有界（含有非有限值）")
        self.vectors = vectors

    @property
    def N(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def bound(self, norm: Optional[Callable[[np.ndarray], float]] = None) -> float:
        """R = max ‖x_n‖（默认欧氏范数）"""
        if norm is None:
            return float(np.max(np.linalg.norm(self.vectors, axis=1)))
        return float(max(norm(x) for x in self.vectors))

    def functional(self, y: np.ndarray) -> SequencePrefix:
        """标量序列 ⟨y, x_n⟩"""
        y = np.asarray(y, dtype=float)
        if y.shape != (self.dim,):
            raise InputError(f"对偶向量维度 {y.shape} 与空间维度 {self.dim} 不一致")
        return SequencePrefix(self.vectors @ y, name=f'<y,{self.name}>')


class IndexSet:
    """
    [1..N] 上的下标集合

    以布尔掩码保存枚举结果，可选地保留原始谓词。
    """

    def __init__(self, mask: np.ndarray, predicate: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                 name: str = 'K'):
        mask = np.asarray(mask, dtype=bool)
        if mask.ndim != 1:
            raise InputError("下标集合掩码必须是一维数组")
        self.mask = mask
        self.predicate = predicate
        self.name = name

    @classmethod
    def from_predicate(cls, predicate: Callable[[np.ndarray], np.ndarray], N: int, name: str = 'K') -> 'IndexSet':
        n = np.arange(1, N + 1)
        return cls(np.asarray(predicate(n), dtype=bool), predicate=predicate, name=name)

    @classmethod
    def from_indices(cls, indices: Iterable[int], N: int, name: str = 'K') -> 'IndexSet':
        mask = np.zeros(N, dtype=bool)
        idx = np.asarray(list(indices), dtype=int)
        if idx.size:
            if idx.min() < 1:
                raise InputError("下标从 1 开始")
            idx = idx[idx <= N]
            mask[idx - 1] = True
        return cls(mask, name=name)

    @classmethod
    def empty(cls, N: int) -> 'IndexSet':
        return cls(np.zeros(N, dtype=bool), name='∅')

    @classmethod
    def everything(cls, N: int) -> 'IndexSet':
        return cls(np.ones(N, dtype=bool), name='ℕ')

    @property
    def N(self) -> int:
        return int(self.mask.size)

    def indices(self) -> np.ndarray:
        """枚举 (从 1 开始)"""
        return np.flatnonzero(self.mask) + 1

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.N and bool(self.mask[n - 1])

    def __len__(self) -> int:
        return int(self.mask.sum())

    def indicator(self) -> np.ndarray:
        return self.mask.astype(float)

    def truncate(self, N: int) -> 'IndexSet':
        mask = np.zeros(N, dtype=bool)
        m = min(N, self.N)
        mask[:m] = self.mask[:m]
        return IndexSet(mask, predicate=self.predicate, name=self.name)

    def union(self, other: 'IndexSet') -> 'IndexSet':
        self._check_same(other)
        return IndexSet(self.mask | other.mask, name=f'{self.name}∪{other.name}')

    def intersection(self, other: 'IndexSet') -> 'IndexSet':
        self._check_same(other)
        return IndexSet(self.mask & other.mask, name=f'{self.name}∩{other.name}')

    def complement(self) -> 'IndexSet':
        return IndexSet(~self.mask, name=f'ℕ∖{self.name}')

    def issubset(self, other: 'IndexSet') -> bool:
        self._check_same(other)
        return not np.any(self.mask & ~other.mask)

    def check_predicate(self) -> bool:
        """枚举结果与谓词在 [1..N] 上是否一致"""
        if self.predicate is None:
            return True
        n = np.arange(1, self.N + 1)
        return bool(np.array_equal(np.asarray(self.predicate(n), dtype=bool), self.mask))

    def first(self, count: int = 10) -> List[int]:
        return [int(k) for k in self.indices()[:count]]

    def _check_same(self, other: 'IndexSet'):
        if other.N != self.N:
            raise InputError(f"下标集合窗口不一致: {self.N} vs {other.N}")

    def __repr__(self) -> str:
        return f"<IndexSet {self.name}: {len(self)}/{self.N}>"


def as_mask(K, N: Optional[int] = None) -> np.ndarray:
    """把 IndexSet 或布尔数组统一成掩码"""
    mask = K.mask if isinstance(K, IndexSet) else np.asarray(K, dtype=bool)
    if N is not None and mask.size != N:
        out = np.zeros(N, dtype=bool)
        m = min(N, mask.size)
        out[:m] = mask[:m]
        return out
    return mask
