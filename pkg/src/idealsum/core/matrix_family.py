"""
矩阵族
按指标 i 索引的矩阵族 (B_i)_{i∈S}，S 为有限列表或截断的 ℕ₀
"""
import math
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from idealsum.errors import CapabilityError, InputError
from .matrix_base import SummabilityMatrix
from .matrices import ShiftedMatrix

MemberSource = Union[Callable[[int], SummabilityMatrix], Sequence[SummabilityMatrix]]


class MatrixFamily:
    """
    矩阵族

    Args:
        members: 指标 -> 矩阵 的函数，或按 indices 顺序排列的矩阵列表
        indices: 指标集 S（升序）
        name: 名称
        nonnegative: 声明的非负性；None 表示抽样判断
    """

    def __init__(self, members: MemberSource, indices: Sequence[int], name: str = 'family',
                 nonnegative: Optional[bool] = None):
        indices = tuple(int(i) for i in indices)
        if not indices:
            raise InputError("矩阵族的指标集不能为空")
        if isinstance(members, (list, tuple)):
            if len(members) != len(indices):
                raise InputError(f"矩阵个数 {len(members)} 与指标个数 {len(indices)} 不一致")
            table = dict(zip(indices, members))
            self._member_fn = table.__getitem__
        else:
            self._member_fn = members
        self.indices = indices
        self.name = name
        self._declared_nonnegative = nonnegative
        self._cache: Dict[int, SummabilityMatrix] = {}
        # 条件 (+) 通过后记录的 i₀
        self.plus_index: Optional[int] = None

    @classmethod
    def single(cls, matrix: SummabilityMatrix) -> 'MatrixFamily':
        """只含一个矩阵的族 (S = {0})"""
        return cls([matrix], [0], name=matrix.name)

    @classmethod
    def shifts(cls, base: SummabilityMatrix, i_max: int) -> 'MatrixFamily':
        """平移族 b_nk^{(i)} = a_{n,k-i}，i = 0..i_max"""
        if i_max < 0:
            raise InputError(f"i_max 不能为负: {i_max}")
        return cls(lambda i: base if i == 0 else ShiftedMatrix(base, i), range(i_max + 1),
                   name=f'shift({base.name}, {i_max})', nonnegative=base.nonnegative)

    def member(self, i: int) -> SummabilityMatrix:
        if i not in self._cache:
            if i not in self.indices:
                raise InputError(f"指标 {i} 不在矩阵族 '{self.name}' 中")
            self._cache[i] = self._member_fn(i)
        return self._cache[i]

    def __iter__(self) -> Iterator[Tuple[int, SummabilityMatrix]]:
        for i in self.indices:
            yield i, self.member(i)

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def i_max(self) -> int:
        return max(self.indices)

    def sample_indices(self, count: int = 8) -> Tuple[int, ...]:
        if len(self.indices) <= count:
            return self.indices
        picks = np.unique(np.linspace(0, len(self.indices) - 1, count).round().astype(int))
        return tuple(self.indices[p] for p in picks)

    @property
    def nonnegative(self) -> bool:
        """声明值，或对抽样成员逐一检查"""
        if self._declared_nonnegative is None:
            self._declared_nonnegative = all(self.member(i).nonnegative for i in self.sample_indices())
        return self._declared_nonnegative

    def eval_length(self, N: int) -> int:
        """长度为 N 的前缀上所有成员都能计算的行数"""
        length = min(self.member(i).max_row(N) for i in self.indices)
        if length < 1:
            raise CapabilityError(f"矩阵族 '{self.name}' 在 N={N} 的前缀上没有可计算的行")
        return length

    def tail_error(self, bound: Optional[float], N: int, n_len: int) -> float:
        """
        所有成员截断到 N 列的最大尾部误差

        Raises:
            CapabilityError: 尾部非零而序列没有已知上界
        """
        worst = 0.0
        for i in self.sample_indices(len(self.indices)):
            member = self.member(i)
            if member.lower_triangular:
                continue
            worst = max(worst, float(np.max(member.tail_errors(min(n_len, 64), N))))
        if worst == 0.0:
            return 0.0
        if bound is None or math.isinf(worst):
            raise CapabilityError(f"矩阵族 '{self.name}' 的行超出 N={N} 且尾部非零，而序列无界或上界未知")
        return worst * bound

    def iter_apply(self, values: np.ndarray, n_len: int) -> Iterator[Tuple[int, np.ndarray]]:
        """逐个成员计算 (B_i v)(n)，n = 1..n_len"""
        for i, member in self:
            yield i, member.apply(values, n_len)

    def sup_apply(self, values: np.ndarray, n_len: int) -> np.ndarray:
        """sup_i (B_i v)(n)（实值）"""
        out = np.full(n_len, -np.inf)
        for _, vec in self.iter_apply(values, n_len):
            np.maximum(out, np.real(vec), out=out)
        return out

    def inf_apply(self, values: np.ndarray, n_len: int) -> np.ndarray:
        """inf_i (B_i v)(n)（实值）"""
        out = np.full(n_len, np.inf)
        for _, vec in self.iter_apply(values, n_len):
            np.minimum(out, np.real(vec), out=out)
        return out

    def sup_deviation(self, values: np.ndarray, target, n_len: int) -> np.ndarray:
        """sup_i |(B_i v)(n) − target|"""
        out = np.zeros(n_len)
        for _, vec in self.iter_apply(values, n_len):
            np.maximum(out, np.abs(vec - target), out=out)
        return out

    def envelope(self, values: np.ndarray, n_len: int) -> Tuple[np.ndarray, np.ndarray]:
        """(inf_i, sup_i) 的变换包络；复值时分别对实部与虚部取包络并以复数返回"""
        lo_re = np.full(n_len, np.inf)
        hi_re = np.full(n_len, -np.inf)
        lo_im = np.full(n_len, np.inf)
        hi_im = np.full(n_len, -np.inf)
        for _, vec in self.iter_apply(values, n_len):
            np.minimum(lo_re, np.real(vec), out=lo_re)
            np.maximum(hi_re, np.real(vec), out=hi_re)
            np.minimum(lo_im, np.imag(vec), out=lo_im)
            np.maximum(hi_im, np.imag(vec), out=hi_im)
        if np.iscomplexobj(values):
            return lo_re + 1j * lo_im, hi_re + 1j * hi_im
        return lo_re, hi_re

    def row_sums(self, n_len: int, k_max: Optional[int] = None,
                 absolute: bool = False) -> Iterator[Tuple[int, np.ndarray]]:
        for i, member in self:
            yield i, (member.abs_row_sums(n_len, k_max) if absolute else member.row_sums(n_len, k_max))

    def __repr__(self) -> str:
        return f"<MatrixFamily {self.name}: |S|={len(self.indices)}>"
