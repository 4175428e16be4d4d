"""
矩阵引擎
矩阵变换、Toeplitz 正则性、条件 (+)、平移族、相容性条件与导出理想
"""
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import CapabilityError, InputError, RefusedError
from .ideal_base import IdealHandle
from .ideal_core import ideal_limit, uniform_ideal_limit
from .ideals import FiniteIdeal, MatrixDerivedIdeal
from .matrix_base import SummabilityMatrix
from .matrix_family import MatrixFamily
from .matrices import CesaroMatrix, CombinedMatrix
from .sequence import SequencePrefix, IndexSet, as_values
from .verdict import Verdict, VerdictStatus


def _bound_of(s) -> Optional[float]:
    if isinstance(s, SequencePrefix):
        return s.bound if s.bounded else None
    values = as_values(s)
    return float(np.max(np.abs(values))) if np.all(np.isfinite(values)) else None


def transform(s, B: SummabilityMatrix, n: int, N: Optional[int] = None) -> Tuple[complex, float]:
    """
    第 n 行的变换值与截断误差

    Args:
        s: 序列（SequencePrefix 或数组）
        B: 矩阵
        n: 行号（从 1 开始）
        N: 截断列，默认为序列长度

    Returns:
        (Σ_{k<=N} a_nk s_k, tail_bound(n, N)·sup|s|)

    Raises:
        CapabilityError: 行超出 N 且尾部非零，而 s 无界
    """
    values = as_values(s)
    N = values.size if N is None else min(int(N), values.size)
    if n < 1:
        raise InputError(f"行号从 1 开始: {n}")
    ks, vals = B.row(n, k_max=N)
    value = np.dot(vals, values[ks - 1]) if ks.size else 0.0
    tail = B.tail_bound(n, N)
    if tail == 0.0:
        return value, 0.0
    bound = _bound_of(s)
    if bound is None or math.isinf(tail):
        raise CapabilityError(f"矩阵 '{B.name}' 第 {n} 行超出 N={N} 且尾部非零，而序列无界")
    return value, tail * bound


def cesaro() -> SummabilityMatrix:
    """Cesàro 矩阵 a_nk = 1/n (k <= n)"""
    return CesaroMatrix()


def build_shift_family(A: SummabilityMatrix, i_max: int) -> MatrixFamily:
    """平移族 b_nk^{(i)} = a_{n,k-i}（k <= i 时为 0），i = 0..i_max"""
    return MatrixFamily.shifts(A, i_max)


@dataclass
class ToeplitzReport:
    """Toeplitz 三个条件的判定"""
    row_norms: Verdict
    row_sums: Verdict
    columns: Verdict
    matrix: str = ''

    @property
    def holds(self) -> bool:
        return self.row_norms.holds and self.row_sums.holds and self.columns.holds

    @property
    def failing(self) -> List[str]:
        return [k for k, v in self.verdicts().items() if v.fails]

    def verdicts(self) -> Dict[str, Verdict]:
        return {'(i)': self.row_norms, '(ii)': self.row_sums, '(iii)': self.columns}

    def combined(self, scale: Scale) -> Verdict:
        return Verdict.combine('toeplitz_regularity', self.verdicts(), scale)

    def to_dict(self) -> Dict:
        return {'matrix': self.matrix, **{k: v.to_dict() for k, v in self.verdicts().items()}}


def _abs_row_sums(A: SummabilityMatrix, n_len: int, N: int) -> np.ndarray:
    sums = A.abs_row_sums(n_len, N)
    if not A.lower_triangular:
        sums = sums + A.tail_errors(n_len, N)
    return sums


def check_toeplitz_regularity(A: SummabilityMatrix, scale: Scale) -> ToeplitzReport:
    """
    Toeplitz 正则性的三个条件

    (i) sup_n Σ_k |a_nk| 有限: 比较前后两半窗口的最大值，后半明显增长即失败；
    (ii) 行和沿 I_f 趋于 1；
    (iii) 前 column_budget 列逐列沿 I_f 趋于 0。
    """
    N = scale.N
    n_len = A.max_row(N)
    if n_len < 2:
        raise CapabilityError(f"矩阵 '{A.name}' 在 N={N} 上可计算的行不足")
    I_f = FiniteIdeal()

    norms = _abs_row_sums(A, n_len, N)
    half = n_len // 2
    first, second = float(np.max(norms[:half])), float(np.max(norms[half:]))
    growing = not np.isfinite(second) or second > first * 1.1 + scale.tol
    if growing:
        witness = int(np.argmax(norms)) + 1
        excess = second - first if np.isfinite(second) else math.inf
        row_norms = Verdict(VerdictStatus.FAILS, scale, estimate=second, residual=excess,
                            witnesses=[witness], name='toeplitz_i',
                            diagnostics={'first_half_max': first, 'second_half_max': second, 'growing': True})
    else:
        row_norms = Verdict(VerdictStatus.HOLDS, scale, estimate=max(first, second), name='toeplitz_i',
                            diagnostics={'first_half_max': first, 'second_half_max': second, 'growing': False})

    row_sums = ideal_limit(np.real(A.row_sums(n_len, N)), I_f, scale.with_(N=n_len), target=1.0)
    row_sums.name = 'toeplitz_ii'

    k_budget = min(scale.column_budget, N)
    block = A.block(n_len, k_budget).tocsc()
    column_checks: Dict[str, Verdict] = {}
    for k in range(k_budget):
        column = np.abs(block[:, k].toarray().ravel())
        column_checks[f'column_{k + 1}'] = I_f.null_test(column, scale.with_(N=n_len), name=f'column_{k + 1}')
    columns = Verdict.combine('toeplitz_iii', column_checks, scale)
    columns.hypotheses = {k: v for k, v in column_checks.items() if not v.holds}
    columns.diagnostics['columns_checked'] = k_budget
    return ToeplitzReport(row_norms, row_sums, columns, matrix=A.name)


def check_condition_plus(F: MatrixFamily, candidates: Optional[Sequence[int]] = None,
                         scale: Optional[Scale] = None) -> Verdict:
    """
    条件 (+): 存在 i₀ 使 inf_n Σ_k |b_nk^{(i₀)}| > 0

    通过时把 i₀ 记录到 F.plus_index。

    Args:
        F: 矩阵族
        candidates: 候选 i₀，默认为前 8 个指标
        scale: 尺度（阈值 plus_threshold）
    """
    scale = scale or Scale()
    candidates = list(candidates) if candidates is not None else list(F.indices[:8])
    N = scale.N
    n_len = F.eval_length(N)
    infima: Dict[int, float] = {}
    worst_row: Dict[int, int] = {}
    for i0 in candidates:
        member = F.member(i0)
        sums = member.abs_row_sums(n_len, N)
        infima[i0] = float(np.min(sums))
        worst_row[i0] = int(np.argmin(sums)) + 1
        if infima[i0] >= scale.plus_threshold:
            F.plus_index = i0
            return Verdict(VerdictStatus.HOLDS, scale, estimate=infima[i0], name='condition_plus',
                           diagnostics={'i0': i0, 'infimum': infima[i0], 'rows': n_len})
    if not candidates:
        return Verdict.no_claim('condition_plus', scale, 'no_candidates')
    best = max(infima, key=infima.get)
    return Verdict(VerdictStatus.FAILS, scale, estimate=infima[best], residual=scale.plus_threshold - infima[best],
                   witnesses=[worst_row[best]], name='condition_plus',
                   diagnostics={'infima': {str(k): v for k, v in infima.items()}})


@dataclass
class ConsistencyReport:
    """相容性引理的三个条件"""
    row_norms: Verdict
    sample_mass: Verdict
    row_sums: Verdict

    @property
    def holds(self) -> bool:
        return self.row_norms.holds and self.sample_mass.holds and self.row_sums.holds

    def verdicts(self) -> Dict[str, Verdict]:
        return {'bounded_row_norms': self.row_norms, 'sample_mass': self.sample_mass, 'row_sums': self.row_sums}

    def to_dict(self) -> Dict:
        return {k: v.to_dict() for k, v in self.verdicts().items()}


def family_row_norm_bound(F: MatrixFamily, I: IdealHandle, scale: Scale) -> Verdict:
    """
    sup_i sup_{n∉A} Σ_k |b_nk^{(i)}|，A 取理想最深探测层的基集合

    Returns:
        estimate 为上界 M；无穷时失败
    """
    N = scale.N
    n_len = F.eval_length(N)
    window = I.deep_window(n_len, scale)
    if not window.any():
        window = np.ones(n_len, dtype=bool)
    worst, worst_row = 0.0, 1
    for _, member in F:
        norms = _abs_row_sums(member, n_len, N)
        idx = int(np.argmax(np.where(window, norms, -np.inf)))
        if norms[idx] > worst:
            worst, worst_row = float(norms[idx]), idx + 1
    if not np.isfinite(worst):
        return Verdict(VerdictStatus.FAILS, scale, estimate=math.inf, residual=math.inf, witnesses=[worst_row],
                       name='row_norm_bound')
    return Verdict(VerdictStatus.HOLDS, scale, estimate=worst, name='row_norm_bound',
                   diagnostics={'window_start': int(np.argmax(window)) + 1})


def family_row_sums_to_one(F: MatrixFamily, I: IdealHandle, scale: Scale) -> Verdict:
    """Σ_k b_nk^{(i)} 沿 I 对 i 一致地趋于 1"""
    N = scale.N
    n_len = F.eval_length(N)
    sums = [np.real(member.row_sums(n_len, N)) for _, member in F]
    verdict = uniform_ideal_limit(sums, 1.0, I, scale, name='row_sums_to_one')
    return verdict


def check_consistency_conditions(F: MatrixFamily, I: IdealHandle, samples: Sequence, scale: Scale) -> ConsistencyReport:
    """
    相容性条件: 行范数在理想外有界、d_I 样本序列的质量一致趋于 0、行和一致趋于 1

    Args:
        samples: 有界且支撑属于 I 的序列（d_I 类）

    Raises:
        InputError: 样本序列的支撑不被 I 吸收
    """
    N = scale.N
    n_len = F.eval_length(N)
    row_norms = family_row_norm_bound(F, I, scale)

    sample_checks: Dict[str, Verdict] = {}
    for j, sample in enumerate(samples):
        values = as_values(sample)[:N]
        if values.size < N:
            values = np.concatenate([values, np.zeros(N - values.size)])
        support = IndexSet(values != 0, name=f'supp(sample_{j})')
        if not I.contains(support, scale).holds:
            raise InputError(f"样本序列 {j} 的支撑不属于理想 '{I.name}'，不在 d_I 中")
        masses = [np.abs(member.apply(values, n_len)) for _, member in F]
        sample_checks[f'sample_{j}'] = uniform_ideal_limit(masses, 0.0, I, scale, name=f'sample_{j}')
    if sample_checks:
        sample_mass = Verdict.combine('sample_mass', sample_checks, scale)
    else:
        sample_mass = Verdict(VerdictStatus.HOLDS, scale, name='sample_mass', diagnostics={'vacuous': True})

    row_sums = family_row_sums_to_one(F, I, scale)
    return ConsistencyReport(row_norms, sample_mass, row_sums)


def families_agree(A: MatrixFamily, B: MatrixFamily, I: IdealHandle, scale: Scale) -> Verdict:
    """
    Σ_k |a_nk^{(i)} − b_nk^{(i)}| 沿 I 对 i 一致地趋于 0（此时 J_{A,I} = J_{B,I}）

    Raises:
        InputError: 两个族的指标集不同
    """
    if tuple(A.indices) != tuple(B.indices):
        raise InputError(f"矩阵族指标集不一致: '{A.name}' vs '{B.name}'")
    N = scale.N
    n_len = min(A.eval_length(N), B.eval_length(N))
    gaps = []
    for i in A.indices:
        diff = CombinedMatrix.difference(A.member(i), B.member(i))
        gaps.append(_abs_row_sums(diff, n_len, N))
    verdict = uniform_ideal_limit(gaps, 0.0, I, scale, name='families_agree')
    return verdict


def derived_ideal(F: MatrixFamily, I: IdealHandle, scale: Optional[Scale] = None) -> MatrixDerivedIdeal:
    """
    导出理想 J_{B,I}

    条件 (+) 尚未验证时先在给定尺度上检查。

    Raises:
        RefusedError: 矩阵族含负元素或条件 (+) 不成立
    """
    if not F.nonnegative:
        raise RefusedError(f"矩阵族 '{F.name}' 含有负元素，不能导出理想")
    if F.plus_index is None:
        verdict = check_condition_plus(F, scale=scale)
        if not verdict.holds:
            raise RefusedError(f"矩阵族 '{F.name}' 不满足条件 (+)，ℕ ∉ J_{{B,I}} 无法保证")
    return MatrixDerivedIdeal(F, I)


def statistical_ideal(scale: Optional[Scale] = None) -> MatrixDerivedIdeal:
    """统计收敛的理想 J_{Cesàro, I_f}"""
    return derived_ideal(MatrixFamily.single(cesaro()), FiniteIdeal(), scale)


__all__ = [
    'SummabilityMatrix',
    'MatrixFamily',
    'IndexSet',
    'ToeplitzReport',
    'ConsistencyReport',
    'transform',
    'cesaro',
    'build_shift_family',
    'check_toeplitz_regularity',
    'check_condition_plus',
    'check_consistency_conditions',
    'family_row_norm_bound',
    'family_row_sums_to_one',
    'families_agree',
    'derived_ideal',
    'statistical_ideal',
]
