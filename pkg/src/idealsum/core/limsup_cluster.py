"""
矩阵上极限不等式与导出理想的聚点
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import InputError, RefusedError
from .gauge_base import GaugeFamily
from .ideal_base import IdealHandle, aggregate_outcomes, eps_outcomes, largest_failing_eps
from .ideal_core import ideal_limit, prefix_values
from .matrix_base import SummabilityMatrix
from .matrix_engine import derived_ideal, family_row_norm_bound, family_row_sums_to_one
from .matrix_family import MatrixFamily
from .orlicz import envelope_hypotheses
from .sequence import SequencePrefix, IndexSet
from .summability import (
    ConvergenceRequest, b_summable, exceptional_set, identity_gauges, statistically_convergent, extended_apply,
)
from .verdict import Verdict, VerdictStatus, first_witnesses, sample_witnesses


def _bounded_real(s, scale: Scale) -> np.ndarray:
    if isinstance(s, SequencePrefix) and not s.bounded:
        raise InputError(f"序列 '{s.name}' 无界")
    values = prefix_values(s, scale)
    if np.iscomplexobj(values):
        raise InputError("上/下极限只对实序列定义")
    if not np.all(np.isfinite(values)):
        raise InputError("序列必须有界")
    return values.astype(float)


def default_test_sets(N: int) -> Dict[str, IndexSet]:
    """检验集合: 有限集、平方数、几何间隔集"""
    n = np.arange(1, N + 1)
    root = np.round(np.sqrt(n)).astype(int)
    powers = n & (n - 1) == 0
    return {
        'finite': IndexSet(n <= 8, name='{1..8}'),
        'squares': IndexSet(root * root == n, name='squares'),
        'powers_of_two': IndexSet(powers, name='2^j'),
    }


def _abs_apply(A: SummabilityMatrix, mask: np.ndarray, n_len: int) -> np.ndarray:
    """Σ_k |a_nk| χ_E(k)"""
    if A.nonnegative:
        return np.real(A.apply(mask.astype(float), n_len))
    out = np.zeros(n_len)
    for n in range(1, n_len + 1):
        ks, vals = A.row(n, k_max=mask.size)
        if ks.size:
            out[n - 1] = float(np.sum(np.abs(vals) * mask[ks - 1]))
    return out


@dataclass
class LimsupReport:
    """
    I-limsup As <= J-limsup s 与 I-liminf As >= J-liminf s 的检验

    Attributes:
        hypotheses: 行范数有限、行和与绝对行和趋于 1、J 中检验集合的质量趋于 0
        lhs / rhs: I-limsup As 与 J-limsup s
        lhs_inf / rhs_inf: I-liminf As 与 J-liminf s
        verdict: 不等式的判定
    """
    hypotheses: Dict[str, Verdict]
    lhs: float
    rhs: float
    lhs_inf: float
    rhs_inf: float
    verdict: Verdict
    skipped_sets: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    def to_dict(self) -> Dict:
        return {
            'hypotheses': {k: v.to_dict() for k, v in self.hypotheses.items()},
            'limsup': {'lhs': self.lhs, 'rhs': self.rhs},
            'liminf': {'lhs': self.lhs_inf, 'rhs': self.rhs_inf},
            'verdict': self.verdict.to_dict(),
            'skipped_sets': self.skipped_sets,
        }


def matrix_limsup_inequality(A: SummabilityMatrix, I: IdealHandle, J: IdealHandle, s, scale: Scale,
                             test_sets: Optional[Dict[str, IndexSet]] = None) -> LimsupReport:
    """
    矩阵作用下上极限不增: I-limsup As <= J-limsup s，下极限对称

    A 可以含负元素。J 的成员无法全称检验，只在检验集合上检查质量条件，
    不属于 J 的集合被跳过并记录。

    Args:
        A: 矩阵
        I: 变换所用理想
        J: 序列所用理想
        s: 有界实序列
        scale: 尺度
        test_sets: 检验集合，默认见 default_test_sets

    Raises:
        InputError: s 无界或为复序列
    """
    values = _bounded_real(s, scale)
    N = scale.N
    n_len = A.max_row(N)
    if n_len < 1:
        raise InputError(f"矩阵 '{A.name}' 在 N={N} 上没有可计算的行")
    bound = float(np.max(np.abs(values)))
    tails = A.tail_errors(n_len, N) if not A.lower_triangular else np.zeros(n_len)

    hyps: Dict[str, Verdict] = {}
    abs_sums = A.abs_row_sums(n_len, N) + tails
    infinite = np.flatnonzero(~np.isfinite(abs_sums))
    if infinite.size:
        hyps['row_norms_finite'] = Verdict(VerdictStatus.FAILS, scale, residual=np.inf,
                                           witnesses=[int(j) + 1 for j in infinite[:10]], name='row_norms_finite')
    else:
        hyps['row_norms_finite'] = Verdict(VerdictStatus.HOLDS, scale, estimate=float(np.max(abs_sums)),
                                           name='row_norms_finite')
    sums_checks = {
        'abs_row_sums': ideal_limit(abs_sums, I, scale.with_(N=n_len), target=1.0),
        'row_sums': ideal_limit(np.real(A.row_sums(n_len, N)), I, scale.with_(N=n_len), target=1.0),
    }
    hyps['row_sums_to_one'] = Verdict.combine('row_sums_to_one', sums_checks, scale)

    test_sets = default_test_sets(N) if test_sets is None else test_sets
    set_checks: Dict[str, Verdict] = {}
    skipped: List[str] = []
    for label, E in test_sets.items():
        if not J.contains(E, scale).holds:
            skipped.append(label)
            continue
        mass = _abs_apply(A, E.truncate(N).mask, n_len) + tails
        set_checks[label] = I.null_test(mass, scale, name=f'set_{label}')
    if set_checks:
        hyps['set_mass'] = Verdict.combine('set_mass', set_checks, scale)
    else:
        hyps['set_mass'] = Verdict(VerdictStatus.HOLDS, scale, name='set_mass', diagnostics={'vacuous': True})

    transformed = np.real(A.apply(values, n_len))
    slack = tails * bound
    lhs = I.limsup(transformed + slack, scale)
    lhs_inf = I.liminf(transformed - slack, scale)
    rhs = J.limsup(values, scale)
    rhs_inf = J.liminf(values, scale)

    if not all(v.holds for v in hyps.values()):
        failing = [k for k, v in hyps.items() if not v.holds]
        verdict = Verdict.no_claim('matrix_limsup_inequality', scale, 'hypotheses', hypotheses=hyps,
                                   failing=failing)
    else:
        # 超出量按零极限判定同样的 ε 规则分类
        excess = max(lhs - rhs, rhs_inf - lhs_inf, 0.0)
        outcomes = eps_outcomes(excess, scale)
        status = aggregate_outcomes(outcomes)
        if status == VerdictStatus.FAILS:
            tol = largest_failing_eps(outcomes)
            deep = I.deep_window(n_len, scale)
            above = deep & ((transformed > rhs + tol) | (transformed < rhs_inf - tol))
            verdict = Verdict(VerdictStatus.FAILS, scale, estimate=lhs, residual=excess,
                              witnesses=sample_witnesses(first_witnesses(above), fallback=n_len),
                              name='matrix_limsup_inequality', hypotheses=hyps)
        else:
            verdict = Verdict(status, scale, estimate=lhs, residual=excess,
                              name='matrix_limsup_inequality', hypotheses=hyps)
    verdict.diagnostics.update({'limsup': [lhs, rhs], 'liminf': [lhs_inf, rhs_inf], 'skipped_sets': skipped})
    return LimsupReport(hyps, lhs, rhs, lhs_inf, rhs_inf, verdict, skipped_sets=skipped)


def _as_family(F) -> MatrixFamily:
    return MatrixFamily.single(F) if isinstance(F, SummabilityMatrix) else F


def limsup_implies_statistical(s, F, I: IdealHandle, a: float, scale: Scale) -> Verdict:
    """
    可和到 a 且 J_{B,I}-limsup s = a（或 liminf = a）⇒ 统计收敛到 a

    Raises:
        InputError: 矩阵族含负元素，或 s 无界、为复序列
    """
    F = _as_family(F)
    if not F.nonnegative:
        raise InputError(f"矩阵族 '{F.name}' 含有负元素")
    values = _bounded_real(s, scale)
    req = ConvergenceRequest(SequencePrefix(values), F, I, target=a, scale=scale)

    premises: Dict[str, Verdict] = {
        'row_norm_bound': family_row_norm_bound(F, I, scale),
        'row_sums_to_one': family_row_sums_to_one(F, I, scale),
        'b_summable': b_summable(req),
    }
    try:
        J = derived_ideal(F, I, scale)
    except RefusedError as e:
        return Verdict.no_claim('limsup_implies_statistical', scale, 'derived_ideal', hypotheses=premises,
                                message=str(e))
    upper, lower = J.limsup(values, scale), J.liminf(values, scale)
    close = min(scale.eps_effective)
    if abs(upper - a) <= close or abs(lower - a) <= close:
        premises['extreme_equals_target'] = Verdict(VerdictStatus.HOLDS, scale, estimate=a,
                                                    name='extreme_equals_target',
                                                    diagnostics={'limsup': upper, 'liminf': lower})
    else:
        premises['extreme_equals_target'] = Verdict.no_claim('extreme_equals_target', scale, 'extreme_equals_target',
                                                             limsup=upper, liminf=lower)
    if not all(v.holds for v in premises.values()):
        failing = [k for k, v in premises.items() if not v.holds]
        return Verdict.no_claim('limsup_implies_statistical', scale, 'premises', hypotheses=premises,
                                failing=failing)

    conclusion = statistically_convergent(req, a)
    return Verdict(conclusion.status, scale, estimate=a, residual=conclusion.residual,
                   witnesses=conclusion.witnesses, name='limsup_implies_statistical',
                   diagnostics={'limsup': upper, 'liminf': lower},
                   hypotheses={**premises, 'statistically_convergent': conclusion})


def _cluster_hypotheses(F: MatrixFamily, I: IdealHandle, scale: Scale) -> Dict[str, Verdict]:
    return {
        'row_norm_bound': family_row_norm_bound(F, I, scale),
        'row_sums_to_one': family_row_sums_to_one(F, I, scale),
    }


def jbi_cluster_point(s, F, I: IdealHandle, a, eps_list: Optional[Sequence[float]], scale: Scale) -> Verdict:
    """
    J_{B,I}-聚点判据: 对每个 ε，I-liminf inf_i Σ_k b_nk^{(i)} χ_{D(s,a,ε)}(k) < 1

    严格不等式按 1 − cluster_margin 判定。

    Returns:
        所有 ε 满足判据时成立；residual 为最大的判据值
    """
    F = _as_family(F)
    values = prefix_values(s, scale)
    eps_list = tuple(scale.eps_effective if eps_list is None else eps_list)
    hyps = _cluster_hypotheses(F, I, scale)
    if not all(v.holds for v in hyps.values()):
        return Verdict.no_claim('jbi_cluster_point', scale, 'hypotheses', hypotheses=hyps,
                                failing=[k for k, v in hyps.items() if not v.holds])
    N = scale.N
    n_len = F.eval_length(N)
    limit = 1.0 - scale.cluster_margin
    criteria: Dict[str, float] = {}
    witnesses: List[int] = []
    for eps in eps_list:
        D = exceptional_set(values, a, eps)
        lowest = F.inf_apply(D.indicator(), n_len)
        value = I.liminf(lowest, scale)
        criteria[f'{eps:g}'] = value
        if value >= limit and not witnesses:
            deep = I.deep_window(n_len, scale)
            witnesses = sample_witnesses(first_witnesses(deep & (lowest >= limit)), fallback=n_len)
    residual = max(criteria.values())
    status = VerdictStatus.FAILS if witnesses else VerdictStatus.HOLDS
    return Verdict(status, scale, estimate=a, residual=residual, witnesses=witnesses, name='jbi_cluster_point',
                   diagnostics={'criterion': criteria, 'margin': scale.cluster_margin}, hypotheses=hyps)


def cluster_gauge_sufficient(s, F, gauges: Optional[GaugeFamily], I: IdealHandle, a, scale: Scale) -> Verdict:
    """
    L(t) > 0 且 I-liminf inf_i Σ_k b_nk^{(i)} F_k^{(i)}(|s_k − a|) = 0 ⇒ a 是 J_{B,I}-聚点

    "= 0" 按不超过 slack·min ε 判定。

    Raises:
        RefusedError: 下包络在网格上退化
    """
    F = _as_family(F)
    gauges = gauges or identity_gauges()
    values = prefix_values(s, scale)
    envelope = envelope_hypotheses(gauges, scale.eps_effective, scale)['lower_envelope']
    if not envelope.holds:
        raise RefusedError(f"规范函数族 '{gauges.name}' 的下包络在网格上退化")
    N = scale.N
    n_len = F.eval_length(N)
    dist = np.abs(values - a)
    ks = np.arange(1, N + 1)
    lowest = np.full(n_len, np.inf)
    for i, member in F:
        g = np.asarray(gauges.evaluate(dist, i, ks=ks), dtype=float)
        np.minimum(lowest, extended_apply(member, g, n_len), out=lowest)
    value = I.liminf(lowest, scale)
    threshold = scale.slack * min(scale.eps_effective)
    premise = Verdict(VerdictStatus.HOLDS, scale, estimate=value, name='gauge_liminf') if value <= threshold \
        else Verdict.no_claim('gauge_liminf', scale, 'gauge_liminf', value=value, threshold=threshold)
    hyps = {'lower_envelope': envelope, 'gauge_liminf': premise}
    if not premise.holds:
        return Verdict.no_claim('cluster_gauge_sufficient', scale, 'gauge_liminf', hypotheses=hyps, value=value)
    conclusion = jbi_cluster_point(values, F, I, a, None, scale)
    return Verdict(conclusion.status, scale, estimate=a, residual=conclusion.residual,
                   witnesses=conclusion.witnesses, name='cluster_gauge_sufficient',
                   diagnostics={'gauge_liminf': value}, hypotheses={**hyps, 'jbi_cluster_point': conclusion})


__all__ = [
    'LimsupReport',
    'default_test_sets',
    'matrix_limsup_inequality',
    'limsup_implies_statistical',
    'jbi_cluster_point',
    'cluster_gauge_sufficient',
]
