"""
矩阵族可和性
B^I-可和、强可和、统计收敛、σ 方差刻画、几乎收敛、分解构造与 Tauberian 检验
"""
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import CapabilityError, InputError, RefusedError
from .extended import ExtendedNonneg
from .gauge_base import GaugeFamily
from .gauge_family import UniformGaugeFamily
from .gauges import PowerGauge
from .ideal_base import IdealHandle
from .ideal_core import ideal_limit, prefix_values
from .ideals import BasedIdeal, FiniteIdeal
from .matrix_base import SummabilityMatrix
from .matrix_engine import (
    cesaro, build_shift_family, derived_ideal, family_row_norm_bound, family_row_sums_to_one, transform,
)
from .matrix_family import MatrixFamily
from .orlicz import envelope_hypotheses, equicontinuity_delta, upper_envelope
from .sequence import SequencePrefix, IndexSet, as_values
from .verdict import Verdict, VerdictStatus, sample_witnesses

FamilyLike = Union[MatrixFamily, SummabilityMatrix]


def identity_gauges() -> GaugeFamily:
    """F_k^{(i)}(t) = t"""
    return UniformGaugeFamily(PowerGauge(1.0))


@dataclass
class ConvergenceRequest:
    """
    一次可和性检验的输入

    Attributes:
        s: 序列前缀（数组会被包装）
        family: 矩阵族（单个矩阵会被包装为单元素族）
        ideal: 理想 I
        gauges: 规范函数族，None 表示恒等函数
        target: 极限 a；None 表示搜索
        scale: 尺度
    """
    s: SequencePrefix
    family: FamilyLike
    ideal: IdealHandle
    gauges: Optional[GaugeFamily] = None
    target: Optional[complex] = None
    scale: Scale = field(default_factory=Scale)

    def __post_init__(self):
        if not isinstance(self.s, SequencePrefix):
            self.s = SequencePrefix(as_values(self.s))
        if isinstance(self.family, SummabilityMatrix):
            self.family = MatrixFamily.single(self.family)
        if self.s.N < self.scale.N:
            raise InputError(f"序列长度 {self.s.N} 小于尺度窗口 N={self.scale.N}")

    @property
    def values(self) -> np.ndarray:
        return self.s.values[:self.scale.N]

    @property
    def bound(self) -> Optional[float]:
        return self.s.bound if self.s.bounded else None

    def require_nonnegative(self, mode: str):
        """强可和与统计收敛要求矩阵族非负"""
        if not self.family.nonnegative:
            raise InputError(f"{mode} 要求矩阵族 '{self.family.name}' 非负")

    def with_target(self, target) -> 'ConvergenceRequest':
        return replace(self, target=target)


def _midpoint(sup: float, inf: float) -> float:
    return 0.5 * (sup + inf)


def _envelope_target(req: ConvergenceRequest, n_len: int):
    """变换族包络的 I-上/下极限中点"""
    F, I, scale = req.family, req.ideal, req.scale
    lo, hi = F.envelope(req.values, n_len)
    if np.iscomplexobj(lo):
        re = _midpoint(I.limsup(hi.real, scale), I.liminf(lo.real, scale))
        im = _midpoint(I.limsup(hi.imag, scale), I.liminf(lo.imag, scale))
        return complex(re, im)
    return _midpoint(I.limsup(hi, scale), I.liminf(lo, scale))


def b_summable(req: ConvergenceRequest, name: str = 'b_summable') -> Verdict:
    """
    B^I-可和: sup_i |(B_i s)(n) − a| 沿 I 趋于 0

    Args:
        req: 检验输入；target 为 None 时取变换包络的 I-上/下极限中点

    Returns:
        Verdict，estimate 为 a

    Raises:
        CapabilityError: 某行超出 N 且尾部非零，而 s 无界
    """
    scale = req.scale
    N = scale.N
    F = req.family
    n_len = F.eval_length(N)
    tail = F.tail_error(req.bound, N, n_len)
    target = req.target if req.target is not None else _envelope_target(req, n_len)
    deviation = F.sup_deviation(req.values, target, n_len) + tail
    verdict = req.ideal.null_test(deviation, scale, name=name, target=target)
    verdict.diagnostics.update({'rows': n_len, 'members': len(F), 'tail_error': tail})
    return verdict


def exceptional_set(s, a, eps: float) -> IndexSet:
    """
    D(s, a, ε) = {k <= N : |s_k − a| >= ε}

    Raises:
        InputError: ε <= 0
    """
    if not eps > 0:
        raise InputError(f"ε 必须为正: {eps}")
    values = as_values(s)
    return IndexSet(np.abs(values - a) >= eps, name=f'D({a},{eps:g})')


def extended_apply(member: SummabilityMatrix, g: np.ndarray, n_len: int) -> np.ndarray:
    """非负矩阵作用在可含 +∞ 的非负向量上，约定 0·∞ = 0"""
    infinite = np.isinf(g)
    out = np.real(member.apply(np.where(infinite, 0.0, g), n_len))
    if infinite.any():
        hit = np.real(member.apply(infinite.astype(float), n_len)) > 0
        out = np.where(hit, np.inf, out)
    return out


def _gauge_bound(gauges: GaugeFamily, bound: Optional[float], a, scale: Scale) -> Optional[float]:
    """截断尾部上 F_k^{(i)}(|s_k − a|) 的上界"""
    if bound is None:
        return None
    x = float(bound + abs(a))
    if x == 0:
        return 0.0
    if gauges.uniform is not None:
        return float(gauges.uniform.evaluate(np.array([x]))[0])
    return upper_envelope(gauges, x, scale).value


def _resolve_target(req: ConvergenceRequest, a):
    if a is not None:
        return a
    if req.target is not None:
        return req.target
    return b_summable(req).estimate


def strong_summable(req: ConvergenceRequest, a=None) -> Verdict:
    """
    强 B^I-可和: sup_i Σ_k b_nk^{(i)} F_k^{(i)}(|s_k − a|) 沿 I 趋于 0

    内层和在扩展非负数中计算，发散时值为 +∞。

    Raises:
        InputError: 矩阵族含负元素
    """
    req.require_nonnegative('强可和')
    a = _resolve_target(req, a)
    gauges = req.gauges or identity_gauges()
    scale = req.scale
    N = scale.N
    F = req.family
    n_len = F.eval_length(N)
    tail = F.tail_error(_gauge_bound(gauges, req.bound, a, scale), N, n_len)

    dist = np.abs(req.values - a)
    ks = np.arange(1, N + 1)
    strong = np.zeros(n_len)
    for i, member in F:
        g = np.asarray(gauges.evaluate(dist, i, ks=ks), dtype=float)
        np.maximum(strong, extended_apply(member, g, n_len), out=strong)
    verdict = req.ideal.null_test(strong + tail, scale, name='strong_summable', target=a)
    verdict.diagnostics.update({'gauges': gauges.name, 'rows': n_len, 'tail_error': tail,
                                'infinite_rows': int(np.isinf(strong).sum())})
    return verdict


def _statistical_target(req: ConvergenceRequest):
    """J_{B,I}-上/下极限中点；导出理想不可用时退回到 B^I-可和的估计"""
    try:
        J = derived_ideal(req.family, req.ideal, req.scale)
    except (RefusedError, CapabilityError):
        return b_summable(req).estimate
    values = req.values
    scale = req.scale
    if np.iscomplexobj(values):
        re = _midpoint(J.limsup(values.real, scale), J.liminf(values.real, scale))
        im = _midpoint(J.limsup(values.imag, scale), J.liminf(values.imag, scale))
        return complex(re, im)
    return _midpoint(J.limsup(values, scale), J.liminf(values, scale))


def weighted_density(F: MatrixFamily, K: IndexSet, N: int) -> np.ndarray:
    """sup_i Σ_k b_nk^{(i)} χ_K(k)，含截断尾部"""
    n_len = F.eval_length(N)
    mass = F.sup_apply(K.truncate(N).indicator(), n_len)
    return np.maximum(mass, 0.0) + F.tail_error(1.0, N, n_len)


def statistically_convergent(req: ConvergenceRequest, a=None, eps_list: Optional[Sequence[float]] = None) -> Verdict:
    """
    B^I-统计收敛: 对每个 ε，sup_i Σ_k b_nk^{(i)} χ_{D(s,a,ε)}(k) 沿 I 趋于 0

    Args:
        req: 检验输入
        a: 极限；None 时取 req.target，再取 J_{B,I}-上/下极限中点
        eps_list: 阈值，默认为 scale.eps_effective

    Raises:
        InputError: 矩阵族含负元素或某个 ε <= 0
    """
    req.require_nonnegative('统计收敛')
    if a is None:
        a = req.target if req.target is not None else _statistical_target(req)
    scale = req.scale
    eps_list = tuple(scale.eps_effective if eps_list is None else eps_list)
    if not eps_list:
        raise InputError("阈值列表不能为空")
    subs: Dict[str, Verdict] = {}
    for eps in eps_list:
        D = exceptional_set(req.values, a, eps)
        mass = weighted_density(req.family, D, scale.N)
        sub = req.ideal.null_test(mass, scale, name=f'density(D,{eps:g})')
        sub.diagnostics['exceptional_size'] = len(D)
        subs[f'{eps:g}'] = sub
    return Verdict.combine('statistically_convergent', subs, scale, estimate=a)


def sigma_variance(s, F: FamilyLike, gauges: Optional[GaugeFamily], n: int, i: int) -> ExtendedNonneg:
    """
    σ_{ni}(s) = Σ_k b_nk^{(i)} F_k^{(i)}(|s_k − (B_i s)(n)|)

    Args:
        s: 序列
        F: 矩阵族或单个矩阵
        gauges: 规范函数族，None 表示恒等函数
        n: 行号
        i: 族指标

    Raises:
        CapabilityError: 行超出前缀且尾部非零，而 s 无界
    """
    if isinstance(F, SummabilityMatrix):
        F = MatrixFamily.single(F)
    member = F.member(i)
    values = as_values(s)
    tau, _ = transform(s, member, n)
    ks, vals = member.row(n, k_max=values.size)
    if ks.size == 0:
        return ExtendedNonneg(0.0)
    gauges = gauges or identity_gauges()
    g = np.asarray(gauges.evaluate(np.abs(values[ks - 1] - tau), i, ks=ks), dtype=float)
    vals = np.real(vals)
    if np.any(np.isinf(g) & (vals > 0)):
        return ExtendedNonneg(math.inf)
    return ExtendedNonneg(float(np.dot(vals, np.where(np.isinf(g), 0.0, g))))


def rows_within_budget(members: Sequence[SummabilityMatrix], n_len: int, N: int, budget: int) -> int:
    """逐行累计支撑长度，返回总量不超过 budget 的最大行号"""
    total = 0
    for n in range(1, n_len + 1):
        total += sum(int(min(m.support_end(n), N)) for m in members)
        if total > budget:
            return max(n - 1, 1)
    return n_len


def sigma_series(req: ConvergenceRequest, member_count: int = 8) -> Tuple[np.ndarray, Dict[str, Any]]:
    """
    sup_i σ_{ni}(s)，n = 1..n_σ

    行数受 scale.row_support_budget 限制，族过大时抽样成员。

    Returns:
        (σ 序列, 诊断信息)
    """
    scale = req.scale
    N = scale.N
    F = req.family
    gauges = req.gauges or identity_gauges()
    n_len = F.eval_length(N)
    picks = F.sample_indices(member_count)
    members = [F.member(i) for i in picks]
    n_sigma = rows_within_budget(members, n_len, N, scale.row_support_budget)
    values = req.values
    sigma = np.zeros(n_sigma)
    for i, member in zip(picks, members):
        transformed = member.apply(values, n_sigma)
        for n in range(1, n_sigma + 1):
            ks, vals = member.row(n, k_max=N)
            if ks.size == 0:
                continue
            g = np.asarray(gauges.evaluate(np.abs(values[ks - 1] - transformed[n - 1]), i, ks=ks), dtype=float)
            vals = np.real(vals)
            if np.any(np.isinf(g) & (vals > 0)):
                sigma[n - 1] = np.inf
                continue
            sigma[n - 1] = max(sigma[n - 1], float(np.dot(vals, np.where(np.isinf(g), 0.0, g))))
    info = {'rows': n_sigma, 'rows_available': n_len, 'members_sampled': list(picks),
            'members_total': len(F)}
    return sigma, info


def variance_hypotheses(req: ConvergenceRequest) -> Dict[str, Verdict]:
    """方差刻画的前提: 包络、在 0 处等度连续、行和一致趋于 1"""
    scale = req.scale
    gauges = req.gauges or identity_gauges()
    hyps = envelope_hypotheses(gauges, scale.eps_effective, scale)
    eq = equicontinuity_delta(gauges, min(scale.eps_effective), scale)
    if eq.holds and not eq.scale_dependent:
        hyps['equicontinuity'] = Verdict(VerdictStatus.HOLDS, scale, estimate=eq.delta, name='equicontinuity',
                                         diagnostics=eq.to_dict())
    else:
        hyps['equicontinuity'] = Verdict.no_claim('equicontinuity', scale, 'equicontinuity', **eq.to_dict())
    hyps['row_sums_to_one'] = family_row_sums_to_one(req.family, req.ideal, scale)
    return hyps


def variance_characterization(req: ConvergenceRequest, a=None) -> Verdict:
    """
    方差刻画: s 统计收敛到 a ⇔ s 可和到 a 且 σ_{ni}(s) 沿 I 一致趋于 0

    前提不成立时返回不作结论的判定；结论与 statistically_convergent 交叉比对，
    比对结果记在 diagnostics['agrees_with_statistical']。

    Raises:
        InputError: s 无界或矩阵族含负元素
    """
    if not req.s.bounded:
        raise InputError(f"方差刻画要求有界序列，'{req.s.name}' 无界")
    req.require_nonnegative('方差刻画')
    scale = req.scale
    hyps = variance_hypotheses(req)
    if not all(v.holds for v in hyps.values()):
        failing = [k for k, v in hyps.items() if not v.holds]
        return Verdict.no_claim('variance_characterization', scale, 'hypotheses', hypotheses=hyps, failing=failing)

    a = _resolve_target(req, a)
    summable = b_summable(req.with_target(a))
    sigma, info = sigma_series(req)
    sigma_verdict = req.ideal.null_test(sigma, scale, name='sigma_to_zero')
    sigma_verdict.diagnostics.update(info)
    verdict = Verdict.combine('variance_characterization',
                              {'b_summable': summable, 'sigma_to_zero': sigma_verdict, **hyps}, scale, estimate=a)

    cross = statistically_convergent(req, a)
    agrees = verdict.status == cross.status or VerdictStatus.INCONCLUSIVE in (verdict.status, cross.status)
    verdict.hypotheses['statistical'] = cross
    verdict.diagnostics['agrees_with_statistical'] = agrees
    return verdict


def variance_bridge_bounds(s, F: FamilyLike, a, scale: Scale, rows: int = 256, member_count: int = 8) -> Verdict:
    """
    恒等规范下的逐行不等式: |Σ_k b_nk |s_k − a| − Σ_k b_nk |s_k − y|| <= M |y − a|

    y 取 (B_i s)(n) 与 a ± 1/2；M = Σ_k |b_nk|。行在 [1, n_len] 上几何抽样。
    """
    if isinstance(F, SummabilityMatrix):
        F = MatrixFamily.single(F)
    values = prefix_values(s, scale)
    N = scale.N
    n_len = F.eval_length(N)
    sample_rows = np.unique(np.geomspace(1, n_len, min(rows, n_len)).round().astype(int))
    violations: List[int] = []
    worst = 0.0
    for i in F.sample_indices(member_count):
        member = F.member(i)
        for n in sample_rows:
            ks, vals = member.row(int(n), k_max=N)
            if ks.size == 0:
                continue
            row_vals = values[ks - 1]
            tau = np.dot(vals, row_vals)
            M = float(np.sum(np.abs(vals)))
            at_a = float(np.real(np.dot(vals, np.abs(row_vals - a))))
            for y in (tau, a + 0.5, a - 0.5):
                at_y = float(np.real(np.dot(vals, np.abs(row_vals - y))))
                excess = abs(at_a - at_y) - M * abs(y - a)
                worst = max(worst, excess)
                if excess > scale.tol * max(1.0, abs(at_a)):
                    violations.append(int(n))
    if violations:
        return Verdict(VerdictStatus.FAILS, scale, estimate=a, residual=worst,
                       witnesses=sorted(set(violations))[:10], name='variance_bridge_bounds')
    return Verdict(VerdictStatus.HOLDS, scale, estimate=a, residual=max(worst, 0.0), name='variance_bridge_bounds',
                   diagnostics={'rows_checked': int(sample_rows.size)})


def _bounded_prefix(s, scale: Scale) -> SequencePrefix:
    if isinstance(s, SequencePrefix):
        if not s.bounded or s.bound is None:
            raise InputError(f"几乎收敛只对有界序列定义，'{s.name}' 无界")
        return s
    values = as_values(s)
    if not np.all(np.isfinite(values)):
        raise InputError("几乎收敛只对有界序列定义")
    return SequencePrefix(values)


def almost_convergence(s, scale: Scale) -> Verdict:
    """
    几乎收敛: 平移 Cesàro 族对 i <= N/2 一致收敛（沿 I_f）

    Raises:
        InputError: s 无界
    """
    prefix = _bounded_prefix(s, scale)
    i_max = max(scale.N // 2, 0)
    family = build_shift_family(cesaro(), i_max)
    req = ConvergenceRequest(prefix, family, FiniteIdeal(), scale=scale)
    verdict = b_summable(req, name='almost_convergence')
    verdict.diagnostics['i_max'] = i_max
    return verdict


@dataclass
class BaseConditionResult:
    """基条件: 每层 sup_i sup_{n∈B_m} Σ_k b_nk^{(i)} χ_{ℕ∖B_m}(k)"""
    levels: List[int]
    values: List[float]
    verdict: Verdict

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    def to_dict(self) -> Dict:
        return {'levels': self.levels, 'values': self.values, 'verdict': self.verdict.to_dict()}


def check_base_condition(F: MatrixFamily, base, scale: Scale) -> BaseConditionResult:
    """
    在探测层上计算基条件的值，末层值不超过 tol 时成立

    Args:
        F: 非负矩阵族
        base: FilterBase 或带基的理想
        scale: 尺度

    Raises:
        RefusedError: 矩阵族含负元素
    """
    base = getattr(base, 'base', base)
    if not F.nonnegative:
        raise RefusedError(f"矩阵族 '{F.name}' 含有负元素，基条件没有意义")
    N = scale.N
    n_len = F.eval_length(N)
    tail = F.tail_error(1.0, N, n_len)
    levels = list(base.levels(N, scale))
    values: List[float] = []
    worst_rows: List[int] = []
    for m in levels:
        inside = base.base_set(m, N).mask
        rows = inside[:n_len]
        if not rows.any():
            values.append(0.0)
            worst_rows.append(1)
            continue
        mass = np.maximum(F.sup_apply((~inside).astype(float), n_len), 0.0) + tail
        masked = np.where(rows, mass, -np.inf)
        j = int(np.argmax(masked))
        values.append(float(masked[j]))
        worst_rows.append(j + 1)

    final = values[-1] if values else math.inf
    diagnostics = {'levels': levels, 'values': values}
    if final <= scale.tol:
        status = VerdictStatus.HOLDS
    elif final <= scale.slack * scale.floor:
        status = VerdictStatus.INCONCLUSIVE
    else:
        status = VerdictStatus.FAILS
    witnesses = [worst_rows[-1]] if status == VerdictStatus.FAILS else []
    verdict = Verdict(status, scale, estimate=final, residual=final, witnesses=witnesses,
                      name='base_condition', diagnostics=diagnostics)
    return BaseConditionResult(levels, values, verdict)


@dataclass
class DecompositionResult:
    """
    统计收敛的分解: t 沿 I 收敛到 a，且 {s ≠ t} ∈ J_{B,I}

    Attributes:
        t: 构造出的序列，t_k ∈ {s_k, a}
        disagreement: C = {k : s_k ≠ t_k}
        trace: 每个阶段 m 的参数 (ε_m, |A_m|, max E_m, p_m, M_{p_m})
        verdict: 后置条件的合成判定
    """
    t: SequencePrefix
    disagreement: IndexSet
    trace: List[Dict[str, Any]]
    verdict: Verdict
    target: complex = 0.0

    def to_dict(self) -> Dict:
        return {
            'target': self.target,
            'disagreement_size': len(self.disagreement),
            'disagreement_first': self.disagreement.first(100),
            'trace': self.trace,
            'verdict': self.verdict.to_dict(),
        }


def _strictly_increasing_levels(values: Sequence[float]) -> List[int]:
    """M_p: 严格递增的层位置，使第 p 个的基条件值 <= 2^{-p}"""
    chosen: List[int] = []
    pos = 0
    p = 1
    while pos < len(values):
        if values[pos] <= 2.0 ** -p:
            chosen.append(pos)
            p += 1
        pos += 1
    return chosen


def decompose_statistical(s, F: FamilyLike, I: BasedIdeal, a, scale: Scale) -> DecompositionResult:
    """
    按构造把统计收敛的 s 改写为沿 I 收敛的 t

    ε_m = 2^{-m}，A_m = D(s, a, ε_m)，E_m 为 sup_i (B_i χ_{A_m})(n) >= ε_m 的行，
    F_m = B_{M_{p_m}} 为吸收 E_m 的最小层（p_m 严格递增），m(k) = min{m : k ∈ F_m}，
    k ∈ A_{m(k)} 时 t_k = a，否则 t_k = s_k。阶段在 ε_m 低于分辨率下限或 m > m_max 时停止，
    剩余下标归入末阶段之后的一个阶段。

    Raises:
        InputError: I 没有可数基
        RefusedError: I 不可容许、基条件不成立或 I ⊄ J_{B,I}
    """
    if isinstance(F, SummabilityMatrix):
        F = MatrixFamily.single(F)
    if not isinstance(I, BasedIdeal):
        raise InputError(f"分解需要带可数基的理想，'{I.name}' 没有")
    if not I.admissible:
        raise RefusedError(f"理想 '{I.name}' 不可容许")
    base_check = check_base_condition(F, I.base, scale)
    if not base_check.holds:
        raise RefusedError(f"基条件不成立 (末层值 {base_check.verdict.residual:.3g})")
    J = derived_ideal(F, I, scale)

    values = prefix_values(s, scale)
    N = scale.N
    n_len = F.eval_length(N)
    levels = base_check.levels
    base_masks = {m: I.base.base_set(m, N).mask for m in levels}

    inclusion = {f'B_{m}': J.contains(IndexSet(base_masks[m], name=f'B_{m}'), scale) for m in levels[:4]}
    if any(v.fails for v in inclusion.values()):
        raise RefusedError(f"基集合不属于 J_{{B,I}}，I ⊆ J_{{B,I}} 不成立")

    M = _strictly_increasing_levels(base_check.values)
    stage_of = np.zeros(N, dtype=int)
    dist = np.abs(values - a)
    trace: List[Dict[str, Any]] = []
    absorbed = True
    p_prev = 0
    m = 1
    while 2.0 ** -m >= scale.floor and m <= scale.m_max:
        eps_m = 2.0 ** -m
        A_m = IndexSet(dist >= eps_m, name=f'A_{m}')
        E_rows = weighted_density(F, A_m, N) >= eps_m
        E_max = int(np.flatnonzero(E_rows)[-1]) + 1 if E_rows.any() else 0
        p = next((q for q in range(p_prev + 1, len(M) + 1)
                  if not np.any(E_rows & ~base_masks[levels[M[q - 1]]][:n_len])), None)
        entry = {'m': m, 'eps': eps_m, 'A_size': len(A_m), 'E_max': E_max}
        if p is None:
            entry['absorbed'] = False
            trace.append(entry)
            absorbed = False
            break
        level = levels[M[p - 1]]
        F_m = base_masks[level]
        stage_of[(stage_of == 0) & F_m] = m
        entry.update({'p': p, 'M': level, 'F_size': int(F_m.sum()), 'absorbed': True})
        trace.append(entry)
        p_prev = p
        m += 1

    stage_of[stage_of == 0] = m
    trace.append({'m': m, 'eps': 2.0 ** -m, 'catch_all': True})
    replace_mask = dist >= np.power(2.0, -stage_of.astype(float))
    t_values = np.where(replace_mask, a, values)
    if np.iscomplexobj(values) or isinstance(a, complex):
        t_values = t_values.astype(complex)
    t = SequencePrefix(t_values, name=f't({getattr(s, "name", "s")})', limit=a)
    disagreement = IndexSet(t_values != values, name='C')

    checks = {
        'ideal_limit': ideal_limit(t, I, scale, target=a),
        'disagreement_in_J': J.contains(disagreement, scale),
        **inclusion,
    }
    if absorbed:
        verdict = Verdict.combine('decompose_statistical', checks, scale, estimate=a)
    else:
        verdict = Verdict.no_claim('decompose_statistical', scale, 'witness_not_absorbed', hypotheses=checks,
                                   stage=m)
    verdict.diagnostics['index_truncation'] = {'members': len(F), 'i_max': F.i_max}
    return DecompositionResult(t, disagreement, trace, verdict, target=a)


@dataclass
class TauberianReport:
    """
    Tauberian 检验报告

    Attributes:
        hypotheses: 各前提的判定
        premise: A-统计收敛的判定
        conclusion: 通常意义收敛的判定（前提不全时为不作结论）
        variation_constant: |s_n − s_{n+1}| <= C φ(n) 的最佳 C
    """
    hypotheses: Dict[str, Verdict]
    premise: Verdict
    conclusion: Verdict
    variation_constant: float = 0.0

    @property
    def holds(self) -> bool:
        return self.conclusion.holds

    @property
    def failing(self) -> List[str]:
        return [k for k, v in self.hypotheses.items() if not v.holds]

    def to_dict(self) -> Dict:
        return {
            'hypotheses': {k: v.to_dict() for k, v in self.hypotheses.items()},
            'premise': self.premise.to_dict(),
            'conclusion': self.conclusion.to_dict(),
            'variation_constant': self.variation_constant,
        }


def _yes(name: str, scale: Scale, **diagnostics) -> Verdict:
    return Verdict(VerdictStatus.HOLDS, scale, name=name, diagnostics=diagnostics)


def _no(name: str, scale: Scale, witnesses: Sequence[int], residual: float = 0.0, **diagnostics) -> Verdict:
    return Verdict(VerdictStatus.FAILS, scale, residual=residual, witnesses=sample_witnesses(witnesses),
                   name=name, diagnostics=diagnostics)


def _columns_to_zero(A: SummabilityMatrix, I: IdealHandle, scale: Scale, n_len: int) -> Verdict:
    k_budget = min(scale.column_budget, scale.N)
    block = A.block(n_len, k_budget).tocsc()
    checks: Dict[str, Verdict] = {}
    for k in np.unique(np.geomspace(1, k_budget, 16).round().astype(int)):
        column = np.abs(block[:, k - 1].toarray().ravel())
        checks[f'column_{k}'] = I.null_test(column, scale, name=f'column_{k}')
    return Verdict.combine('columns_to_zero', checks, scale)


def tauberian_check(s, A: SummabilityMatrix, I: IdealHandle, phi: Callable, psi: Callable, h: Callable,
                    scale: Scale, a=None) -> TauberianReport:
    """
    Tauberian 条件: 下三角 A、min_{k<=n} a_nk >= ψ(n)、φ 递减、x ψ(x+y) >= h(x φ(y))、
    |s_n − s_{n+1}| = O(φ(n))；全部成立且 s 为 A-统计收敛时，s 通常意义收敛

    Args:
        s: 序列
        A: 下三角矩阵
        I: 可容许理想
        phi, psi, h: [0, ∞) 上的向量化函数
        scale: 尺度
        a: 极限；None 表示搜索

    Raises:
        InputError: A 不是下三角
        RefusedError: I 不可容许
    """
    if not A.lower_triangular:
        raise InputError(f"矩阵 '{A.name}' 不是下三角")
    if not I.admissible:
        raise RefusedError(f"理想 '{I.name}' 不可容许")
    values = prefix_values(s, scale)
    N = scale.N
    n = np.arange(1, N + 1, dtype=float)
    hyps: Dict[str, Verdict] = {}

    sums = ideal_limit(np.real(A.row_sums(N, N)), I, scale, target=1.0)
    sums.name = 'row_sums_to_one'
    hyps['row_sums_to_one'] = sums
    hyps['columns_to_zero'] = _columns_to_zero(A, I, scale, N)

    psi_n = np.asarray(psi(n), dtype=float)
    short = []
    for row in range(1, N + 1):
        ks, vals = A.row(row, k_max=row)
        smallest = float(np.min(np.real(vals))) if ks.size == row else 0.0
        if smallest < psi_n[row - 1] * (1.0 - scale.tol):
            short.append(row)
    hyps['row_minimum'] = _no('row_minimum', scale, short[:10]) if short else _yes('row_minimum', scale)

    grid = np.geomspace(1.0 / N, float(N), 256)
    phi_grid = np.asarray(phi(grid), dtype=float)
    rising = np.flatnonzero(np.diff(phi_grid) > scale.tol * np.maximum(1.0, np.abs(phi_grid[:-1])))
    hyps['phi_decreasing'] = (_no('phi_decreasing', scale, [int(j) + 1 for j in rising[:10]],
                                  grid_points=[float(grid[j]) for j in rising[:10]])
                              if rising.size else _yes('phi_decreasing', scale))

    xs = np.geomspace(1e-3, float(N), 64)
    X, Y = np.meshgrid(xs, xs, indexing='ij')
    lhs = X * np.asarray(psi(X + Y), dtype=float)
    rhs = np.asarray(h(X * np.asarray(phi(Y), dtype=float)), dtype=float)
    gap = rhs - lhs
    bad = gap > scale.tol * np.maximum(1.0, np.abs(rhs))
    if bad.any():
        j = np.argwhere(bad)[0]
        hyps['coupling'] = _no('coupling', scale, [int(j[0]) + 1], residual=float(gap.max()),
                               x=float(xs[j[0]]), y=float(xs[j[1]]))
    else:
        hyps['coupling'] = _yes('coupling', scale)

    small = np.linspace(1e-6, 1.0, 256)
    h_small = np.asarray(h(small), dtype=float)
    if np.all(h_small > 0) and np.all(np.diff(h_small) >= -scale.tol):
        hyps['h_positive'] = _yes('h_positive', scale)
    else:
        hyps['h_positive'] = _no('h_positive', scale, [int(np.argmin(h_small)) + 1])

    ratios = np.abs(np.diff(values)) / np.asarray(phi(n[:-1]), dtype=float)
    ratios = np.where(np.isfinite(ratios), ratios, np.inf)
    half = max(ratios.size // 2, 1)
    c_half = float(np.max(ratios[:half])) if ratios.size else 0.0
    c_full = float(np.max(ratios)) if ratios.size else 0.0
    if not np.isfinite(c_full) or c_full > 1.5 * c_half + scale.tol:
        hyps['variation'] = _no('variation', scale, [int(np.argmax(ratios)) + 1], residual=c_full - c_half,
                                best_constant=c_full, first_half_constant=c_half)
    else:
        hyps['variation'] = _yes('variation', scale, best_constant=c_full)

    req = ConvergenceRequest(SequencePrefix(values), A, I, target=a, scale=scale)
    premise = statistically_convergent(req)
    estimate = premise.estimate
    if all(v.holds for v in hyps.values()) and premise.holds:
        conclusion = ideal_limit(values, FiniteIdeal(), scale, target=estimate)
        conclusion.name = 'ordinary_convergence'
    else:
        failing = [k for k, v in hyps.items() if not v.holds]
        if not premise.holds:
            failing.append('statistical')
        conclusion = Verdict.no_claim('ordinary_convergence', scale, 'hypotheses', failing=failing)
    return TauberianReport(hyps, premise, conclusion, variation_constant=c_full)


@dataclass
class FBConvergenceReport:
    """𝒞^J-可和 ⇒ 𝒜^I-可和 的检验报告"""
    hypotheses: Dict[str, Verdict]
    premise: Verdict
    conclusion: Verdict

    @property
    def holds(self) -> bool:
        return self.conclusion.holds

    def to_dict(self) -> Dict:
        return {
            'hypotheses': {k: v.to_dict() for k, v in self.hypotheses.items()},
            'premise': self.premise.to_dict(),
            'conclusion': self.conclusion.to_dict(),
        }


def row_variation(A: SummabilityMatrix, N: int, n_len: int) -> np.ndarray:
    """Σ_k |a_nk − a_{n,k+1}|，截断到 N 列并加上两倍尾部"""
    out = np.zeros(n_len)
    for n in range(1, n_len + 1):
        ks, vals = A.row(n, k_max=N)
        if ks.size:
            dense = np.zeros(int(ks[-1]) + 1, dtype=np.result_type(vals.dtype, float))
            dense[ks - 1] = vals
            out[n - 1] = float(np.sum(np.abs(np.diff(dense))))
        out[n - 1] += 2.0 * A.tail_bound(n, N)
    return out


def f_b_convergence(s, A: SummabilityMatrix, I: IdealHandle, scale: Scale,
                    J: Optional[IdealHandle] = None) -> FBConvergenceReport:
    """
    平移 Cesàro 族沿 J 可和 ⇒ A 的平移族沿 I 可和（同一极限）

    A 需满足: 列沿 I 趋于 0、行范数在理想外有界、Σ_k |a_nk − a_{n,k+1}| 沿 I 趋于 0；I 可容许。

    Args:
        s: 有界序列
        A: 矩阵
        I: 结论所用理想
        scale: 尺度（族截断为 scale.i_max）
        J: 前提所用理想，默认 I_f

    Raises:
        InputError: s 无界
    """
    prefix = _bounded_prefix(s, scale)
    J = J or FiniteIdeal()
    premise = b_summable(ConvergenceRequest(prefix, build_shift_family(cesaro(), scale.i_max), J, scale=scale),
                         name='cesaro_shift_summable')
    single = MatrixFamily.single(A)
    n_len = single.eval_length(scale.N)
    members = [A]
    n_var = rows_within_budget(members, n_len, scale.N, scale.row_support_budget)
    variation = I.null_test(row_variation(A, scale.N, n_var), scale, name='row_variation')
    hyps = {
        'admissible': (_yes('admissible', scale) if I.admissible
                       else Verdict.no_claim('admissible', scale, 'admissible')),
        'columns_to_zero': _columns_to_zero(A, I, scale, n_len),
        'row_norm_bound': family_row_norm_bound(single, I, scale),
        'row_variation': variation,
    }
    if premise.holds and all(v.holds for v in hyps.values()):
        target_family = build_shift_family(A, scale.i_max)
        conclusion = b_summable(ConvergenceRequest(prefix, target_family, I, target=premise.estimate, scale=scale),
                                name='shift_summable')
    else:
        failing = [k for k, v in hyps.items() if not v.holds]
        if not premise.holds:
            failing.append('premise')
        conclusion = Verdict.no_claim('shift_summable', scale, 'hypotheses', failing=failing)
    return FBConvergenceReport(hyps, premise, conclusion)


__all__ = [
    'ConvergenceRequest',
    'DecompositionResult',
    'BaseConditionResult',
    'TauberianReport',
    'FBConvergenceReport',
    'identity_gauges',
    'b_summable',
    'strong_summable',
    'statistically_convergent',
    'exceptional_set',
    'weighted_density',
    'extended_apply',
    'sigma_variance',
    'sigma_series',
    'variance_hypotheses',
    'variance_characterization',
    'variance_bridge_bounds',
    'almost_convergence',
    'check_base_condition',
    'decompose_statistical',
    'tauberian_check',
    'row_variation',
    'f_b_convergence',
]
