"""
统计 pre-Cauchy 序列
两种变体的检测、二重规范和、子序列收敛、二分引理与无处稠密聚点定理
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import CapabilityError, InputError, RefusedError
from .extended import ExtendedNonneg
from .gauge_base import GaugeFamily
from .ideal_base import IdealHandle
from .ideal_core import is_ideal_bounded, prefix_values, uniform_ideal_limit
from .ideals import BasedIdeal
from .matrix_base import SummabilityMatrix
from .matrix_engine import derived_ideal, family_row_norm_bound, family_row_sums_to_one
from .matrix_family import MatrixFamily
from .orlicz import envelope_hypotheses, equicontinuity_delta
from .sequence import IndexSet, SequencePrefix, as_values
from .summability import ConvergenceRequest, identity_gauges, statistically_convergent
from .verdict import Verdict, VerdictStatus, first_witnesses

# 二重和分块的行数
_BLOCK = 512

# 相邻基元素的行差上限
SUCCESSIVE_ROW_LIMIT = 1.0 / 3.0

Pair = Tuple[int, int]


@dataclass
class PairExceptionalSet:
    """
    D(s, ε) = {(k, l) : |s_k − s_l| >= ε}

    关于 (k, l) 对称；ε 大于序列振幅时为空。
    """
    values: np.ndarray
    eps: float

    def __post_init__(self):
        if not self.eps > 0:
            raise InputError(f"ε 必须为正: {self.eps}")
        self.values = as_values(self.values)

    @property
    def oscillation(self) -> float:
        """sup_{k,l} |s_k − s_l|"""
        levels = np.unique(self.values)
        if not np.iscomplexobj(levels):
            return float(levels[-1] - levels[0])
        widest = 0.0
        for start in range(0, levels.size, _BLOCK):
            block = levels[start:start + _BLOCK]
            widest = max(widest, float(np.max(np.abs(block[:, None] - levels[None, :]))))
        return widest

    @property
    def empty(self) -> bool:
        return self.oscillation < self.eps

    def __contains__(self, pair: Pair) -> bool:
        k, l = pair
        return bool(abs(self.values[k - 1] - self.values[l - 1]) >= self.eps)

    def mask(self, ks: np.ndarray, ls: np.ndarray) -> np.ndarray:
        """χ_D 在 ks × ls 上的取值"""
        ks, ls = np.asarray(ks), np.asarray(ls)
        return np.abs(self.values[ks - 1][:, None] - self.values[ls - 1][None, :]) >= self.eps


def _as_family(F) -> MatrixFamily:
    return MatrixFamily.single(F) if isinstance(F, SummabilityMatrix) else F


def _require_nonnegative(F: MatrixFamily):
    if not F.nonnegative:
        raise InputError(f"pre-Cauchy 检验要求矩阵族 '{F.name}' 非负")


def _eps_tuple(eps_list: Optional[Sequence[float]], scale: Scale) -> Tuple[float, ...]:
    eps_list = tuple(scale.eps_effective if eps_list is None else eps_list)
    if not eps_list:
        raise InputError("阈值列表不能为空")
    if any(not (e > 0) for e in eps_list):
        raise InputError(f"ε 必须全部为正: {eps_list}")
    return eps_list


def _row(member: SummabilityMatrix, n: int, N: int) -> Tuple[np.ndarray, np.ndarray]:
    ks, vals = member.row(n, k_max=N)
    return ks, np.real(vals).astype(float)


def _pair_mass(xa: np.ndarray, wa: np.ndarray, xb: np.ndarray, wb: np.ndarray, eps: np.ndarray) -> np.ndarray:
    """
    Σ_k Σ_l a_k b_l χ(|x_k − y_l| >= ε)，对每个 ε

    实值时把 y 排序后用累计权重求 ε-邻域内的质量，复值时分块直接求和。
    """
    if xa.size == 0 or xb.size == 0:
        return np.zeros(eps.size)
    total = float(np.sum(wa)) * float(np.sum(wb))
    near = np.zeros(eps.size)
    if np.iscomplexobj(xa) or np.iscomplexobj(xb):
        for start in range(0, xa.size, _BLOCK):
            dist = np.abs(xa[start:start + _BLOCK, None] - xb[None, :])
            weights = wa[start:start + _BLOCK]
            for e, eps_e in enumerate(eps):
                near[e] += float(weights @ ((dist < eps_e) @ wb))
    else:
        order = np.argsort(xb, kind='stable')
        xs = xb[order]
        cum = np.concatenate(([0.0], np.cumsum(wb[order])))
        for e, eps_e in enumerate(eps):
            hi = np.searchsorted(xs, xa + eps_e, side='left')
            lo = np.searchsorted(xs, xa - eps_e, side='right')
            near[e] = float(np.dot(wa, cum[hi] - cum[lo]))
    return np.maximum(total - near, 0.0)


def _pair_cost(F: MatrixFamily, pairs: Sequence[Pair], n_len: int, N: int, quadratic: bool) -> np.ndarray:
    """逐行累计的二重和代价；对角对 (i, i) 只计一次行支撑"""
    n = np.arange(1, n_len + 1)
    sizes = {}
    for i in {i for pair in pairs for i in pair}:
        member = F.member(i)
        sizes[i] = np.array([min(member.support_end(int(r)), N) for r in n], dtype=float)
    per_row = np.zeros(n_len)
    for i, j in pairs:
        if quadratic:
            per_row += sizes[i] * sizes[j]
        else:
            per_row += sizes[i] if i == j else sizes[i] + sizes[j]
    return np.cumsum(per_row)


def _suggest_N(F: MatrixFamily, pairs: Sequence[Pair], N: int, budget: int, quadratic: bool) -> int:
    M = N
    while M > 1:
        M //= 2
        n_len = F.eval_length(M)
        if _pair_cost(F, pairs, n_len, M, quadratic)[-1] <= budget:
            return M
    return 1


def _budget_rows(F: MatrixFamily, pairs: Sequence[Pair], n_len: int, N: int, budget: int,
                 quadratic: bool) -> int:
    cost = _pair_cost(F, pairs, n_len, N, quadratic)
    return int(np.searchsorted(cost, budget, side='right'))


def _pair_tails(F: MatrixFamily, pairs: Sequence[Pair], n_len: int, N: int) -> Optional[np.ndarray]:
    """截断到 N 列后二重和的误差上界 R_i t_j + R_j t_i + t_i t_j"""
    members = {i: F.member(i) for pair in pairs for i in pair}
    if all(m.lower_triangular for m in members.values()):
        return None
    tails = {i: m.tail_errors(n_len, N) for i, m in members.items()}
    if not any(np.any(t > 0) for t in tails.values()):
        return None
    if any(np.any(np.isinf(t)) for t in tails.values()):
        raise CapabilityError(f"矩阵族 '{F.name}' 的行超出 N={N} 且没有尾部界")
    sums = {i: m.abs_row_sums(n_len, N) for i, m in members.items()}
    return np.array([sums[i] * tails[j] + sums[j] * tails[i] + tails[i] * tails[j] for i, j in pairs])


def pair_mass_series(values: np.ndarray, F: MatrixFamily, pairs: Sequence[Pair], eps_list: Sequence[float],
                     n_len: int, N: int, budget: Optional[int] = None) -> Tuple[np.ndarray, str]:
    """
    u_{n,ij} = Σ_k Σ_l b_nk^{(i)} b_nl^{(j)} χ_{D(s,ε)}(k, l)，n = 1..n_len

    两值序列用乘积恒等式 r_i(R_j − r_j) + r_j(R_i − r_i)，其他情况在行支撑上逐行求二重和。

    Returns:
        (形状为 (ε 个数, 对数, n_len) 的数组, 计算方式)

    Raises:
        CapabilityError: 行支撑总量超出 budget（附建议的 N）
    """
    eps = np.asarray(eps_list, dtype=float)
    members = {i: F.member(i) for pair in pairs for i in pair}
    out = np.zeros((eps.size, len(pairs), n_len))
    levels = np.unique(values)
    if levels.size <= 2:
        method = 'two_valued'
        if levels.size == 2:
            h = (values == levels[1]).astype(float)
            r = {i: np.real(m.apply(h, n_len)) for i, m in members.items()}
            R = {i: np.real(m.row_sums(n_len, N)) for i, m in members.items()}
            far = eps <= abs(levels[1] - levels[0])
            for p, (i, j) in enumerate(pairs):
                out[far, p, :] = r[i] * (R[j] - r[j]) + r[j] * (R[i] - r[i])
    else:
        quadratic = bool(np.iscomplexobj(values))
        method = 'pairwise' if quadratic else 'sorted'
        if budget is not None and _budget_rows(F, pairs, n_len, N, budget, quadratic) < n_len:
            suggested = _suggest_N(F, pairs, N, budget, quadratic)
            raise CapabilityError(f"二重和的行支撑超出预算 {budget}，建议 N <= {suggested}")
        for n in range(1, n_len + 1):
            rows = {i: _row(m, n, N) for i, m in members.items()}
            for p, (i, j) in enumerate(pairs):
                ka, wa = rows[i]
                kb, wb = rows[j]
                out[:, p, n - 1] = _pair_mass(values[ka - 1], wa, values[kb - 1], wb, eps)
    tails = _pair_tails(F, pairs, n_len, N)
    if tails is not None:
        out += tails[None, :, :]
    return out, method


def _pair_verdict(name: str, values: np.ndarray, F: MatrixFamily, pairs: Sequence[Pair], I: IdealHandle,
                  eps_list: Sequence[float], scale: Scale) -> Verdict:
    N = scale.N
    n_len = F.eval_length(N)
    series, method = pair_mass_series(values, F, pairs, eps_list, n_len, N, budget=scale.row_support_budget)
    subs: Dict[str, Verdict] = {}
    for e, eps in enumerate(eps_list):
        subs[f'{eps:g}'] = uniform_ideal_limit(list(series[e]), 0.0, I, scale, name=f'pair_mass({eps:g})')
    verdict = Verdict.combine(name, subs, scale, estimate=0.0)
    verdict.diagnostics.update({'method': method, 'pairs': len(pairs), 'rows': n_len})
    return verdict


def pre_cauchy(s, F, I: IdealHandle, eps_list: Optional[Sequence[float]] = None,
               scale: Optional[Scale] = None) -> Verdict:
    """
    B^I-统计 pre-Cauchy: 对每个 ε，Σ_k Σ_l b_nk^{(i)} b_nl^{(i)} χ_{D(s,ε)}(k,l) 沿 I 对 i 一致趋于 0

    Args:
        s: 序列
        F: 非负矩阵族或单个矩阵
        I: 理想
        eps_list: 阈值，默认为 scale.eps_effective
        scale: 尺度

    Raises:
        InputError: 矩阵族含负元素
        CapabilityError: 行支撑超出 row_support_budget
    """
    scale = scale or Scale()
    F = _as_family(F)
    _require_nonnegative(F)
    values = prefix_values(s, scale)
    pairs = [(i, i) for i in F.indices]
    return _pair_verdict('pre_cauchy', values, F, pairs, I, _eps_tuple(eps_list, scale), scale)


def pre_cauchy_plus(s, F, I: IdealHandle, eps_list: Optional[Sequence[float]] = None,
                    scale: Optional[Scale] = None, member_count: int = 8) -> Verdict:
    """
    B_+^I-统计 pre-Cauchy: 混合行 b_nk^{(i)} b_nl^{(j)}，对 (i, j) 一致

    族过大时只取 member_count 个成员的所有对（对称，只算 i <= j）。
    """
    scale = scale or Scale()
    F = _as_family(F)
    _require_nonnegative(F)
    values = prefix_values(s, scale)
    picks = F.sample_indices(member_count)
    pairs = [(i, j) for a, i in enumerate(picks) for j in picks[a:]]
    verdict = _pair_verdict('pre_cauchy_plus', values, F, pairs, I, _eps_tuple(eps_list, scale), scale)
    verdict.diagnostics['members_sampled'] = list(picks)
    verdict.diagnostics['members_total'] = len(F)
    return verdict


def pre_cauchy_row_value(s, F, n: int, eps: float, i: int = 0, j: Optional[int] = None) -> float:
    """单行的 Σ_k Σ_l b_nk^{(i)} b_nl^{(j)} χ_{D(s,ε)}(k,l)，直接在行支撑上求和"""
    F = _as_family(F)
    _require_nonnegative(F)
    if not eps > 0:
        raise InputError(f"ε 必须为正: {eps}")
    values = as_values(s)
    ka, wa = _row(F.member(i), n, values.size)
    kb, wb = _row(F.member(i if j is None else j), n, values.size)
    return float(_pair_mass(values[ka - 1], wa, values[kb - 1], wb, np.array([eps]))[0])


def _gauge_row_sum(values: np.ndarray, gauges2: GaugeFamily, rows_a, rows_b, i: int,
                   j: Optional[int]) -> float:
    ka, wa = rows_a
    kb, wb = rows_b
    if ka.size == 0 or kb.size == 0:
        return 0.0
    total = 0.0
    xb = values[kb - 1]
    for start in range(0, ka.size, _BLOCK):
        block = slice(start, start + _BLOCK)
        dist = np.abs(values[ka[block] - 1][:, None] - xb[None, :])
        g = np.asarray(gauges2.evaluate_pairs(dist, ka[block], kb, i, j), dtype=float)
        weight = np.outer(wa[block], wb)
        if np.any(np.isinf(g) & (weight > 0)):
            return math.inf
        total += float(np.sum(weight * np.where(np.isinf(g), 0.0, g)))
    return total


def gauge_pre_cauchy_sum(s, F, gauges2: Optional[GaugeFamily], n: int, i: int,
                         j: Optional[int] = None) -> ExtendedNonneg:
    """
    Σ_k Σ_l b_nk^{(i)} b_nl^{(j)} F_{kl}(|s_k − s_l|)

    Args:
        s: 序列
        F: 非负矩阵族或单个矩阵
        gauges2: 双指标规范函数族，None 表示恒等函数
        n: 行号
        i: 族指标
        j: 混合变体的第二个指标；None 表示 j = i

    Examples:
        # 平方数指示序列，Cesàro，n = 100 → 0.18
        gauge_pre_cauchy_sum(squares, cesaro(), None, 100, 0)
    """
    F = _as_family(F)
    _require_nonnegative(F)
    values = as_values(s)
    gauges2 = gauges2 or identity_gauges()
    rows_a = _row(F.member(i), n, values.size)
    rows_b = rows_a if j is None or j == i else _row(F.member(j), n, values.size)
    return ExtendedNonneg(_gauge_row_sum(values, gauges2, rows_a, rows_b, i, j))


def gauge_pre_cauchy_test(s, F, gauges2: Optional[GaugeFamily], I: IdealHandle, scale: Scale,
                          plus: bool = False, member_count: int = 8) -> Verdict:
    """
    二重规范和沿 I 一致趋于 0 的检验

    二重和的代价随行支撑平方增长，行数受 row_support_budget 限制，判定在缩小后的尺度上进行。
    hypotheses 中记录两个方向各自的前提:
    sufficient（下包络为正，和 → 0 ⇒ pre-Cauchy）与
    necessary（s 有界、行范数有界、上包络有限、在 0 处等度连续，pre-Cauchy ⇒ 和 → 0）。
    """
    F = _as_family(F)
    _require_nonnegative(F)
    gauges2 = gauges2 or identity_gauges()
    values = prefix_values(s, scale)
    N = scale.N
    picks = F.sample_indices(member_count)
    if plus:
        pairs = [(i, j) for a, i in enumerate(picks) for j in picks[a:]]
    else:
        pairs = [(i, i) for i in picks]
    n_len = F.eval_length(N)
    rows = max(_budget_rows(F, pairs, n_len, N, scale.row_support_budget, quadratic=True), 1)
    sums = np.zeros((len(pairs), rows))
    for n in range(1, rows + 1):
        cached = {i: _row(F.member(i), n, N) for pair in pairs for i in pair}
        for p, (i, j) in enumerate(pairs):
            sums[p, n - 1] = _gauge_row_sum(values, gauges2, cached[i], cached[j], i, j if plus else None)
    reduced = scale.with_(N=rows)
    verdict = uniform_ideal_limit(list(sums), 0.0, I, reduced, name='gauge_pre_cauchy')

    envelopes = envelope_hypotheses(gauges2, scale.eps_effective, scale)
    eq = equicontinuity_delta(gauges2, min(scale.eps_effective), scale)
    if eq.holds and not eq.scale_dependent:
        equi = Verdict(VerdictStatus.HOLDS, scale, estimate=eq.delta, name='equicontinuity', diagnostics=eq.to_dict())
    else:
        equi = Verdict.no_claim('equicontinuity', scale, 'equicontinuity', **eq.to_dict())
    bounded = bool(np.all(np.isfinite(values)))
    bounded_verdict = Verdict(VerdictStatus.HOLDS, scale, name='bounded') if bounded \
        else Verdict.no_claim('bounded', scale, 'unbounded')
    hyps = {
        **envelopes,
        'equicontinuity': equi,
        'row_norm_bound': family_row_norm_bound(F, I, scale),
        'bounded': bounded_verdict,
    }
    verdict.hypotheses.update(hyps)
    verdict.diagnostics.update({
        'rows': rows,
        'rows_available': n_len,
        'scale_reduced': rows < N,
        'plus': plus,
        'members_sampled': list(picks),
        'sufficient': hyps['lower_envelope'].holds,
        'necessary': all(hyps[k].holds for k in ('upper_envelope', 'equicontinuity', 'row_norm_bound', 'bounded')),
    })
    return verdict


def _premise(name: str, ok: bool, scale: Scale, reason: Optional[str] = None, **diagnostics) -> Verdict:
    if ok:
        return Verdict(VerdictStatus.HOLDS, scale, name=name, diagnostics=diagnostics)
    return Verdict.no_claim(name, scale, reason or name, **diagnostics)


def inclusion_checks(I: IdealHandle, J: IdealHandle, scale: Scale, count: int = 4) -> Dict[str, Verdict]:
    """I ⊆ J 的抽查: 带基的理想取前几层基集合，其他理想取有限集 {1..8}"""
    N = scale.N
    if isinstance(I, BasedIdeal):
        levels = I.base.levels(N, scale)[:count]
        return {f'B_{m}': J.contains(I.base.base_set(m, N), scale) for m in levels}
    finite_set = IndexSet(np.arange(1, N + 1) <= 8, name='{1..8}')
    return {'finite': J.contains(finite_set, scale)}


def _row_sums_bound(F: MatrixFamily, scale: Scale) -> Verdict:
    """sup_{n,i} Σ_k b_nk^{(i)} 在全部行上有限"""
    N = scale.N
    n_len = F.eval_length(N)
    tail = F.tail_error(1.0, N, n_len)
    worst, worst_row = 0.0, 1
    for _, member in F:
        sums = member.abs_row_sums(n_len, N)
        idx = int(np.argmax(sums))
        if sums[idx] > worst:
            worst, worst_row = float(sums[idx]), idx + 1
    worst += tail
    if not np.isfinite(worst):
        return Verdict.no_claim('sup_row_sums', scale, 'sup_row_sums', row=worst_row)
    return Verdict(VerdictStatus.HOLDS, scale, estimate=worst, name='sup_row_sums', diagnostics={'row': worst_row})


def subsequence_convergence(s, F, I: IdealHandle, a, W, scale: Scale) -> Verdict:
    """
    pre-Cauchy 且在 "大" 子集 W 上收敛到 a ⇒ 统计收敛到 a

    前提: I ⊆ J_{B,I}、行和一致有界、s 为 pre-Cauchy、{n ∈ W : |s_n − a| >= ε} ∈ I、
    w = I-liminf inf_i Σ_k b_nk^{(i)} χ_W(k) > 0。

    diagnostics 中给出证明里的中间量: w、τ、r 以及例外行集合 E、F 的大小与前几个元素，
    并逐行核对乘积下界 Σ Σ b b χ_{D(s,ε/2)} >= (Σ b χ_A)(Σ b χ_B)。

    Raises:
        InputError: 矩阵族含负元素
    """
    F = _as_family(F)
    _require_nonnegative(F)
    values = prefix_values(s, scale)
    N = scale.N
    W = W if isinstance(W, IndexSet) else IndexSet(np.asarray(W, dtype=bool))
    W = W.truncate(N)
    name = 'subsequence_convergence'

    try:
        J = derived_ideal(F, I, scale)
    except RefusedError as e:
        return Verdict.no_claim(name, scale, 'derived_ideal', message=str(e))

    premises: Dict[str, Verdict] = {}
    inclusion = inclusion_checks(I, J, scale)
    premises['ideal_inclusion'] = Verdict.combine('ideal_inclusion', inclusion, scale)
    premises['sup_row_sums'] = _row_sums_bound(F, scale)
    premises['pre_cauchy'] = pre_cauchy(values, F, I, None, scale)
    dist = np.abs(values - a)
    on_w = {f'{eps:g}': I.contains(IndexSet(W.mask & (dist >= eps), name=f'W∩D({eps:g})'), scale)
            for eps in scale.eps_effective}
    premises['subsequence_limit'] = Verdict.combine('subsequence_limit', on_w, scale, estimate=a)
    n_len = F.eval_length(N)
    w = I.liminf(F.inf_apply(W.indicator(), n_len), scale)
    premises['w_positive'] = _premise('w_positive', w >= min(scale.eps_effective), scale, w=w)

    if not all(v.holds for v in premises.values()):
        failing = [k for k, v in premises.items() if not v.holds]
        return Verdict.no_claim(name, scale, failing[0], hypotheses=premises, failing=failing, w=w)

    eps = scale.eps_effective[-1]
    delta = min(scale.eps_effective)
    tau = delta * w / (1.0 + delta)
    A = W.mask & (dist < eps / 2.0)
    B = (dist >= eps).astype(float)
    pairs = [(i, i) for i in F.indices]
    series, _ = pair_mass_series(values, F, pairs, [eps / 2.0], n_len, N, budget=scale.row_support_budget)
    pair_sup = np.max(series[0], axis=0)
    mass_A = {i: np.real(m.apply(A.astype(float), n_len)) for i, m in F}
    mass_B = {i: np.real(m.apply(B, n_len)) for i, m in F}
    product_ok = all(np.all(series[0][p] >= mass_A[i] * mass_B[i] - scale.tol) for p, (i, _) in enumerate(pairs))
    lowest_A = np.min(np.vstack(list(mass_A.values())), axis=0)
    r = I.liminf(lowest_A, scale)
    E_rows = pair_sup >= tau
    F_rows = lowest_A < r - tau

    req = ConvergenceRequest(SequencePrefix(values), F, I, target=a, scale=scale)
    conclusion = statistically_convergent(req, a)
    return Verdict(conclusion.status, scale, estimate=a, residual=conclusion.residual,
                   witnesses=conclusion.witnesses, name=name,
                   diagnostics={
                       'w': w,
                       'tau': tau,
                       'r': r,
                       'eps': eps,
                       'E_size': int(E_rows.sum()),
                       'E_first': first_witnesses(E_rows),
                       'F_size': int(F_rows.sum()),
                       'F_first': first_witnesses(F_rows),
                       'product_lower_bound': bool(product_ok),
                   },
                   hypotheses={**premises, 'statistically_convergent': conclusion})


def _row_difference(a: SummabilityMatrix, n: int, m: int, N: int) -> float:
    """Σ_l |b_nl − b_ml|"""
    ka, va = _row(a, n, N)
    kb, vb = _row(a, m, N)
    cols = np.union1d(ka, kb)
    dense_a = np.zeros(cols.size)
    dense_b = np.zeros(cols.size)
    dense_a[np.searchsorted(cols, ka)] = va
    dense_b[np.searchsorted(cols, kb)] = vb
    return float(np.sum(np.abs(dense_a - dense_b)))


def successive_rows_check(F: MatrixFamily, I: IdealHandle, scale: Scale, pair_count: int = 256,
                          member_count: int = 8) -> Tuple[Verdict, Optional[Pair]]:
    """
    相邻基元素的行差: inf_i Σ_l |b_{n_k,l}^{(i)} − b_{n_{k+1},l}^{(i)}| < 1/3

    基元素取理想最深的探测窗口（I_f 时为尾集 {n > m}），从其后半段起抽查相邻下标对。

    Returns:
        (判定, 违反条件的行对)
    """
    N = scale.N
    n_len = F.eval_length(N)
    window = np.flatnonzero(I.deep_window(n_len, scale)) + 1
    if window.size < 2:
        return Verdict.no_claim('successive_rows', scale, 'empty_window'), None
    tail = window[window.size // 2:]
    picks = np.unique(np.linspace(0, tail.size - 2, min(pair_count, tail.size - 1)).round().astype(int))
    members = [F.member(i) for i in F.sample_indices(member_count)]
    worst, worst_pair = 0.0, None
    for p in picks:
        n, m = int(tail[p]), int(tail[p + 1])
        diff = min(_row_difference(member, n, m, N) for member in members)
        if diff > worst:
            worst, worst_pair = diff, (n, m)
        if diff >= SUCCESSIVE_ROW_LIMIT:
            return Verdict(VerdictStatus.FAILS, scale, estimate=diff, residual=diff, witnesses=[n, m],
                           name='successive_rows', diagnostics={'pair': [n, m], 'limit': SUCCESSIVE_ROW_LIMIT}), (n, m)
    return Verdict(VerdictStatus.HOLDS, scale, estimate=worst, name='successive_rows',
                   diagnostics={'pairs_checked': int(picks.size), 'worst_pair': list(worst_pair or ()),
                                'index_truncation': len(members) < len(F)}), None


def _real_prefix(s, scale: Scale) -> np.ndarray:
    values = prefix_values(s, scale)
    if np.iscomplexobj(values):
        raise InputError("二分引理只对实序列成立")
    return values.astype(float)


def _dichotomy_premises(values: np.ndarray, F: MatrixFamily, I: IdealHandle,
                        scale: Scale) -> Tuple[Dict[str, Verdict], Optional[Pair]]:
    successive, pair = successive_rows_check(F, I, scale)
    premises = {
        'admissible': _premise('admissible', I.admissible, scale),
        'row_norm_bound': family_row_norm_bound(F, I, scale),
        'row_sums_to_one': family_row_sums_to_one(F, I, scale),
        'successive_rows': successive,
        'pre_cauchy_plus': pre_cauchy_plus(values, F, I, None, scale),
    }
    return premises, pair


@dataclass
class DichotomyReport:
    """
    二分引理报告

    Attributes:
        hypotheses: 各前提的判定
        memberships: H、X、Y 属于 J_{B,I} 的判定
        branch: 'X'、'Y'、'both' 或 None
        verdict: 结论判定
        offending_pair: 违反相邻行条件的行对
    """
    hypotheses: Dict[str, Verdict]
    memberships: Dict[str, Verdict]
    branch: Optional[str]
    verdict: Verdict
    offending_pair: Optional[Pair] = None

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    def to_dict(self) -> Dict[str, Any]:
        return {
            'hypotheses': {k: v.to_dict() for k, v in self.hypotheses.items()},
            'memberships': {k: v.to_dict() for k, v in self.memberships.items()},
            'branch': self.branch,
            'verdict': self.verdict.to_dict(),
            'offending_pair': list(self.offending_pair) if self.offending_pair else None,
        }


def dichotomy_check(s, F, I: IdealHandle, alpha: float, beta: float, scale: Scale) -> DichotomyReport:
    """
    H = {n : s_n ∈ (α, β)} ∈ J_{B,I} ⇒ X = {s_n <= α} ∈ J_{B,I} 或 Y = {s_n >= β} ∈ J_{B,I}

    "∉ J" 需要失败且残差不低于 member_margin。

    Raises:
        InputError: α >= β、s 为复序列或矩阵族含负元素
        RefusedError: 导出理想不可用
    """
    if not alpha < beta:
        raise InputError(f"需要 α < β: ({alpha}, {beta})")
    F = _as_family(F)
    _require_nonnegative(F)
    values = _real_prefix(s, scale)
    J = derived_ideal(F, I, scale)
    premises, pair = _dichotomy_premises(values, F, I, scale)
    H = IndexSet((values > alpha) & (values < beta), name='H')
    premises['H_in_J'] = J.contains(H, scale)

    name = 'dichotomy'
    if not all(v.holds for v in premises.values()):
        failing = [k for k, v in premises.items() if not v.holds]
        verdict = Verdict.no_claim(name, scale, failing[0], hypotheses=premises, failing=failing,
                                   offending_pair=list(pair) if pair else None)
        return DichotomyReport(premises, {}, None, verdict, offending_pair=pair)

    X = IndexSet(values <= alpha, name='X')
    Y = IndexSet(values >= beta, name='Y')
    memberships = {'H': premises['H_in_J'], 'X': J.contains(X, scale), 'Y': J.contains(Y, scale)}
    x_in, y_in = memberships['X'].holds, memberships['Y'].holds
    branch = 'both' if x_in and y_in else 'X' if x_in else 'Y' if y_in else None
    if branch is not None:
        status, witnesses = VerdictStatus.HOLDS, []
    elif memberships['X'].fails and memberships['Y'].fails:
        status, witnesses = VerdictStatus.FAILS, memberships['X'].witnesses
    else:
        status, witnesses = VerdictStatus.INCONCLUSIVE, []
    verdict = Verdict(status, scale, witnesses=witnesses, name=name,
                      residual=min(memberships['X'].residual, memberships['Y'].residual),
                      diagnostics={'branch': branch, 'alpha': alpha, 'beta': beta},
                      hypotheses={**premises, 'X_in_J': memberships['X'], 'Y_in_J': memberships['Y']})
    return DichotomyReport(premises, memberships, branch, verdict)


def _longest_run(flags: np.ndarray) -> int:
    longest = current = 0
    for flag in flags:
        current = current + 1 if flag else 0
        longest = max(longest, current)
    return longest


def _cluster_conclusion(name: str, values: np.ndarray, F: MatrixFamily, I: IdealHandle, grid: np.ndarray,
                        radius: float, scale: Scale, run_limit: Optional[int]) -> Verdict:
    J = derived_ideal(F, I, scale)
    premises, pair = _dichotomy_premises(values, F, I, scale)
    bound = float(J.limsup(np.abs(values), scale))
    premises['J_bounded'] = is_ideal_bounded(values, J, bound + 1.0, scale)
    if not all(v.holds for v in premises.values()):
        failing = [k for k, v in premises.items() if not v.holds]
        return Verdict.no_claim(name, scale, failing[0], hypotheses=premises, failing=failing,
                                offending_pair=list(pair) if pair else None)

    flags = np.zeros(grid.size, dtype=bool)
    undecided: List[float] = []
    for g, a in enumerate(grid):
        near = np.abs(values - a) < radius
        if not near.any():
            continue
        membership = J.contains(IndexSet(near, name=f'|s−{a:g}|<{radius:g}'), scale)
        flags[g] = membership.fails
        if membership.inconclusive:
            undecided.append(float(a))
    Z = [float(a) for a in grid[flags]]
    diagnostics: Dict[str, Any] = {'cluster_points': Z, 'undecided': undecided, 'radius': radius,
                                   'grid_size': int(grid.size)}
    if run_limit is not None:
        run = _longest_run(flags)
        diagnostics['longest_run'] = run
        if run >= run_limit:
            return Verdict.no_claim(name, scale, 'cluster_interval', hypotheses=premises, **diagnostics)
    if not Z:
        return Verdict.no_claim(name, scale, 'no_cluster_point', hypotheses=premises, **diagnostics)

    req = ConvergenceRequest(SequencePrefix(values), F, I, scale=scale)
    tried: Dict[str, Verdict] = {}
    for a in Z:
        conclusion = statistically_convergent(req, a)
        tried[f'{a:g}'] = conclusion
        if conclusion.holds:
            return Verdict(VerdictStatus.HOLDS, scale, estimate=a, residual=conclusion.residual, name=name,
                           diagnostics=diagnostics, hypotheses={**premises, 'statistically_convergent': conclusion})
    if all(v.fails for v in tried.values()):
        first = next(iter(tried.values()))
        return Verdict(VerdictStatus.FAILS, scale, residual=first.residual, witnesses=first.witnesses, name=name,
                       diagnostics=diagnostics, hypotheses={**premises, **tried})
    return Verdict(VerdictStatus.INCONCLUSIVE, scale, name=name, diagnostics=diagnostics,
                   hypotheses={**premises, **tried})


def nowhere_dense_cluster_conclusion(s, F, I: IdealHandle, scale: Scale, grid_count: int = 64) -> Verdict:
    """
    J_{B,I}-有界、B_+^I-统计 pre-Cauchy 且 J_{B,I}-聚点集无处稠密 ⇒ 统计收敛

    聚点在 [J-liminf s, J-limsup s] 的等距网格上计算，邻域半径为半个网格步长；
    连续 max(3, grid_count // 16) 个网格点都是聚点时视为聚点集可能含区间，不作结论。

    Returns:
        成立时 estimate 为收敛到的网格点

    Raises:
        InputError: s 为复序列或矩阵族含负元素
    """
    F = _as_family(F)
    _require_nonnegative(F)
    values = _real_prefix(s, scale)
    name = 'nowhere_dense_cluster'
    if grid_count < 16:
        return Verdict.no_claim(name, scale, 'grid_too_coarse', grid_count=grid_count)
    J = derived_ideal(F, I, scale)
    lo, hi = float(J.liminf(values, scale)), float(J.limsup(values, scale))
    if hi > lo:
        grid = np.linspace(lo, hi, grid_count)
        radius = 0.5 * (grid[1] - grid[0])
    else:
        grid = np.array([lo])
        radius = min(scale.eps_effective)
    return _cluster_conclusion(name, values, F, I, grid, radius, scale, run_limit=max(3, grid_count // 16))


def finite_range_conclusion(s, F, I: IdealHandle, scale: Scale, max_values: int = 64) -> Verdict:
    """
    取值有限的 B_+^I-统计 pre-Cauchy 序列统计收敛

    网格取序列的取值集合，邻域半径为最小间距的一半。

    Raises:
        InputError: 窗口内的取值超过 max_values 个
    """
    F = _as_family(F)
    _require_nonnegative(F)
    values = _real_prefix(s, scale)
    levels = np.unique(values)
    if levels.size > max_values:
        raise InputError(f"窗口内有 {levels.size} 个不同取值，超过上限 {max_values}")
    radius = 0.5 * float(np.min(np.diff(levels))) if levels.size > 1 else min(scale.eps_effective)
    return _cluster_conclusion('finite_range', values, F, I, levels, radius, scale, run_limit=None)


__all__ = [
    'PairExceptionalSet',
    'DichotomyReport',
    'pair_mass_series',
    'pre_cauchy',
    'pre_cauchy_plus',
    'pre_cauchy_row_value',
    'gauge_pre_cauchy_sum',
    'gauge_pre_cauchy_test',
    'inclusion_checks',
    'subsequence_convergence',
    'successive_rows_check',
    'dichotomy_check',
    'nowhere_dense_cluster_conclusion',
    'finite_range_conclusion',
]
