"""
理想收敛核心操作
理想极限、上/下极限、有界性、Cauchy 性与聚点
"""
from typing import List, Optional, Sequence, Union

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import InputError
from .extended import ExtendedReal, generalized_distance
from .ideal_base import IdealHandle, FilterBase, InitialSegmentBase
from .ideals import BasedIdeal, FiniteIdeal, FinitePlusIdeal, MatrixDerivedIdeal
from .sequence import SequencePrefix, IndexSet, as_values
from .verdict import Verdict, VerdictStatus, first_witnesses, sample_witnesses

SequenceLike = Union[SequencePrefix, np.ndarray, Sequence[float]]


def prefix_values(u: SequenceLike, scale: Scale) -> np.ndarray:
    """
    取序列的前 scale.N 项

    Raises:
        InputError: 序列为空或短于 scale.N
    """
    values = as_values(u)
    if values.size < scale.N:
        raise InputError(f"序列长度 {values.size} 小于尺度窗口 N={scale.N}")
    return values[:scale.N]


def _real_values(u: SequenceLike, scale: Scale) -> np.ndarray:
    values = prefix_values(u, scale)
    if np.iscomplexobj(values):
        raise InputError("上/下极限只对实序列定义")
    return values.astype(float)


def ideal_limsup(u: SequenceLike, I: IdealHandle, scale: Scale) -> ExtendedReal:
    """
    I-limsup u = inf_m sup_{n∈C_m} u_n

    Raises:
        InconclusiveError: 所有探测窗口在 [1..N] 上为空
    """
    return ExtendedReal(I.limsup(_real_values(u, scale), scale))


def ideal_liminf(u: SequenceLike, I: IdealHandle, scale: Scale) -> ExtendedReal:
    """I-liminf u = −I-limsup(−u)"""
    return -ideal_limsup(-_real_values(u, scale), I, scale)


def ideal_limsup_threshold(u: SequenceLike, I: IdealHandle, scale: Scale,
                           grid: Optional[np.ndarray] = None, resolution: float = 1e-3) -> ExtendedReal:
    """
    阈值扫描: sup{t ∈ grid : {n : u_n > t} ∉ I}

    Args:
        grid: 阈值网格；默认在 [min u, max u] 上按 resolution·(max−min) 等距

    Returns:
        使 {u > t} ∈ I 成立的最小网格阈值
    """
    values = _real_values(u, scale)
    lo, hi = float(values.min()), float(values.max())
    if grid is None:
        if hi == lo:
            return ExtendedReal(lo)
        count = int(np.ceil(1.0 / resolution)) + 1
        grid = np.linspace(lo, hi, count)
    grid = np.sort(np.asarray(grid, dtype=float))
    for t in grid:
        if I.contains(values > t, scale).holds:
            return ExtendedReal(float(t))
    return ExtendedReal(float(grid[-1]))


def _midpoint(values: np.ndarray, I: IdealHandle, scale: Scale):
    sup = I.limsup(values, scale)
    inf = I.liminf(values, scale)
    return 0.5 * (sup + inf), sup - inf


def ideal_limit(u: SequenceLike, I: IdealHandle, scale: Scale, target=None) -> Verdict:
    """
    I-收敛检验

    候选极限取 I-liminf 与 I-limsup 的中点（复序列分别对实部和虚部取）；
    间隙超过有效阈值中最小的 ε 直接失败，否则检验 |u − a| 沿 I 趋于 0。

    Args:
        u: 序列
        I: 理想
        scale: 尺度
        target: 给定的极限 a；None 表示搜索

    Returns:
        Verdict，estimate 为 a
    """
    values = prefix_values(u, scale)
    gap = 0.0
    if target is None:
        if np.iscomplexobj(values):
            re_mid, re_gap = _midpoint(values.real.astype(float), I, scale)
            im_mid, im_gap = _midpoint(values.imag.astype(float), I, scale)
            target, gap = complex(re_mid, im_mid), max(re_gap, im_gap)
        else:
            target, gap = _midpoint(values.astype(float), I, scale)
    deviation = np.abs(values - target)
    verdict = I.null_test(deviation, scale, name='ideal_limit', target=target)
    limit_gap = min(scale.eps_effective)
    verdict.diagnostics['limsup_liminf_gap'] = gap
    if gap > limit_gap and not verdict.fails:
        witnesses = sample_witnesses(first_witnesses(deviation >= gap / 4.0),
                                     fallback=int(np.argmax(deviation)) + 1)
        return Verdict(VerdictStatus.FAILS, scale, estimate=target, residual=gap, witnesses=witnesses,
                       name='ideal_limit', diagnostics=verdict.diagnostics, hypotheses=verdict.hypotheses)
    return verdict


def is_ideal_bounded(u: SequenceLike, I: IdealHandle, K: float, scale: Scale) -> Verdict:
    """{n : |u_n| > K} ∈ I"""
    if not K > 0:
        raise InputError(f"界 K 必须为正: {K}")
    values = prefix_values(u, scale)
    verdict = I.contains(IndexSet(np.abs(values) > K, name=f'|u|>{K:g}'), scale)
    verdict.name = 'is_ideal_bounded'
    return verdict


def is_ideal_cauchy(u: SequenceLike, I: IdealHandle, eps: float, scale: Scale, candidates: int = 64) -> Verdict:
    """
    I-Cauchy 检验: 存在 k 使 {n : |u_n − u_k| ≥ ε} ∈ I

    候选 k 取自最深窗口中按取值分位数挑选的至多 candidates 个下标，从中位数开始尝试。
    """
    if not eps > 0:
        raise InputError(f"ε 必须为正: {eps}")
    values = prefix_values(u, scale)
    window = np.flatnonzero(I.deep_window(values.size, scale))
    if window.size == 0:
        window = np.arange(values.size)
    order = window[np.argsort(np.real(values[window]), kind='stable')]
    picks = np.unique(np.linspace(0, order.size - 1, min(candidates, order.size)).round().astype(int))
    median = picks.size // 2
    ranked = sorted(picks, key=lambda p: abs(int(p) - int(picks[median])))

    best: Optional[Verdict] = None
    tried = []
    for p in ranked:
        k = int(order[p]) + 1
        tried.append(k)
        exceptional = IndexSet(np.abs(values - values[k - 1]) >= eps, name=f'|u−u_{k}|≥{eps:g}')
        sub = I.contains(exceptional, scale)
        if sub.holds:
            return Verdict(VerdictStatus.HOLDS, scale, estimate=values[k - 1], residual=sub.residual,
                           name='is_ideal_cauchy', diagnostics={'k': k, 'candidates_tried': len(tried)},
                           hypotheses={'exceptional_set': sub})
        if best is None or (sub.inconclusive and best.fails) or (
                sub.status == best.status and sub.residual < best.residual):
            best = sub
            best.diagnostics['k'] = k
    status = best.status
    witnesses = best.witnesses if status == VerdictStatus.FAILS else []
    return Verdict(status, scale, residual=best.residual, witnesses=witnesses, name='is_ideal_cauchy',
                   diagnostics={'best_k': best.diagnostics.get('k'), 'candidates_tried': len(tried)},
                   hypotheses={'exceptional_set': best})


def ideal_cluster_points(u: SequenceLike, I: IdealHandle, grid: Sequence[float], eps: float,
                         scale: Scale) -> List[float]:
    """
    网格上的 I-聚点: {n : |u_n − a| < ε} ∉ I

    每个网格点独立检验，相邻点的 ε-邻域可以重叠。
    """
    grid = list(grid)
    if not grid:
        raise InputError("聚点网格不能为空")
    if not eps > 0:
        raise InputError(f"ε 必须为正: {eps}")
    values = prefix_values(u, scale)
    points = []
    for a in grid:
        near = IndexSet(np.abs(values - a) < eps, name=f'|u−{a:g}|<{eps:g}')
        if I.contains(near, scale).fails:
            points.append(a)
    return points


def uniform_ideal_limit(U, g, I: IdealHandle, scale: Scale, name: str = 'uniform_ideal_limit') -> Verdict:
    """
    对 i 一致的理想极限: sup_i d(U_i(n), g(i)) 沿 I 趋于 0

    Args:
        U: 形状 (S, L) 的数组或等长序列列表，第 i 行为 U_i
        g: 每个 i 的目标值（标量表示对所有 i 相同）
        I: 理想
        scale: 尺度

    Returns:
        Verdict；值可为 +∞，按广义度量 d(∞,∞)=0、d(a,∞)=∞ 计算
    """
    rows = [as_values(r) for r in U] if not isinstance(U, np.ndarray) else list(np.atleast_2d(U))
    if not rows:
        raise InputError("一致极限至少需要一个序列")
    lengths = {r.size for r in rows}
    if len(lengths) != 1:
        raise InputError(f"序列长度不一致: {sorted(lengths)}")
    targets = np.broadcast_to(np.asarray(g), (len(rows),))
    deviation = np.zeros(min(lengths.pop(), scale.N))
    for row, target in zip(rows, targets):
        row = row[:deviation.size]
        if np.iscomplexobj(row) or np.iscomplexobj(target):
            dist = np.abs(row - target)
        else:
            dist = generalized_distance(row, target)
        np.maximum(deviation, dist, out=deviation)
    return I.null_test(deviation, scale, name=name, target=targets[0] if np.all(targets == targets[0]) else None)


__all__ = [
    'IdealHandle',
    'FilterBase',
    'InitialSegmentBase',
    'BasedIdeal',
    'FiniteIdeal',
    'FinitePlusIdeal',
    'MatrixDerivedIdeal',
    'prefix_values',
    'ideal_limit',
    'ideal_limsup',
    'ideal_liminf',
    'ideal_limsup_threshold',
    'is_ideal_bounded',
    'is_ideal_cauchy',
    'ideal_cluster_points',
    'uniform_ideal_limit',
]
