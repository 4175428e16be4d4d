"""
Orlicz 函数与模函数
幂规范、Δ₂ 常数、族的上下包络与在 0 处的等度连续性
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import GaugeLawError, InputError
from .gauge_base import GaugeFunction, GaugeFamily, GaugeLawReport, default_grid, ORLICZ, MODULUS
from .gauge_family import UniformGaugeFamily, PowerGaugeFamily, CallableGaugeFamily
from .gauges import PowerGauge, TableGauge, CallableGauge
from .verdict import Verdict, VerdictStatus


def power_gauge(p: float) -> GaugeFunction:
    """
    F_p(t) = t^p

    Raises:
        InputError: p <= 0
    """
    return PowerGauge(p)


def delta2_constant(F: GaugeFunction, t_grid: Optional[Iterable[float]] = None) -> float:
    """
    网格上的 max F(2t)/F(t)

    Raises:
        GaugeLawError: 某个 t > 0 上 F(t) = 0
    """
    t = default_grid() if t_grid is None else np.asarray(list(t_grid), dtype=float)
    if np.any(t <= 0):
        raise InputError("Δ₂ 网格必须全为正")
    base = F.evaluate(t)
    if np.any(base <= 0):
        raise GaugeLawError(f"规范函数 '{F.name}' 在 t={float(t[np.argmax(base <= 0)]):g} 处为 0")
    with np.errstate(over='ignore', invalid='ignore'):
        ratios = F.evaluate(2.0 * t) / base
    return float(np.max(ratios))


def check_gauge_laws(F: GaugeFunction, samples: int = 1000, seed: int = 0, tol: float = 1e-12) -> GaugeLawReport:
    """抽样检查单个规范函数的定律"""
    return F.check_laws(samples=samples, seed=seed, tol=tol)


def validate_family(Fam: GaugeFamily, scale: Scale, samples: int = 200, seed: int = 0) -> Dict[str, GaugeLawReport]:
    """
    检查族中抽样成员的定律（按成员自身的类型）

    Raises:
        GaugeLawError: 任一成员违反定律
    """
    reports = {}
    pairs = Fam.sample_indices(scale.N, scale.i_max, k_count=8, i_count=4)
    for (k, i), gauge in Fam.members(pairs):
        report = gauge.check_laws(samples=samples, seed=seed)
        reports[f'{k},{i}'] = report
        if not report.holds:
            raise GaugeLawError(f"族 '{Fam.name}' 的成员 (k={k}, i={i}) 违反定律: {report.failures}")
    return reports


@dataclass
class EnvelopeEstimate:
    """
    包络估计

    Attributes:
        value: 抽样成员上的极值
        argext: 取得极值的 (k, i)
        vanishing: 下包络在容差内为 0（或上包络为 ∞）
        scale_dependent: 窗口减半时极值改变，值由截断端点决定
    """
    value: float
    argext: Tuple[int, int]
    vanishing: bool = False
    scale_dependent: bool = False
    t: float = 0.0
    diagnostics: Dict = field(default_factory=dict)

    def __float__(self) -> float:
        return self.value

    def to_dict(self) -> Dict:
        return {
            'value': self.value,
            'argext': list(self.argext),
            'vanishing': self.vanishing,
            'scale_dependent': self.scale_dependent,
            't': self.t,
        }


def _extremum(Fam: GaugeFamily, t: float, k_max: int, i_max: int, lower: bool) -> Tuple[float, Tuple[int, int]]:
    by_i: Dict[int, list] = {}
    for k, i in Fam.sample_indices(k_max, i_max):
        by_i.setdefault(i, []).append(k)
    best, arg = (np.inf if lower else -np.inf), (1, 0)
    for i, ks in by_i.items():
        ks = np.asarray(ks)
        vals = Fam.evaluate(np.full(ks.size, t), i, ks=ks)
        j = int(np.argmin(vals) if lower else np.argmax(vals))
        if (vals[j] < best) if lower else (vals[j] > best):
            best, arg = float(vals[j]), (int(ks[j]), int(i))
    return best, arg


def _moves_with_window(value: float, other: float, tol: float) -> bool:
    if not (np.isfinite(value) and np.isfinite(other)):
        return value != other
    return abs(value - other) > tol * max(1.0, abs(value))


def _envelope(Fam: GaugeFamily, t: float, scale: Scale, lower: bool) -> EnvelopeEstimate:
    if not t > 0:
        raise InputError(f"包络自变量必须为正: {t}")
    best, arg = _extremum(Fam, t, scale.N, scale.i_max, lower)
    # 窗口减半后极值改变，说明它由截断端点决定
    half, _ = _extremum(Fam, t, max(scale.N // 2, 1), scale.i_max, lower)
    vanishing = best <= scale.tol if lower else not np.isfinite(best)
    return EnvelopeEstimate(best, arg, vanishing=vanishing,
                            scale_dependent=_moves_with_window(best, half, scale.tol), t=t)


def lower_envelope(Fam: GaugeFamily, t: float, scale: Optional[Scale] = None) -> EnvelopeEstimate:
    """L(t) = inf_{k,i} F_k^{(i)}(t)，在抽样成员上取最小值"""
    return _envelope(Fam, t, scale or Scale(), lower=True)


def upper_envelope(Fam: GaugeFamily, t: float, scale: Optional[Scale] = None) -> EnvelopeEstimate:
    """h(t) = sup_{k,i} F_k^{(i)}(t)，在抽样成员上取最大值"""
    return _envelope(Fam, t, scale or Scale(), lower=False)


@dataclass
class EquicontinuityResult:
    """在 0 处等度连续: 最大的网格 δ 使 sup F(δ) <= τ"""
    tau: float
    delta: Optional[float]
    worst: Optional[Tuple[int, int]] = None
    scale_dependent: bool = False

    @property
    def holds(self) -> bool:
        return self.delta is not None

    def to_dict(self) -> Dict:
        return {'tau': self.tau, 'delta': self.delta, 'worst': list(self.worst) if self.worst else None,
                'scale_dependent': self.scale_dependent}


def equicontinuity_delta(Fam: GaugeFamily, tau: float, scale: Optional[Scale] = None,
                         grid: Optional[Iterable[float]] = None) -> EquicontinuityResult:
    """
    找最大的 δ（取自网格 ∪ {τ}）使所有抽样成员满足 F(δ) <= τ

    Args:
        Fam: 规范函数族
        tau: 目标 τ > 0
        scale: 尺度
        grid: 候选 δ 网格，默认 10^-6 … 10^3 的几何网格
    """
    if not tau > 0:
        raise InputError(f"τ 必须为正: {tau}")
    scale = scale or Scale()
    candidates = default_grid() if grid is None else np.asarray(list(grid), dtype=float)
    candidates = np.unique(np.append(candidates, tau))[::-1]
    worst = None
    for delta in candidates:
        upper = upper_envelope(Fam, float(delta), scale)
        if upper.value <= tau:
            return EquicontinuityResult(tau, float(delta), worst=upper.argext,
                                        scale_dependent=upper.scale_dependent)
        worst = upper.argext
    return EquicontinuityResult(tau, None, worst=worst, scale_dependent=True)


def envelope_hypotheses(Fam: GaugeFamily, ts: Iterable[float], scale: Scale) -> Dict[str, Verdict]:
    """
    包络前提的判定: L(t) > 0 与 h(t) < ∞ 在给定的 t 上

    Returns:
        {'lower_envelope': ..., 'upper_envelope': ...}
    """
    ts = [float(t) for t in ts]
    lows = {t: lower_envelope(Fam, t, scale) for t in ts}
    highs = {t: upper_envelope(Fam, t, scale) for t in ts}

    def as_verdict(name, table, bad_flag):
        bad = [t for t, est in table.items() if bad_flag(est)]
        diagnostics = {f'{t:g}': est.to_dict() for t, est in table.items()}
        if bad:
            return Verdict.no_claim(name, scale, f'{name}_degenerate', **{'values': diagnostics, 'at': bad})
        return Verdict(VerdictStatus.HOLDS, scale, name=name, estimate=min(e.value for e in table.values())
                       if name == 'lower_envelope' else max(e.value for e in table.values()),
                       diagnostics={'values': diagnostics})

    return {
        'lower_envelope': as_verdict('lower_envelope', lows, lambda e: e.vanishing or e.scale_dependent),
        'upper_envelope': as_verdict('upper_envelope', highs, lambda e: e.vanishing),
    }


__all__ = [
    'GaugeFunction',
    'GaugeFamily',
    'GaugeLawReport',
    'UniformGaugeFamily',
    'PowerGaugeFamily',
    'CallableGaugeFamily',
    'PowerGauge',
    'TableGauge',
    'CallableGauge',
    'ORLICZ',
    'MODULUS',
    'default_grid',
    'power_gauge',
    'delta2_constant',
    'check_gauge_laws',
    'validate_family',
    'EnvelopeEstimate',
    'lower_envelope',
    'upper_envelope',
    'EquicontinuityResult',
    'equicontinuity_delta',
    'envelope_hypotheses',
]
