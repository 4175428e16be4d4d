"""
矩阵族导出的理想 J_{B,I}
K ∈ J_{B,I} 当且仅当 sup_i Σ_k b_nk^{(i)} χ_K(k) 沿 I 趋于 0
"""
from typing import Dict, Optional

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import RefusedError
from ..ideal_base import (
    IdealHandle, EpsOutcome, aggregate_outcomes, check_deviation, largest_failing_eps, outcome_labels,
)
from ..matrix_family import MatrixFamily
from ..sequence import as_mask
from ..verdict import Verdict, VerdictStatus, first_witnesses


class MatrixDerivedIdeal(IdealHandle):
    """
    J_{B,I}

    Args:
        family: 非负矩阵族，且已通过条件 (+)
        inner: 内层理想 I
        name: 名称

    Raises:
        RefusedError: 矩阵族含负元素或条件 (+) 未验证
    """

    def __init__(self, family: MatrixFamily, inner: IdealHandle, name: Optional[str] = None):
        if not family.nonnegative:
            raise RefusedError(f"矩阵族 '{family.name}' 含有负元素，不能导出理想")
        if family.plus_index is None:
            raise RefusedError(f"矩阵族 '{family.name}' 的条件 (+) 未验证，无法保证 ℕ ∉ J_{{B,I}}")
        self.family = family
        self.inner = inner
        self._name = name or f'J[{family.name}, {inner.name}]'

    @property
    def name(self) -> str:
        return self._name

    @property
    def description(self) -> str:
        return f'由矩阵族 {self.family.name} 与理想 {self.inner.name} 导出的理想'

    def weighted_mass(self, mask: np.ndarray) -> np.ndarray:
        """sup_i (B_i χ_K)(n) 加上截断尾部"""
        N = mask.size
        n_len = self.family.eval_length(N)
        mass = self.family.sup_apply(mask.astype(float), n_len)
        return np.maximum(mass, 0.0) + self.family.tail_error(1.0, N, n_len)

    def contains(self, K, scale: Scale) -> Verdict:
        mask = as_mask(K)
        label = getattr(K, 'name', 'K')
        inner = self.inner.null_test(self.weighted_mass(mask), scale, name=f'mass({label})')
        status = inner.status
        diagnostics = {'ideal': self.name, 'members_sample': first_witnesses(mask)}
        if status == VerdictStatus.FAILS and inner.residual < scale.member_margin:
            status = VerdictStatus.INCONCLUSIVE
            diagnostics['below_member_margin'] = True
        return Verdict(status, scale, residual=inner.residual,
                       witnesses=inner.witnesses if status == VerdictStatus.FAILS else [],
                       name=f'contains({label})', diagnostics=diagnostics, hypotheses={'weighted_mass': inner})

    def null_test(self, d: np.ndarray, scale: Scale, name: str = 'null_test', target=0.0) -> Verdict:
        d = check_deviation(d)
        outcomes: Dict[float, EpsOutcome] = {}
        subs: Dict[str, Verdict] = {}
        for eps in scale.eps_effective:
            sub = self.contains(d >= eps, scale)
            subs[f'{eps:g}'] = sub
            if sub.holds:
                outcomes[eps] = EpsOutcome.PASS
            elif sub.fails:
                outcomes[eps] = EpsOutcome.FAIL
            else:
                outcomes[eps] = EpsOutcome.UNRESOLVED
        status = aggregate_outcomes(outcomes)
        residual = max(v.residual for v in subs.values())
        witnesses = []
        if status == VerdictStatus.FAILS:
            eps = largest_failing_eps(outcomes)
            exceptional = d >= eps
            late = exceptional.copy()
            late[: d.size // 2] = False
            witnesses = first_witnesses(late if late.any() else exceptional)
        return Verdict(status, scale, estimate=target, residual=residual, witnesses=witnesses, name=name,
                       diagnostics={
                           'ideal': self.name,
                           'per_eps': outcome_labels(outcomes),
                           'eps_skipped': list(scale.eps_skipped),
                       },
                       hypotheses=subs)

    def limsup(self, u: np.ndarray, scale: Scale) -> float:
        """最小的阈值 v 使 {u > v} ∈ J（在排序后的取值上二分）"""
        u = np.asarray(u, dtype=float)
        values = np.unique(u)
        lo, hi = 0, values.size - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.contains(u > values[mid], scale).holds:
                hi = mid
            else:
                lo = mid + 1
        return float(values[lo])

    def deep_window(self, N: int, scale: Scale) -> np.ndarray:
        n_len = self.family.eval_length(N)
        mask = np.zeros(N, dtype=bool)
        mask[:n_len] = self.inner.deep_window(n_len, scale)
        return mask

    def check_admissible(self, scale: Scale) -> Verdict:
        """列 k → 0（沿内层理想，对 i 一致），抽查前 column_budget 列"""
        N = scale.N
        columns = np.unique(np.geomspace(1, min(scale.column_budget, N), 16).round().astype(int))
        checks: Dict[str, Verdict] = {}
        for k in columns:
            column = np.zeros(N, dtype=bool)
            column[k - 1] = True
            checks[f'column_{k}'] = self.inner.null_test(self.weighted_mass(column), scale, name=f'column_{k}')
        return Verdict.combine('admissible', checks, scale)

    @property
    def admissible(self) -> bool:
        return self.check_admissible(Scale(N=2048)).holds
