"""
由可数基给出的理想
A ∈ I 当且仅当 A ⊆ B_m 对某个 m 成立
"""
from typing import List, Optional, Tuple

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import InconclusiveError
from ..ideal_base import (
    IdealHandle, FilterBase, EpsOutcome, aggregate_outcomes, check_deviation, eps_outcomes,
    largest_failing_eps, outcome_labels,
)
from ..sequence import as_mask
from ..verdict import Verdict, VerdictStatus, first_witnesses


class BasedIdeal(IdealHandle):
    """
    带可数滤子基的理想

    Args:
        base: 滤子基 (B_m)
        name: 名称
        admissible: 声明的可容许性；None 表示在窗口上检查单点
    """

    def __init__(self, base: FilterBase, name: Optional[str] = None, admissible: Optional[bool] = None):
        self.base = base
        self._name = name or f'based({base.name})'
        self._admissible = admissible

    @property
    def name(self) -> str:
        return self._name

    @property
    def admissible(self) -> bool:
        if self._admissible is None:
            # 单点 {n} ⊆ B_m 对某个 m
            n_check = 64
            covered = np.zeros(n_check, dtype=bool)
            for m in range(1, 257):
                covered |= self.base.base_set(m, n_check).mask
                if covered.all():
                    break
            self._admissible = bool(covered.all())
        return self._admissible

    def windows(self, N: int, scale: Scale) -> List[Tuple[int, np.ndarray]]:
        """非空的探测窗口 (m, C_m ∩ [1..N])"""
        out = []
        for m in self.base.levels(N, scale):
            mask = self.base.filter_set(m, N).mask
            if mask.any():
                out.append((m, mask))
        return out

    def level_sups(self, d: np.ndarray, scale: Scale) -> Tuple[List[int], List[float], np.ndarray]:
        """
        每一层窗口上的上确界

        Returns:
            (层号, 上确界, 取得最小上确界的窗口掩码)
        """
        windows = self.windows(d.size, scale)
        if not windows:
            return [], [], np.zeros(d.size, dtype=bool)
        levels = [m for m, _ in windows]
        sups = [float(np.max(d[mask])) for _, mask in windows]
        deepest = int(np.argmin(sups))
        return levels, sups, windows[deepest][1]

    def deep_window(self, N: int, scale: Scale) -> np.ndarray:
        windows = self.windows(N, scale)
        if not windows:
            return np.zeros(N, dtype=bool)
        return windows[-1][1]

    def null_test(self, d: np.ndarray, scale: Scale, name: str = 'null_test', target=0.0) -> Verdict:
        d = check_deviation(d)
        levels, sups, deep = self.level_sups(d, scale)
        if not levels:
            return Verdict(VerdictStatus.INCONCLUSIVE, scale, estimate=target, name=name,
                           diagnostics={'empty_window': True, 'ideal': self.name})
        residual = min(sups)
        outcomes = eps_outcomes(residual, scale)
        status = aggregate_outcomes(outcomes)
        witnesses = []
        if status == VerdictStatus.FAILS:
            witnesses = first_witnesses(deep & (d > largest_failing_eps(outcomes)))
        return Verdict(status, scale, estimate=target, residual=residual, witnesses=witnesses, name=name,
                       diagnostics={
                           'ideal': self.name,
                           'levels': levels,
                           'level_sups': sups,
                           'per_eps': outcome_labels(outcomes),
                           'eps_skipped': list(scale.eps_skipped),
                       })

    def contains(self, K, scale: Scale) -> Verdict:
        mask = as_mask(K)
        label = getattr(K, 'name', 'K')
        name = f'contains({label})'
        windows = self.windows(mask.size, scale)
        if not windows:
            return Verdict(VerdictStatus.INCONCLUSIVE, scale, name=name,
                           diagnostics={'empty_window': True, 'ideal': self.name})
        for m, window in windows:
            if not np.any(mask & window):
                return Verdict(VerdictStatus.HOLDS, scale, residual=0.0, name=name,
                               diagnostics={'ideal': self.name, 'level': m})
        deep = windows[-1][1]
        hits = mask & deep
        density = float(hits.sum() / deep.sum())
        if density < scale.member_margin:
            return Verdict(VerdictStatus.INCONCLUSIVE, scale, residual=density, name=name,
                           diagnostics={'ideal': self.name, 'below_member_margin': True,
                                        'members_in_window': first_witnesses(hits)})
        return Verdict(VerdictStatus.FAILS, scale, residual=density, witnesses=first_witnesses(hits), name=name,
                       diagnostics={'ideal': self.name, 'level': windows[-1][0]})

    def limsup(self, u: np.ndarray, scale: Scale) -> float:
        u = np.asarray(u, dtype=float)
        _, sups, _ = self.level_sups(u, scale)
        if not sups:
            raise InconclusiveError(f"理想 '{self.name}' 在长度 {u.size} 的窗口上没有非空的探测窗口")
        return min(sups)
