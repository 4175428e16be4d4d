"""
有限理想 I_f 及其扩张
"""
from typing import Iterable, List, Optional, Tuple

import numpy as np

from idealsum.config.args import Scale
from ..ideal_base import InitialSegmentBase
from .based_ideal import BasedIdeal


class FiniteIdeal(BasedIdeal):
    """有限集理想 I_f，I_f-收敛即通常收敛"""

    def __init__(self):
        super().__init__(InitialSegmentBase(), name='I_f', admissible=True)

    @property
    def description(self) -> str:
        return '有限理想 I_f, B_m = {1..m}'

    def level_sups(self, d: np.ndarray, scale: Scale) -> Tuple[List[int], List[float], np.ndarray]:
        # C_m = {m+1..N}，用后缀最大值
        N = d.size
        levels = [m for m in self.base.levels(N, scale) if m < N]
        if not levels:
            return [], [], np.zeros(N, dtype=bool)
        suffix = np.maximum.accumulate(d[::-1])[::-1]
        sups = [float(suffix[m]) for m in levels]
        deep = np.zeros(N, dtype=bool)
        deep[levels[-1]:] = True
        return levels, sups, deep


class FinitePlusIdeal(BasedIdeal):
    """
    由固定集合 E 与有限集生成的理想，B_m = E ∪ {1..m}

    Args:
        extra: 集合 E 的谓词（向量化）或下标列表
        name: 名称
    """

    def __init__(self, extra, name: Optional[str] = None):
        if callable(extra):
            predicate = extra
        else:
            members = np.unique(np.asarray(list(extra), dtype=int))
            predicate = lambda n: np.isin(n, members)
        super().__init__(InitialSegmentBase(extra=predicate, name='E∪{1..m}'),
                         name=name or 'I_f+E', admissible=True)

    @classmethod
    def from_indices(cls, indices: Iterable[int], name: Optional[str] = None) -> 'FinitePlusIdeal':
        return cls(list(indices), name=name)
