"""
理想基类模块
定义 ℕ 上理想的通用接口、可数滤子基，以及逐阈值的零极限判定规则
"""
from abc import ABC, abstractmethod
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import InputError
from .sequence import IndexSet
from .verdict import VerdictStatus, Verdict


class EpsOutcome(str, Enum):
    """单个阈值 ε 上的结果"""
    PASS = "pass"
    UNRESOLVED = "unresolved"
    FAIL = "fail"


def classify_residual(residual: float, eps: float, slack: float) -> EpsOutcome:
    """
    按最深窗口的上确界给单个 ε 分类

    Args:
        residual: 最深窗口上的上确界
        eps: 阈值
        slack: 未决区间倍数

    Returns:
        r <= ε 为通过，r ∈ (ε, slack·ε] 为未决，否则失败
    """
    if residual <= eps:
        return EpsOutcome.PASS
    if residual <= slack * eps:
        return EpsOutcome.UNRESOLVED
    return EpsOutcome.FAIL


def aggregate_outcomes(outcomes: Dict[float, EpsOutcome]) -> VerdictStatus:
    """任一失败则失败；每个 ε 都通过才成立；否则不确定"""
    if not outcomes:
        return VerdictStatus.INCONCLUSIVE
    if any(o == EpsOutcome.FAIL for o in outcomes.values()):
        return VerdictStatus.FAILS
    if all(o == EpsOutcome.PASS for o in outcomes.values()):
        return VerdictStatus.HOLDS
    return VerdictStatus.INCONCLUSIVE


def largest_failing_eps(outcomes: Dict[float, EpsOutcome]) -> Optional[float]:
    failing = [e for e, o in outcomes.items() if o == EpsOutcome.FAIL]
    return max(failing) if failing else None


def check_deviation(d: np.ndarray) -> np.ndarray:
    """零极限判定的输入: 非负、可含 +∞、不含 NaN"""
    d = np.asarray(d, dtype=float)
    if d.ndim != 1 or d.size == 0:
        raise InputError("偏差序列必须是非空一维数组")
    if np.any(np.isnan(d)):
        raise InputError("偏差序列中含有 NaN")
    if np.any(d < 0):
        raise InputError("偏差序列必须非负")
    return d


class FilterBase:
    """
    理想的可数基 (B_m)，B_m 递增且属于理想；C_m = ℕ∖B_m 递减

    Args:
        member: (m, n 数组) -> n ∈ B_m 的布尔数组
        name: 名称
    """

    def __init__(self, member: Callable[[int, np.ndarray], np.ndarray], name: str = 'base'):
        self._member = member
        self.name = name

    def base_set(self, m: int, N: int) -> IndexSet:
        """B_m ∩ [1..N]"""
        n = np.arange(1, N + 1)
        return IndexSet(np.asarray(self._member(m, n), dtype=bool), name=f'B_{m}')

    def filter_set(self, m: int, N: int) -> IndexSet:
        """C_m ∩ [1..N]"""
        return self.base_set(m, N).complement()

    def levels(self, N: int, scale: Scale) -> Tuple[int, ...]:
        """探测的层 m = 1..m_max"""
        return tuple(range(1, scale.m_max + 1))

    def is_monotone(self, N: int, m_max: int) -> bool:
        """C_{m+1} ∩ [1..N] ⊆ C_m ∩ [1..N]"""
        prev = self.filter_set(1, N)
        for m in range(2, m_max + 1):
            cur = self.filter_set(m, N)
            if not cur.issubset(prev):
                return False
            prev = cur
        return True

    def __repr__(self) -> str:
        return f"<FilterBase {self.name}>"


class InitialSegmentBase(FilterBase):
    """
    有限理想 I_f 的基 B_m = {1, …, m}

    探测层为 [1, depth_fraction·N] 上几何分布的截断点，至多 m_max 个。
    """

    def __init__(self, extra: Optional[Callable[[np.ndarray], np.ndarray]] = None, name: str = 'initial_segments'):
        if extra is None:
            member = lambda m, n: n <= m
        else:
            member = lambda m, n: (n <= m) | np.asarray(extra(n), dtype=bool)
        super().__init__(member, name=name)
        self.extra = extra

    def levels(self, N: int, scale: Scale) -> Tuple[int, ...]:
        depth = max(1, int(scale.depth_fraction * N))
        cuts = np.unique(np.geomspace(1, depth, scale.m_max).round().astype(int))
        return tuple(int(c) for c in cuts)


class IdealHandle(ABC):
    """
    ℕ 上理想的抽象基类

    所有判定都在长度为 N 的窗口上进行，结论带有尺度。
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """
        理想名称（用于标识）

        Returns:
            理想的简短名称
        """
        pass

    @property
    def description(self) -> str:
        """理想描述"""
        return self.name

    @property
    def admissible(self) -> bool:
        """是否包含所有单点集"""
        return True

    @abstractmethod
    def null_test(self, d: np.ndarray, scale: Scale, name: str = 'null_test', target=0.0) -> Verdict:
        """
        检验非负偏差序列 d 沿理想趋于 0

        Args:
            d: 非负偏差 d_1..d_L（可含 +∞）
            scale: 尺度
            name: 判定名称
            target: 写入判定的极限估计

        Returns:
            Verdict，残差为最深窗口上的上确界
        """
        pass

    @abstractmethod
    def contains(self, K, scale: Scale) -> Verdict:
        """
        检验下标集合 K ⊆ [1..N] 属于理想

        Args:
            K: IndexSet 或布尔掩码
            scale: 尺度

        Returns:
            Verdict（失败时残差为 K 在窗口中的密度或加权质量）
        """
        pass

    @abstractmethod
    def limsup(self, u: np.ndarray, scale: Scale) -> float:
        """
        理想上极限 inf_{A∈I} sup_{n∉A} u_n

        Raises:
            InconclusiveError: 窗口内没有可用下标
        """
        pass

    def liminf(self, u: np.ndarray, scale: Scale) -> float:
        """理想下极限 = −limsup(−u)"""
        return -self.limsup(-np.asarray(u, dtype=float), scale)

    @abstractmethod
    def deep_window(self, N: int, scale: Scale) -> np.ndarray:
        """最深探测窗口的布尔掩码（长度 N）"""
        pass

    def __repr__(self) -> str:
        """字符串表示"""
        return f"<{self.__class__.__name__}: {self.name}>"


def eps_outcomes(residual: float, scale: Scale) -> Dict[float, EpsOutcome]:
    """对 scale.eps_effective 中的每个 ε 分类"""
    return {eps: classify_residual(residual, eps, scale.slack) for eps in scale.eps_effective}


def outcome_labels(outcomes: Dict[float, EpsOutcome]) -> Dict[str, str]:
    return {f'{eps:g}': o.value for eps, o in outcomes.items()}


def witness_list(indices: np.ndarray, count: int = 10) -> List[int]:
    return [int(i) for i in np.asarray(indices)[:count]]
