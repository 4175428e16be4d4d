"""
规范函数基类模块
定义 Orlicz 函数与模函数的通用接口及其抽样定律检查
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from idealsum.errors import GaugeLawError

ORLICZ = 'orlicz'
MODULUS = 'modulus'


def default_grid(count: int = 256, lo: float = 1e-6, hi: float = 1e3) -> np.ndarray:
    """几何分布的验证网格 10^-6 … 10^3"""
    return np.geomspace(lo, hi, count)


@dataclass
class GaugeLawReport:
    """抽样定律检查结果，failures 记录每条定律的第一个反例"""
    gauge: str
    kind: str
    zero: bool = True
    positive: bool = True
    monotone: bool = True
    convex: Optional[bool] = None
    subadditive: Optional[bool] = None
    unbounded: Optional[bool] = None
    failures: Dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        """按类型要求的定律是否全部成立"""
        required = [self.zero, self.positive, self.monotone]
        if self.kind == ORLICZ:
            required += [bool(self.convex), bool(self.unbounded)]
        else:
            required.append(bool(self.subadditive))
        return all(required)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'gauge': self.gauge,
            'kind': self.kind,
            'zero': self.zero,
            'positive': self.positive,
            'monotone': self.monotone,
            'convex': self.convex,
            'subadditive': self.subadditive,
            'unbounded': self.unbounded,
            'failures': self.failures,
        }


class GaugeFunction(ABC):
    """
    规范函数抽象基类

    F: [0,∞) → [0,∞]，F(t) = 0 当且仅当 t = 0，单调不减；
    orlicz 类型另要求凸且 F(t) → ∞，modulus 类型要求次可加。
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """
        规范函数名称（用于标识）

        Returns:
            简短名称
        """
        pass

    @property
    @abstractmethod
    def kind(self) -> str:
        """类型: 'orlicz' 或 'modulus'"""
        pass

    @property
    def descriptor(self) -> Dict[str, Any]:
        """解析描述（例如幂次 p）"""
        return {}

    @abstractmethod
    def evaluate(self, t: np.ndarray) -> np.ndarray:
        """
        逐元素求值

        Args:
            t: 非负数组

        Returns:
            F(t)，可含 +∞
        """
        pass

    def __call__(self, t):
        values = self.evaluate(np.asarray(t, dtype=float))
        return float(values) if np.ndim(values) == 0 else values

    def check_laws(self, samples: int = 1000, seed: int = 0, tol: float = 1e-12,
                   grid: Optional[np.ndarray] = None, big_t: float = 1e6, threshold: float = 1e3) -> GaugeLawReport:
        """
        在随机样本与网格上检查定律

        Args:
            samples: 随机样本对/三元组数量
            seed: 随机种子
            tol: 相对容差
            grid: 单调性检查网格
            big_t: 无界性检查点
            threshold: F(big_t) 需超过的阈值
        """
        rng = np.random.default_rng(seed)
        grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
        report = GaugeLawReport(self.name, self.kind)

        zero = float(self.evaluate(np.array([0.0]))[0])
        if zero != 0.0:
            report.zero = False
            report.failures['zero'] = zero

        values = self.evaluate(grid)
        if np.any(values <= 0):
            report.positive = False
            report.failures['positive'] = float(grid[np.argmax(values <= 0)])
        drops = np.flatnonzero(np.diff(values) < -tol * np.maximum(1.0, np.abs(values[:-1])))
        if drops.size:
            report.monotone = False
            report.failures['monotone'] = float(grid[drops[0]])

        # 样本取对数均匀分布，覆盖网格范围
        a = np.exp(rng.uniform(np.log(grid[0]), np.log(grid[-1]), samples))
        b = np.exp(rng.uniform(np.log(grid[0]), np.log(grid[-1]), samples))
        fa, fb = self.evaluate(a), self.evaluate(b)
        finite = np.isfinite(fa) & np.isfinite(fb)

        mid = self.evaluate(0.5 * (a + b))
        slack = tol * np.maximum(1.0, 0.5 * (fa + fb))
        bad = finite & (mid > 0.5 * (fa + fb) + slack)
        report.convex = not bad.any()
        if bad.any():
            j = int(np.argmax(bad))
            report.failures['convex'] = [float(a[j]), float(b[j])]

        total = self.evaluate(a + b)
        slack = tol * np.maximum(1.0, fa + fb)
        bad = finite & (total > fa + fb + slack)
        report.subadditive = not bad.any()
        if bad.any():
            j = int(np.argmax(bad))
            report.failures['subadditive'] = [float(a[j]), float(b[j])]

        if self.kind == ORLICZ:
            top = float(self.evaluate(np.array([big_t]))[0])
            report.unbounded = top > threshold
            if not report.unbounded:
                report.failures['unbounded'] = top
        return report

    def validate(self, **kwargs) -> 'GaugeFunction':
        """
        检查定律，不成立时抛出异常

        Raises:
            GaugeLawError: 任一定律被违反
        """
        report = self.check_laws(**kwargs)
        if not report.holds:
            raise GaugeLawError(f"规范函数 '{self.name}' ({self.kind}) 违反定律: {report.failures}")
        return self

    def __repr__(self) -> str:
        """字符串表示"""
        return f"<{self.__class__.__name__}: {self.name} ({self.kind})>"


class GaugeFamily(ABC):
    """
    规范函数族 F_k^{(i)}

    双指标变体 F_{kl}^{(i)} 与 F_{kl}^{(ij)} 默认取 F_{max(k,l)}^{(i)}。
    """

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def member(self, k: int, i: int) -> GaugeFunction:
        """F_k^{(i)}"""
        pass

    def member_pair(self, k: int, l: int, i: int, j: Optional[int] = None) -> GaugeFunction:
        """双指标成员 F_{kl}^{(i)}（j 给出时为 F_{kl}^{(ij)}）"""
        return self.member(max(k, l), i)

    @property
    def uniform(self) -> Optional[GaugeFunction]:
        """若所有成员相同则返回该函数"""
        return None

    @property
    def kind(self) -> str:
        gauge = self.uniform
        return gauge.kind if gauge is not None else 'mixed'

    def evaluate(self, x: np.ndarray, i: int, ks: Optional[np.ndarray] = None) -> np.ndarray:
        """
        逐项求值 F_k^{(i)}(x_k)

        Args:
            x: 自变量
            i: 族指标
            ks: 与 x 对应的 k（从 1 开始），默认 1..len(x)
        """
        x = np.asarray(x, dtype=float)
        gauge = self.uniform
        if gauge is not None:
            return gauge.evaluate(x)
        ks = np.arange(1, x.size + 1) if ks is None else np.asarray(ks)
        return np.array([self.member(int(k), i).evaluate(np.array([v]))[0] for k, v in zip(ks, x)], dtype=float)

    def evaluate_pairs(self, x: np.ndarray, ks: np.ndarray, ls: np.ndarray, i: int,
                       j: Optional[int] = None) -> np.ndarray:
        """双指标求值 F_{kl}(x_{kl})，x 的形状为 (len(ks), len(ls))"""
        x = np.asarray(x, dtype=float)
        gauge = self.uniform
        if gauge is not None:
            return gauge.evaluate(x)
        out = np.empty_like(x)
        for a, k in enumerate(ks):
            for b, l in enumerate(ls):
                out[a, b] = self.member_pair(int(k), int(l), i, j).evaluate(np.array([x[a, b]]))[0]
        return out

    def sample_indices(self, k_max: int, i_max: int, k_count: int = 64, i_count: int = 16) -> List[Tuple[int, int]]:
        """包络与等度连续性抽样的 (k, i)，k 几何分布并包含端点 1 与 k_max"""
        ks = np.unique(np.geomspace(1, max(k_max, 1), k_count).round().astype(int))
        is_ = np.unique(np.linspace(0, max(i_max, 0), min(i_count, i_max + 1)).round().astype(int))
        return [(int(k), int(i)) for i in is_ for k in ks]

    def members(self, pairs: Iterable[Tuple[int, int]]) -> Iterable[Tuple[Tuple[int, int], GaugeFunction]]:
        for k, i in pairs:
            yield (k, i), self.member(k, i)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}: {self.name}>"
