"""
扩展实数
提供 ℝ ∪ {−∞, +∞} 与 [0, ∞] 上的广义度量 d(a, ∞) = d(∞, a) = ∞
"""
import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Union

import numpy as np

from idealsum.errors import InputError

Number = Union[int, float]


@total_ordering
@dataclass(frozen=True)
class ExtendedReal:
    """扩展实数，NaN 不被接受"""
    value: float

    def __post_init__(self):
        value = float(self.value)
        if math.isnan(value):
            raise InputError("扩展实数不能为 NaN")
        object.__setattr__(self, 'value', value)

    @classmethod
    def pos_inf(cls) -> 'ExtendedReal':
        return cls(math.inf)

    @classmethod
    def neg_inf(cls) -> 'ExtendedReal':
        return cls(-math.inf)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def __float__(self) -> float:
        return self.value

    def __neg__(self) -> 'ExtendedReal':
        return ExtendedReal(-self.value)

    def __add__(self, other: Union['ExtendedReal', Number]) -> 'ExtendedReal':
        other_value = float(other)
        if math.isinf(self.value) and math.isinf(other_value) and self.value != other_value:
            raise InputError("∞ − ∞ 未定义")
        return ExtendedReal(self.value + other_value)

    __radd__ = __add__

    def __sub__(self, other: Union['ExtendedReal', Number]) -> 'ExtendedReal':
        return self + (-ExtendedReal(float(other)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (ExtendedReal, int, float)):
            return self.value == float(other)
        return NotImplemented

    def __lt__(self, other: Union['ExtendedReal', Number]) -> bool:
        return self.value < float(other)

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return f"ExtendedReal({self.value})"


@dataclass(frozen=True, eq=False)
class ExtendedNonneg(ExtendedReal):
    """[0, ∞] 上的扩展非负数"""

    def __post_init__(self):
        super().__post_init__()
        if self.value < 0:
            raise InputError(f"扩展非负数不能为负: {self.value}")

    def distance(self, other: Union['ExtendedNonneg', Number]) -> 'ExtendedNonneg':
        """广义度量: 两端都为 ∞ 时为 0，只有一端为 ∞ 时为 ∞"""
        return ExtendedNonneg(float(generalized_distance(self.value, float(other))))

    __hash__ = ExtendedReal.__hash__


def generalized_distance(x, y):
    """
    逐元素的广义度量

    Args:
        x: 非负数或数组（可含 +∞）
        y: 非负数或数组（可含 +∞）

    Returns:
        |x − y|，其中 d(∞, ∞) = 0，d(a, ∞) = d(∞, a) = ∞
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x_inf = np.isinf(x)
    y_inf = np.isinf(y)
    with np.errstate(invalid='ignore'):
        out = np.abs(x - y)
    out = np.where(x_inf & y_inf, 0.0, out)
    out = np.where(x_inf ^ y_inf, np.inf, out)
    return out
