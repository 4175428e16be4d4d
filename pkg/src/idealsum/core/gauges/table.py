"""
表格规范函数
由 (t, F(t)) 节点做分段线性插值，最后一段之外按末端斜率线性外推
凸的节点数据给出凸函数，凹的给出次可加函数
"""
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from idealsum.errors import GaugeLawError, InputError
from ..gauge_base import GaugeFunction, ORLICZ, MODULUS


class TableGauge(GaugeFunction):
    """
    插值规范函数

    Args:
        points: (t, F(t)) 节点，t 严格递增；若不含 t=0 则自动补 (0, 0)
        kind: 'orlicz' 或 'modulus'
        name: 名称

    Raises:
        GaugeLawError: 节点值不是严格递增或 F(0) != 0
    """

    def __init__(self, points: Sequence[Tuple[float, float]], kind: str = ORLICZ, name: Optional[str] = None):
        if kind not in (ORLICZ, MODULUS):
            raise InputError(f"未知的规范类型: {kind}")
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
            raise InputError("表格节点必须是 (t, F(t)) 对的列表")
        if pts[0, 0] != 0.0:
            pts = np.vstack([[0.0, 0.0], pts])
        t, f = pts[:, 0], pts[:, 1]
        if np.any(np.diff(t) <= 0):
            raise InputError("表格节点的 t 必须严格递增")
        if f[0] != 0.0:
            raise GaugeLawError(f"表格规范函数要求 F(0) = 0，实际 {f[0]}")
        if np.any(np.diff(f) <= 0):
            raise GaugeLawError("表格规范函数的取值必须严格递增")
        self._t = t
        self._f = f
        self._kind = kind
        self._name = name or f'table({len(t)})'
        self._end_slope = float((f[-1] - f[-2]) / (t[-1] - t[-2]))

    @property
    def name(self) -> str:
        return self._name

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def descriptor(self) -> Dict[str, Any]:
        return {'kind': 'table', 'points': np.column_stack([self._t, self._f]).tolist()}

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.interp(np.minimum(t, self._t[-1]), self._t, self._f)
        beyond = t > self._t[-1]
        return np.where(beyond, self._f[-1] + self._end_slope * (t - self._t[-1]), out)
