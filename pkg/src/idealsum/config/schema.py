"""
分析配置的 JSON 模型
"""
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .args import Scale, default_eps_list

Mode = Literal[
    'summable', 'strong', 'statistical', 'limsup', 'cluster', 'precauchy', 'decompose', 'tauberian', 'simons',
    'regularity', 'variance', 'almost',
]

# 需要非负矩阵族的模式
NONNEGATIVE_MODES = ('strong', 'statistical', 'cluster', 'precauchy', 'decompose', 'variance', 'simons')

# 尺度上限
MAX_N = 1_000_000
MAX_I = 4096


class _Spec(BaseModel):
    """带 kind 字段、其余参数原样传给工厂的配置"""
    model_config = ConfigDict(extra='allow')

    kind: str = Field(..., description="类型名称")

    def to_kwargs(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True)


class MatrixSpec(_Spec):
    """矩阵或矩阵族，如 {"kind": "cesaro"} 或 {"kind": "shift_of", "base": {"kind": "cesaro"}}"""


class IdealSpec(_Spec):
    """理想，如 {"kind": "finite"}、{"kind": "finite_plus", "set": "squares"}"""


class GaugeSpec(_Spec):
    """规范函数（族），如 {"kind": "power", "p": 2}"""


class SpaceSpec(BaseModel):
    """有限维空间，多面体单位球或 p-范数"""
    kind: Literal['polytope', 'pnorm'] = Field(..., description="范数类型")
    vertices: Optional[List[List[float]]] = Field(None, description="多面体单位球顶点")
    p: Optional[float] = Field(None, description="p-范数指数")
    d: Optional[int] = Field(None, description="维数")

    @model_validator(mode='after')
    def _check_fields(self) -> 'SpaceSpec':
        if self.kind == 'polytope' and not self.vertices:
            raise ValueError("polytope 需要 vertices")
        if self.kind == 'pnorm' and (self.p is None or self.d is None):
            raise ValueError("pnorm 需要 p 与 d")
        return self

    def to_kwargs(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True)


class ScaleSpec(BaseModel):
    """尺度参数，省略的字段取默认值"""
    model_config = ConfigDict(extra='forbid')

    N: int = Field(10_000, ge=1, le=MAX_N, description="截断窗口")
    i_max: int = Field(64, ge=0, le=MAX_I, description="矩阵族指标截断")
    m_max: int = Field(32, ge=1, le=1024, description="基的探测层数")
    eps_list: List[float] = Field(default_factory=lambda: list(default_eps_list()), description="阈值列表")
    tol: float = Field(1e-6, gt=0, description="数值容差")
    depth_fraction: float = Field(0.5, gt=0, lt=1, description="最深截断点比例")
    slack: float = Field(3.0, ge=1, description="未决区间倍数")
    resolution: Optional[float] = Field(None, gt=0, description="分辨率下限")
    row_support_budget: int = Field(60_000_000, ge=1, description="二重和的行支撑总量上限")

    @field_validator('eps_list')
    @classmethod
    def _positive_eps(cls, v: List[float]) -> List[float]:
        if not v or any(e <= 0 for e in v):
            raise ValueError("eps_list 必须非空且全部为正")
        return v

    def to_scale(self, **overrides: Any) -> Scale:
        data = self.model_dump()
        data['eps_list'] = tuple(data['eps_list'])
        data.update({k: v for k, v in overrides.items() if v is not None})
        return Scale(**data)


class TauberianSpec(BaseModel):
    """φ、ψ、h 的预设；'cesaro' 为 φ(x) = ψ(x) = 1/x，h(t) = t/(1+t)"""
    preset: Literal['cesaro'] = Field('cesaro', description="函数预设")


class AnalysisConfig(BaseModel):
    """
    一次分析的完整配置

    各模式需要的字段:
        - limsup: comparison_ideal 可选（默认为导出理想）
        - cluster: points 或 grid
        - precauchy: dichotomy 给出 (α, β) 时运行二分检验
        - decompose: ideal 必须带可数基，target 必填
        - simons: space 必填，H 缺省为对偶极点
    """
    model_config = ConfigDict(extra='forbid')

    mode: Mode = Field(..., description="分析模式")
    matrix: MatrixSpec = Field(default_factory=lambda: MatrixSpec(kind='cesaro'), description="矩阵族")
    ideal: IdealSpec = Field(default_factory=lambda: IdealSpec(kind='finite'), description="理想 I")
    gauges: Optional[GaugeSpec] = Field(None, description="规范函数族")
    scale: ScaleSpec = Field(default_factory=ScaleSpec, description="尺度参数")
    target: Optional[float] = Field(None, description="极限 a")
    seed: int = Field(0, ge=0, lt=2 ** 64, description="随机采样种子")

    comparison_ideal: Optional[IdealSpec] = Field(None, description="limsup 模式中的 J")
    points: Optional[List[float]] = Field(None, description="cluster 模式的候选聚点")
    grid: Optional[List[float]] = Field(None, description="cluster 模式的网格")
    plus: bool = Field(False, description="precauchy 模式检验 B_+^I 版本")
    dichotomy: Optional[List[float]] = Field(None, description="precauchy 模式的 (α, β)")
    tauberian: TauberianSpec = Field(default_factory=TauberianSpec, description="Tauberian 函数")
    space: Optional[SpaceSpec] = Field(None, description="simons 模式的空间")
    H: Optional[List[List[float]]] = Field(None, description="simons 模式的对偶点集")
    limit_vector: Optional[List[float]] = Field(None, description="simons 模式中传递检验的极限 x")
    ball_samples: int = Field(10_000, ge=1, le=1_000_000, description="对偶球抽样数")

    @model_validator(mode='after')
    def _check_mode(self) -> 'AnalysisConfig':
        if self.mode == 'cluster' and self.points is None and self.grid is None:
            raise ValueError("cluster 模式需要 points 或 grid")
        if self.mode == 'decompose' and self.target is None:
            raise ValueError("decompose 模式需要 target")
        if self.mode == 'simons':
            if self.space is None:
                raise ValueError("simons 模式需要 space")
            dim = self.space.d if self.space.kind == 'pnorm' else len(self.space.vertices[0])
            if self.H is not None and any(len(h) != dim for h in self.H):
                raise ValueError(f"H 中的点维数必须为 {dim}")
            if self.limit_vector is not None and len(self.limit_vector) != dim:
                raise ValueError(f"limit_vector 维数必须为 {dim}")
        if self.dichotomy is not None:
            if len(self.dichotomy) != 2 or not self.dichotomy[0] < self.dichotomy[1]:
                raise ValueError("dichotomy 必须是 [α, β] 且 α < β")
        if self.mode in ('strong', 'variance') and self.gauges is None:
            self.gauges = GaugeSpec(kind='identity')
        return self

    @property
    def vector_mode(self) -> bool:
        return self.mode == 'simons'

    def echo(self) -> Dict[str, Any]:
        """报告中回显的配置"""
        return self.model_dump(mode='json', exclude_none=True)


__all__ = [
    'Mode',
    'NONNEGATIVE_MODES',
    'MatrixSpec',
    'IdealSpec',
    'GaugeSpec',
    'SpaceSpec',
    'ScaleSpec',
    'TauberianSpec',
    'AnalysisConfig',
]
