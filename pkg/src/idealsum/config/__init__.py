"""配置模块"""
from .args import RunConfig, Scale, default_eps_list, parse_args
from .schema import AnalysisConfig, GaugeSpec, IdealSpec, MatrixSpec, ScaleSpec, SpaceSpec, TauberianSpec

__all__ = [
    'Scale',
    'RunConfig',
    'default_eps_list',
    'parse_args',
    'AnalysisConfig',
    'MatrixSpec',
    'IdealSpec',
    'GaugeSpec',
    'SpaceSpec',
    'ScaleSpec',
    'TauberianSpec',
]
