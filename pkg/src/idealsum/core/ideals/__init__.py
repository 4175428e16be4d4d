"""理想实现"""
from .based_ideal import BasedIdeal
from .finite_ideal import FiniteIdeal, FinitePlusIdeal
from .derived_ideal import MatrixDerivedIdeal

__all__ = [
    'BasedIdeal',
    'FiniteIdeal',
    'FinitePlusIdeal',
    'MatrixDerivedIdeal',
]
