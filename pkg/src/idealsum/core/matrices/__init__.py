"""可和矩阵实现"""
from .cesaro import CesaroMatrix
from .identity import IdentityMatrix, DiagonalMatrix
from .constant_row import ConstantRowMatrix
from .sparse_matrix import SparseMatrix
from .shifted import ShiftedMatrix
from .combined import CombinedMatrix

__all__ = [
    'CesaroMatrix',
    'IdentityMatrix',
    'DiagonalMatrix',
    'ConstantRowMatrix',
    'SparseMatrix',
    'ShiftedMatrix',
    'CombinedMatrix',
]
