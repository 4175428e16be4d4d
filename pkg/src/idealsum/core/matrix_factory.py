"""
矩阵工厂模块
用于统一管理和创建可和矩阵与矩阵族
"""
from typing import Any, Callable, Dict, List, Mapping, Optional

from idealsum.errors import InputError
from .matrix_base import SummabilityMatrix
from .matrix_family import MatrixFamily
from .matrices import CesaroMatrix, IdentityMatrix, ConstantRowMatrix, SparseMatrix, CombinedMatrix

MatrixBuilder = Callable[..., SummabilityMatrix]


def _scaled(base: Mapping[str, Any], factor: float) -> SummabilityMatrix:
    return CombinedMatrix.scaled(MatrixFactory.create_matrix(**dict(base)), factor)


class MatrixFactory:
    """
    矩阵工厂
    负责注册、创建和管理矩阵与矩阵族
    """

    # 注册的矩阵类型
    _matrices: Dict[str, MatrixBuilder] = {
        'cesaro': CesaroMatrix,
        'identity': IdentityMatrix,
        'triangular_csv': SparseMatrix.from_csv,
        'geometric': ConstantRowMatrix.geometric,
        'scaled': _scaled,
    }

    # 族类型: 其余类型都构成单矩阵族
    _family_kinds = ('shift_of',)

    @classmethod
    def register_matrix(cls, name: str, builder: MatrixBuilder):
        """
        注册新的矩阵类型

        Args:
            name: 类型名称
            builder: 返回 SummabilityMatrix 的构造函数
        """
        if not callable(builder):
            raise TypeError("矩阵构造函数必须可调用")
        cls._matrices[name] = builder

    @classmethod
    def create_matrix(cls, kind: str, **kwargs: Any) -> SummabilityMatrix:
        """
        创建矩阵实例

        Args:
            kind: 矩阵类型 ('cesaro', 'identity', 'triangular_csv', 'geometric', 'scaled')
            **kwargs: 传递给构造函数的参数

        Returns:
            矩阵实例

        Raises:
            InputError: 如果矩阵类型不存在或参数不合法

        Examples:
            # Cesàro 矩阵
            cesaro = MatrixFactory.create_matrix('cesaro')

            # 从 CSV 读取下三角矩阵
            custom = MatrixFactory.create_matrix('triangular_csv', path='matrix.csv')
        """
        if kind not in cls._matrices:
            available = ', '.join(cls.get_available_matrices())
            raise InputError(
                f"未知的矩阵类型: '{kind}'. "
                f"可用的类型: {available}"
            )
        try:
            matrix = cls._matrices[kind](**kwargs)
        except TypeError as e:
            raise InputError(f"矩阵类型 '{kind}' 的参数不合法: {e}")
        if kind == 'triangular_csv' and not matrix.lower_triangular:
            raise InputError(f"矩阵文件 '{kwargs.get('path')}' 不是下三角矩阵")
        return matrix

    @classmethod
    def create_family(cls, spec: Mapping[str, Any], i_max: Optional[int] = None) -> MatrixFamily:
        """
        由配置字典创建矩阵族

        Args:
            spec: {"kind": ..., ...}；"shift_of" 需要 "base" 子配置，可选 "i_max"
            i_max: 默认的指标截断

        Returns:
            矩阵族

        Examples:
            # Cesàro 平移族（几乎收敛）
            family = MatrixFactory.create_family({'kind': 'shift_of', 'base': {'kind': 'cesaro'}}, i_max=64)
        """
        spec = dict(spec)
        kind = spec.pop('kind', None)
        if kind is None:
            raise InputError("矩阵配置缺少字段 'kind'")
        if kind == 'shift_of':
            base = spec.pop('base', None)
            if base is None:
                raise InputError("shift_of 配置缺少字段 'base'")
            shift_max = spec.pop('i_max', i_max)
            if shift_max is None:
                raise InputError("shift_of 需要 i_max")
            return MatrixFamily.shifts(cls.create_matrix(**dict(base)), int(shift_max))
        return MatrixFamily.single(cls.create_matrix(kind, **spec))

    @classmethod
    def get_available_matrices(cls) -> List[str]:
        """
        获取所有可用的矩阵与矩阵族类型

        Returns:
            类型名称列表
        """
        return list(cls._matrices.keys()) + list(cls._family_kinds)

    @classmethod
    def get_matrix_info(cls, kind: str) -> Dict[str, str]:
        """
        获取矩阵类型的详细信息

        Raises:
            InputError: 如果类型不存在
        """
        if kind in cls._family_kinds:
            return {'name': kind, 'description': '平移矩阵族 b_nk^{(i)} = a_{n,k-i}', 'class_name': 'MatrixFamily'}
        if kind not in cls._matrices:
            raise InputError(f"未知的矩阵类型: '{kind}'")
        if kind in ('triangular_csv', 'scaled'):
            return {'name': kind, 'description': cls._matrices[kind].__doc__ or kind, 'class_name': 'SparseMatrix'
                    if kind == 'triangular_csv' else 'CombinedMatrix'}
        instance = cls._matrices[kind]()
        return {
            'name': instance.name,
            'description': instance.description,
            'class_name': instance.__class__.__name__,
        }

    @classmethod
    def list_all_matrices(cls) -> Dict[str, Dict[str, str]]:
        """列出所有注册的类型及其信息"""
        return {kind: cls.get_matrix_info(kind) for kind in cls.get_available_matrices()}


def get_matrix(kind: str = 'cesaro', **kwargs) -> SummabilityMatrix:
    """
    便捷函数：获取矩阵实例

    Args:
        kind: 矩阵类型，默认为 'cesaro'
        **kwargs: 传递给构造函数的参数
    """
    return MatrixFactory.create_matrix(kind, **kwargs)
