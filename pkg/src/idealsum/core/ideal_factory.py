"""
理想工厂模块
用于统一管理和创建理想
"""
from typing import Any, Callable, Dict, List, Mapping, Optional

import numpy as np

from idealsum.config.args import Scale
from idealsum.errors import InputError
from .ideal_base import IdealHandle
from .ideals import FiniteIdeal, FinitePlusIdeal
from .matrix_engine import derived_ideal
from .matrix_factory import MatrixFactory

IdealBuilder = Callable[..., IdealHandle]


def _is_square(n: np.ndarray) -> np.ndarray:
    root = np.floor(np.sqrt(n)).astype(np.int64)
    return root * root == n


def _is_power_of_two(n: np.ndarray) -> np.ndarray:
    n = np.asarray(n, dtype=np.int64)
    return (n > 0) & ((n & (n - 1)) == 0)


# finite_plus 可用的命名集合 E
NAMED_SETS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    'squares': _is_square,
    'powers_of_two': _is_power_of_two,
    'evens': lambda n: n % 2 == 0,
    'odds': lambda n: n % 2 == 1,
}


def _finite_plus(indices: Optional[List[int]] = None, set: Optional[str] = None,
                 name: Optional[str] = None) -> IdealHandle:
    if (indices is None) == (set is None):
        raise InputError("finite_plus 需要 'indices' 与 'set' 之一")
    if set is not None:
        if set not in NAMED_SETS:
            raise InputError(f"未知的集合: '{set}'. 可用的集合: {', '.join(NAMED_SETS)}")
        return FinitePlusIdeal(NAMED_SETS[set], name=name or f'I_f+{set}')
    return FinitePlusIdeal.from_indices(indices, name=name)


class IdealFactory:
    """
    理想工厂
    负责注册、创建和管理理想
    """

    # 注册的理想类型
    _ideals: Dict[str, IdealBuilder] = {
        'finite': FiniteIdeal,
        'finite_plus': _finite_plus,
    }

    # 需要矩阵族的导出理想
    _derived_kinds = ('statistical', 'derived')

    @classmethod
    def register_ideal(cls, name: str, builder: IdealBuilder):
        """
        注册新的理想类型

        Args:
            name: 类型名称
            builder: 返回 IdealHandle 的构造函数
        """
        if not callable(builder):
            raise TypeError("理想构造函数必须可调用")
        cls._ideals[name] = builder

    @classmethod
    def create_ideal(cls, spec: Mapping[str, Any], scale: Optional[Scale] = None) -> IdealHandle:
        """
        由配置字典创建理想

        Args:
            spec: {"kind": ..., ...}
            scale: 导出理想检查条件 (+) 所用的尺度

        Returns:
            理想实例

        Raises:
            InputError: 类型不存在或参数不合法
            RefusedError: 导出理想的矩阵族含负元素或条件 (+) 不成立

        Examples:
            # 有限理想
            IdealFactory.create_ideal({'kind': 'finite'})

            # 统计收敛的理想 J_{Cesàro, I_f}
            IdealFactory.create_ideal({'kind': 'statistical'})

            # 由平移 Cesàro 族导出的理想
            IdealFactory.create_ideal({'kind': 'derived', 'matrix': {'kind': 'shift_of', 'base': {'kind': 'cesaro'}},
                                       'inner': {'kind': 'finite'}})
        """
        spec = dict(spec)
        kind = spec.pop('kind', None)
        if kind is None:
            raise InputError("理想配置缺少字段 'kind'")
        scale = scale or Scale()
        if kind == 'statistical':
            family = MatrixFactory.create_family({'kind': 'cesaro'})
            return derived_ideal(family, FiniteIdeal(), scale)
        if kind == 'derived':
            matrix = spec.pop('matrix', None)
            if matrix is None:
                raise InputError("derived 配置缺少字段 'matrix'")
            inner = cls.create_ideal(spec.pop('inner', {'kind': 'finite'}), scale)
            family = MatrixFactory.create_family(matrix, i_max=scale.i_max)
            return derived_ideal(family, inner, scale)
        if kind not in cls._ideals:
            available = ', '.join(cls.get_available_ideals())
            raise InputError(
                f"未知的理想类型: '{kind}'. "
                f"可用的类型: {available}"
            )
        try:
            return cls._ideals[kind](**spec)
        except TypeError as e:
            raise InputError(f"理想类型 '{kind}' 的参数不合法: {e}")

    @classmethod
    def get_available_ideals(cls) -> List[str]:
        """获取所有可用的理想类型"""
        return list(cls._ideals.keys()) + list(cls._derived_kinds)

    @classmethod
    def get_ideal_info(cls, kind: str) -> Dict[str, str]:
        """
        获取理想类型的详细信息

        Raises:
            InputError: 如果类型不存在
        """
        if kind == 'statistical':
            return {'name': kind, 'description': '统计收敛的理想 J_{Cesàro, I_f}', 'class_name': 'MatrixDerivedIdeal'}
        if kind == 'derived':
            return {'name': kind, 'description': '矩阵族导出的理想 J_{B,I}', 'class_name': 'MatrixDerivedIdeal'}
        if kind == 'finite_plus':
            return {'name': kind, 'description': '由集合 E 与有限集生成的理想', 'class_name': 'FinitePlusIdeal'}
        if kind not in cls._ideals:
            raise InputError(f"未知的理想类型: '{kind}'")
        instance = cls._ideals[kind]()
        return {
            'name': instance.name,
            'description': instance.description,
            'class_name': instance.__class__.__name__,
        }

    @classmethod
    def list_all_ideals(cls) -> Dict[str, Dict[str, str]]:
        """列出所有注册的类型及其信息"""
        return {kind: cls.get_ideal_info(kind) for kind in cls.get_available_ideals()}


def get_ideal(kind: str = 'finite', **kwargs) -> IdealHandle:
    """
    便捷函数：获取理想实例

    Args:
        kind: 理想类型，默认为 'finite'
        **kwargs: 其余配置字段
    """
    return IdealFactory.create_ideal({'kind': kind, **kwargs})


__all__ = ['IdealFactory', 'NAMED_SETS', 'get_ideal']
