"""
规范函数工厂模块
用于统一管理和创建规范函数与规范函数族
"""
from typing import Any, Callable, Dict, List, Mapping

from idealsum.errors import InputError
from .gauge_base import GaugeFunction, GaugeFamily
from .gauge_family import UniformGaugeFamily, PowerGaugeFamily, CallableGaugeFamily
from .gauges import PowerGauge, TableGauge, CallableGauge


def _identity() -> GaugeFunction:
    return PowerGauge(1.0)


class GaugeFactory:
    """
    规范函数工厂
    负责注册、创建和管理规范函数与族
    """

    # 注册的单个规范函数类型
    _gauges: Dict[str, Callable[..., GaugeFunction]] = {
        'power': PowerGauge,
        'table': TableGauge,
        'identity': _identity,
        'exp': CallableGauge.exp_minus_one,
    }

    # 注册的族类型
    _families: Dict[str, Callable[..., GaugeFamily]] = {
        'power_family': PowerGaugeFamily,
        'scaled_identity': CallableGaugeFamily.scaled_identity,
        'clipped_linear': CallableGaugeFamily.clipped_linear,
    }

    @classmethod
    def register_gauge(cls, name: str, builder: Callable[..., GaugeFunction]):
        """注册新的规范函数类型"""
        if not callable(builder):
            raise TypeError("规范函数构造函数必须可调用")
        cls._gauges[name] = builder

    @classmethod
    def create_gauge(cls, kind: str, **kwargs: Any) -> GaugeFunction:
        """
        创建规范函数实例

        Args:
            kind: 类型 ('power', 'table', 'identity', 'exp')
            **kwargs: 构造参数

        Raises:
            InputError: 类型不存在或参数不合法

        Examples:
            square = GaugeFactory.create_gauge('power', p=2)
            table = GaugeFactory.create_gauge('table', points=[[1, 1], [2, 4]])
        """
        if kind not in cls._gauges:
            available = ', '.join(cls._gauges.keys())
            raise InputError(
                f"未知的规范函数类型: '{kind}'. "
                f"可用的类型: {available}"
            )
        try:
            return cls._gauges[kind](**kwargs)
        except TypeError as e:
            raise InputError(f"规范函数类型 '{kind}' 的参数不合法: {e}")

    @classmethod
    def create_family(cls, spec: Mapping[str, Any]) -> GaugeFamily:
        """
        由配置字典创建规范函数族；单个规范函数类型得到一致族

        Examples:
            family = GaugeFactory.create_family({'kind': 'power_family', 'p_min': 1, 'p_max': 2})
        """
        spec = dict(spec)
        kind = spec.pop('kind', None)
        if kind is None:
            raise InputError("规范函数配置缺少字段 'kind'")
        if kind in cls._families:
            try:
                return cls._families[kind](**spec)
            except TypeError as e:
                raise InputError(f"规范函数族 '{kind}' 的参数不合法: {e}")
        return UniformGaugeFamily(cls.create_gauge(kind, **spec))

    @classmethod
    def get_available_gauges(cls) -> List[str]:
        """获取所有可用的规范函数与族类型"""
        return list(cls._gauges.keys()) + list(cls._families.keys())

    @classmethod
    def get_gauge_info(cls, kind: str) -> Dict[str, str]:
        """
        获取类型的详细信息

        Raises:
            InputError: 类型不存在
        """
        if kind in cls._families:
            family = cls._families[kind]()
            return {'name': family.name, 'kind': family.kind, 'class_name': family.__class__.__name__}
        if kind not in cls._gauges:
            raise InputError(f"未知的规范函数类型: '{kind}'")
        if kind == 'table':
            return {'name': 'table', 'kind': 'orlicz|modulus', 'class_name': 'TableGauge'}
        gauge = cls._gauges[kind](p=1.0) if kind == 'power' else cls._gauges[kind]()
        return {'name': gauge.name, 'kind': gauge.kind, 'class_name': gauge.__class__.__name__}

    @classmethod
    def list_all_gauges(cls) -> Dict[str, Dict[str, str]]:
        """列出所有注册的类型及其信息"""
        return {kind: cls.get_gauge_info(kind) for kind in cls.get_available_gauges()}


def get_gauge(kind: str = 'identity', **kwargs) -> GaugeFunction:
    """
    便捷函数：获取规范函数实例

    Args:
        kind: 类型，默认为 'identity'
        **kwargs: 构造参数
    """
    return GaugeFactory.create_gauge(kind, **kwargs)
