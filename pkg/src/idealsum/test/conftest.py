"""
测试共用的尺度、理想与矩阵族
"""
import pytest

from idealsum.config.args import Scale
from idealsum.core import MatrixFamily, generate
from idealsum.core.ideals import FiniteIdeal
from idealsum.core.matrices import CesaroMatrix


@pytest.fixture
def scale():
    """小窗口: floor = 1/√2000，有效阈值为 1 与 0.1"""
    return Scale(N=2000)


@pytest.fixture
def finite_ideal():
    return FiniteIdeal()


@pytest.fixture
def cesaro_family():
    return MatrixFamily.single(CesaroMatrix())


@pytest.fixture
def squares():
    return generate('squares', 2000)


@pytest.fixture
def alternating():
    return generate('alternating', 2000)
