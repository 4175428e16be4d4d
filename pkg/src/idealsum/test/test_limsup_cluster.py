"""
上/下极限不等式与 J_{B,I}-聚点测试
"""
import numpy as np
import pytest

from idealsum.core import generate
from idealsum.core.ideals import FiniteIdeal
from idealsum.core.matrices import CesaroMatrix, IdentityMatrix
from idealsum.core.limsup_cluster import (
    cluster_gauge_sufficient, default_test_sets, jbi_cluster_point, limsup_implies_statistical,
    matrix_limsup_inequality,
)
from idealsum.core.matrix_engine import statistical_ideal
from idealsum.core.sequence import SequencePrefix
from idealsum.errors import InputError


def test_default_test_sets():
    test_sets = default_test_sets(16)
    assert test_sets['squares'].indices().tolist() == [1, 4, 9, 16]
    assert test_sets['powers_of_two'].indices().tolist() == [1, 2, 4, 8, 16]
    assert len(test_sets['finite']) == 8


def test_cesaro_does_not_raise_limsup(scale, finite_ideal, alternating):
    report = matrix_limsup_inequality(CesaroMatrix(), finite_ideal, finite_ideal, alternating, scale)
    assert report.holds
    assert report.rhs == 1.0
    assert report.rhs_inf == -1.0
    assert abs(report.lhs) < 0.01
    assert report.skipped_sets == ['squares', 'powers_of_two']


def test_identity_against_statistical_ideal(scale, finite_ideal, squares):
    J = statistical_ideal(scale)
    report = matrix_limsup_inequality(IdentityMatrix(), finite_ideal, J, squares, scale)
    assert report.lhs == 1.0
    assert report.rhs == 0.0
    # 平方数集属于 J 但单位矩阵在其上的质量不趋于 0，前提不成立
    assert not report.hypotheses['set_mass'].holds
    assert report.verdict.inconclusive


def test_limsup_inequality_needs_bounded_real(scale, finite_ideal):
    unbounded = SequencePrefix(np.ones(scale.N), bounded=False)
    with pytest.raises(InputError):
        matrix_limsup_inequality(CesaroMatrix(), finite_ideal, finite_ideal, unbounded, scale)


def test_limsup_implies_statistical(scale, finite_ideal, squares, alternating):
    verdict = limsup_implies_statistical(squares, CesaroMatrix(), finite_ideal, 0.0, scale)
    assert verdict.holds
    assert verdict.diagnostics['limsup'] == 0.0
    refused = limsup_implies_statistical(alternating, CesaroMatrix(), finite_ideal, 0.0, scale)
    assert refused.inconclusive
    assert 'extreme_equals_target' in refused.diagnostics['failing']


def test_cluster_points_of_alternating(scale, finite_ideal, alternating):
    for a in (-1.0, 1.0):
        verdict = jbi_cluster_point(alternating, CesaroMatrix(), finite_ideal, a, None, scale)
        assert verdict.holds
        assert verdict.residual == pytest.approx(0.5, abs=1e-3)
    far = jbi_cluster_point(alternating, CesaroMatrix(), finite_ideal, 5.0, None, scale)
    assert far.fails
    assert far.residual == pytest.approx(1.0)


def test_cluster_gauge_sufficient(scale, finite_ideal, squares, alternating):
    verdict = cluster_gauge_sufficient(squares, CesaroMatrix(), None, finite_ideal, 0.0, scale)
    assert verdict.holds
    assert verdict.diagnostics['gauge_liminf'] < 0.05
    # |s − 1| 的 Cesàro 均值趋于 1，不足以推出聚点
    assert cluster_gauge_sufficient(alternating, CesaroMatrix(), None, finite_ideal, 1.0, scale).inconclusive


@pytest.mark.parametrize('seed', range(100))
def test_limsup_inequality_on_random_bounded(scale, seed):
    s = generate('random_bounded', scale.N, seed=seed)
    for J in (FiniteIdeal(), statistical_ideal(scale)):
        report = matrix_limsup_inequality(CesaroMatrix(), FiniteIdeal(), J, s, scale)
        assert report.lhs <= report.rhs + 1e-9
        assert report.rhs_inf - 1e-9 <= report.lhs_inf
        assert not report.verdict.fails
