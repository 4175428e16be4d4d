"""
pre-Cauchy、二分引理与聚点结论测试
"""
import numpy as np
import pytest

from idealsum.config.args import Scale
from idealsum.core import generate
from idealsum.core.ideals import FiniteIdeal
from idealsum.core.matrices import CesaroMatrix, CombinedMatrix, IdentityMatrix
from idealsum.core.matrix_family import MatrixFamily
from idealsum.core.precauchy import (
    PairExceptionalSet, _pair_cost, dichotomy_check, finite_range_conclusion, gauge_pre_cauchy_sum,
    gauge_pre_cauchy_test, nowhere_dense_cluster_conclusion, pre_cauchy, pre_cauchy_plus, pre_cauchy_row_value,
    subsequence_convergence, successive_rows_check,
)
from idealsum.errors import InputError


def test_pair_exceptional_set():
    D = PairExceptionalSet(np.array([0.0, 1.0, 3.0]), 2.0)
    assert D.oscillation == 3.0
    assert not D.empty
    assert (1, 3) in D
    assert (3, 1) in D
    assert (1, 2) not in D
    assert PairExceptionalSet(np.array([0.0, 1.0, 3.0]), 5.0).empty
    assert D.mask(np.array([1, 2]), np.array([3])).tolist() == [[True], [True]]
    with pytest.raises(InputError):
        PairExceptionalSet(np.zeros(3), 0.0)


def test_row_value_on_squares(squares):
    # 前 100 项中 10 个 1、90 个 0: 2·10·90 / 100²
    assert pre_cauchy_row_value(squares, CesaroMatrix(), 100, 0.5) == pytest.approx(0.18, abs=1e-12)
    assert float(gauge_pre_cauchy_sum(squares, CesaroMatrix(), None, 100, 0)) == pytest.approx(0.18, abs=1e-12)
    with pytest.raises(InputError):
        pre_cauchy_row_value(squares, CesaroMatrix(), 100, 0.0)


def test_row_value_matches_sorted_path():
    values = np.array([0.0, 0.4, 1.0, 0.1])
    # 行 4: 16 个有序对中 |Δ| >= 0.5 的有 (1,3),(2,3),(4,3) 及其对称，共 6 个
    assert pre_cauchy_row_value(values, CesaroMatrix(), 4, 0.5) == pytest.approx(6 / 16)


def test_pre_cauchy(scale, squares, alternating):
    verdict = pre_cauchy(squares, CesaroMatrix(), FiniteIdeal(), scale=scale)
    assert verdict.holds
    assert verdict.diagnostics['method'] == 'two_valued'
    assert pre_cauchy(alternating, CesaroMatrix(), FiniteIdeal(), scale=scale).fails
    assert pre_cauchy_plus(squares, CesaroMatrix(), FiniteIdeal(), scale=scale).holds


def test_pre_cauchy_needs_nonnegative(scale, squares):
    signed = CombinedMatrix.difference(CesaroMatrix(), IdentityMatrix())
    with pytest.raises(InputError):
        pre_cauchy(squares, signed, FiniteIdeal(), scale=scale)
    with pytest.raises(InputError):
        pre_cauchy(squares, CesaroMatrix(), FiniteIdeal(), eps_list=[0.1, -1.0], scale=scale)


def test_successive_rows(scale, finite_ideal):
    verdict, pair = successive_rows_check(MatrixFamily.single(CesaroMatrix()), finite_ideal, scale)
    assert verdict.holds
    assert pair is None
    # 单位矩阵的相邻两行相差 2
    verdict, pair = successive_rows_check(MatrixFamily.single(IdentityMatrix()), finite_ideal, scale)
    assert verdict.fails
    assert verdict.estimate == pytest.approx(2.0)
    assert pair is not None and pair[1] == pair[0] + 1


def test_dichotomy(scale, squares, finite_ideal):
    report = dichotomy_check(squares, CesaroMatrix(), finite_ideal, 0.25, 0.75, scale)
    assert report.branch == 'Y'
    assert report.holds
    assert report.memberships['X'].fails
    with pytest.raises(InputError):
        dichotomy_check(squares, CesaroMatrix(), finite_ideal, 0.75, 0.25, scale)


def test_dichotomy_refuses_on_identity(scale, squares, finite_ideal):
    report = dichotomy_check(squares, IdentityMatrix(), finite_ideal, 0.25, 0.75, scale)
    assert report.branch is None
    assert report.verdict.inconclusive
    assert report.offending_pair is not None


def test_finite_range_conclusion(scale, squares, finite_ideal):
    verdict = finite_range_conclusion(squares, CesaroMatrix(), finite_ideal, scale)
    assert verdict.holds
    assert verdict.estimate == 0.0
    assert verdict.diagnostics['cluster_points'] == [0.0]


def test_nowhere_dense_cluster_conclusion(scale, squares, finite_ideal):
    verdict = nowhere_dense_cluster_conclusion(squares, CesaroMatrix(), finite_ideal, scale)
    assert verdict.holds
    assert verdict.estimate == 0.0
    coarse = nowhere_dense_cluster_conclusion(squares, CesaroMatrix(), finite_ideal, scale, grid_count=8)
    assert coarse.inconclusive
    assert coarse.diagnostics['refused'] == 'grid_too_coarse'


def test_subsequence_convergence(scale, squares, alternating, finite_ideal):
    non_squares = squares.values[:scale.N] == 0
    verdict = subsequence_convergence(squares, CesaroMatrix(), finite_ideal, 0.0, non_squares, scale)
    assert verdict.holds
    assert verdict.diagnostics['w'] > 0.9
    assert verdict.diagnostics['product_lower_bound']
    # 交错序列不是 pre-Cauchy，不作结论
    evens = np.arange(1, scale.N + 1) % 2 == 0
    refused = subsequence_convergence(alternating, CesaroMatrix(), finite_ideal, 1.0, evens, scale)
    assert refused.inconclusive
    assert 'pre_cauchy' in refused.diagnostics['failing']


def test_gauge_pre_cauchy_test(scale, alternating, finite_ideal):
    drift = generate('harmonic_drift', scale.N)
    verdict = gauge_pre_cauchy_test(drift, CesaroMatrix(), None, finite_ideal, scale)
    assert verdict.holds
    assert verdict.diagnostics['scale_reduced']
    assert verdict.diagnostics['sufficient']
    assert verdict.diagnostics['necessary']
    assert gauge_pre_cauchy_test(alternating, CesaroMatrix(), None, finite_ideal, scale).fails


def test_diagonal_pair_charged_once():
    """Cesàro 行 n 的支撑为 n，对角对的代价为 Σ n = N(N+1)/2"""
    F = MatrixFamily.single(CesaroMatrix())
    pairs = [(i, i) for i in F.indices]
    N = Scale().N
    cost = _pair_cost(F, pairs, N, N, quadratic=False)
    assert cost[-1] == N * (N + 1) // 2
    assert cost[-1] <= Scale().row_support_budget


def test_pre_cauchy_fits_exact_budget():
    # 预算恰好等于 Σ n 时不应拒绝
    scale = Scale(N=2000, row_support_budget=2000 * 2001 // 2)
    verdict = pre_cauchy(generate('sparse_noise', scale.N, seed=0), CesaroMatrix(), FiniteIdeal(), scale=scale)
    assert verdict.diagnostics['method'] == 'sorted'
    assert not verdict.fails
