"""
理想、I-极限与扩展实数测试
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from idealsum.config.args import Scale
from idealsum.core import IdealFactory, generate
from idealsum.core.extended import ExtendedNonneg, ExtendedReal, generalized_distance
from idealsum.core.ideal_base import EpsOutcome, aggregate_outcomes, classify_residual
from idealsum.core.ideal_core import (
    ideal_cluster_points, ideal_limit, ideal_liminf, ideal_limsup, ideal_limsup_threshold, is_ideal_bounded,
    is_ideal_cauchy, uniform_ideal_limit,
)
from idealsum.core.ideals import FiniteIdeal, FinitePlusIdeal
from idealsum.core.matrix_engine import statistical_ideal
from idealsum.core.sequence import IndexSet
from idealsum.core.verdict import VerdictStatus
from idealsum.errors import InputError


def test_classify_residual():
    assert classify_residual(0.05, 0.1, 3.0) == EpsOutcome.PASS
    assert classify_residual(0.25, 0.1, 3.0) == EpsOutcome.UNRESOLVED
    assert classify_residual(0.5, 0.1, 3.0) == EpsOutcome.FAIL


def test_finite_ideal_membership(scale, finite_ideal):
    finite = IndexSet.from_indices([1, 5, 17], scale.N, name='F')
    assert finite_ideal.contains(finite, scale).holds
    evens = IndexSet.from_predicate(lambda n: n % 2 == 0, scale.N, name='evens')
    verdict = finite_ideal.contains(evens, scale)
    assert verdict.fails
    assert verdict.residual == pytest.approx(0.5, abs=1e-3)
    assert all(w % 2 == 0 for w in verdict.witnesses)


def test_finite_ideal_null_test(scale, finite_ideal):
    n = np.arange(1, scale.N + 1)
    assert finite_ideal.null_test(1.0 / n, scale).holds
    stuck = finite_ideal.null_test(np.full(scale.N, 0.5), scale)
    assert stuck.fails
    assert stuck.witnesses
    with pytest.raises(InputError):
        finite_ideal.null_test(-np.ones(scale.N), scale)


def test_ordinary_limit(scale, finite_ideal):
    verdict = ideal_limit(generate('harmonic_drift', scale.N), finite_ideal, scale)
    assert verdict.holds
    assert verdict.estimate == pytest.approx(0.3, abs=2e-3)


def test_alternating_has_no_ordinary_limit(scale, finite_ideal, alternating):
    verdict = ideal_limit(alternating, finite_ideal, scale)
    assert verdict.fails
    assert verdict.diagnostics['limsup_liminf_gap'] == pytest.approx(2.0)
    assert float(ideal_limsup(alternating, finite_ideal, scale)) == 1.0
    assert float(ideal_liminf(alternating, finite_ideal, scale)) == -1.0


def test_short_sequence_rejected(finite_ideal):
    with pytest.raises(InputError):
        ideal_limit(np.zeros(10), finite_ideal, Scale(N=100))


def test_finite_plus_ignores_squares(scale, squares):
    ideal = FinitePlusIdeal(lambda n: np.floor(np.sqrt(n)) ** 2 == n, name='I_f+squares')
    assert ideal.contains(squares.values > 0, scale).holds
    assert ideal_limit(squares, ideal, scale, target=0.0).holds
    assert ideal_limit(squares, FiniteIdeal(), scale, target=0.0).fails


def test_finite_plus_from_indices(scale):
    ideal = FinitePlusIdeal.from_indices([1500, 1600])
    u = np.zeros(scale.N)
    u[[1499, 1599]] = 7.0
    assert ideal_limit(u, ideal, scale, target=0.0).holds


def test_ideal_factory():
    assert IdealFactory.create_ideal({'kind': 'finite'}).name == 'I_f'
    ideal = IdealFactory.create_ideal({'kind': 'finite_plus', 'set': 'squares'})
    assert ideal.name == 'I_f+squares'
    assert 'statistical' in IdealFactory.get_available_ideals()
    with pytest.raises(InputError):
        IdealFactory.create_ideal({'kind': 'finite_plus', 'set': 'primes'})
    with pytest.raises(InputError):
        IdealFactory.create_ideal({'kind': 'finite_plus', 'set': 'evens', 'indices': [1]})
    with pytest.raises(InputError):
        IdealFactory.create_ideal({'kind': 'nope'})
    with pytest.raises(InputError):
        IdealFactory.create_ideal({})


def test_statistical_ideal(scale, squares):
    J = statistical_ideal(scale)
    assert J.contains(IndexSet(squares.values > 0, name='squares'), scale).holds
    evens = J.contains(IndexSet.from_predicate(lambda n: n % 2 == 0, scale.N), scale)
    assert evens.fails
    assert evens.residual >= scale.member_margin


def test_statistical_limsup(scale, alternating):
    J = statistical_ideal(scale)
    assert J.limsup(alternating.values, scale) == 1.0
    assert J.liminf(alternating.values, scale) == -1.0
    assert J.limsup(generate('squares', scale.N).values, scale) == 0.0


def test_cluster_points(scale, alternating):
    J = statistical_ideal(scale)
    assert ideal_cluster_points(alternating, J, [-1.0, 0.0, 1.0], 0.5, scale) == [-1.0, 1.0]
    with pytest.raises(InputError):
        ideal_cluster_points(alternating, J, [], 0.5, scale)


def test_bounded_and_cauchy(scale, finite_ideal, alternating):
    assert is_ideal_bounded(alternating, finite_ideal, 2.0, scale).holds
    assert is_ideal_bounded(alternating, finite_ideal, 0.5, scale).fails
    assert is_ideal_cauchy(generate('harmonic_drift', scale.N), finite_ideal, 0.1, scale).holds
    assert is_ideal_cauchy(alternating, finite_ideal, 0.5, scale).fails
    with pytest.raises(InputError):
        is_ideal_bounded(alternating, finite_ideal, 0.0, scale)


def test_uniform_limit_with_infinite_values(scale, finite_ideal):
    n = np.arange(1, scale.N + 1)
    rows = np.vstack([np.full(scale.N, np.inf), 1.0 / n])
    assert uniform_ideal_limit(rows, [np.inf, 0.0], finite_ideal, scale).holds
    assert uniform_ideal_limit(rows, [1.0, 0.0], finite_ideal, scale).fails


def test_extended_reals():
    assert generalized_distance(math.inf, math.inf) == 0.0
    assert generalized_distance(1.0, math.inf) == math.inf
    assert ExtendedNonneg(2.0).distance(math.inf) == ExtendedReal.pos_inf()
    assert (ExtendedReal(1.0) + 2.0) == 3.0
    assert -ExtendedReal.pos_inf() == ExtendedReal.neg_inf()
    with pytest.raises(InputError):
        ExtendedReal.pos_inf() + ExtendedReal.neg_inf()
    with pytest.raises(InputError):
        ExtendedNonneg(-1.0)
    with pytest.raises(InputError):
        ExtendedReal(math.nan)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=900), max_size=30))
def test_finite_sets_belong_to_finite_ideal(indices):
    scale = Scale(N=2000)
    K = IndexSet.from_indices(indices, scale.N)
    assert FiniteIdeal().contains(K, scale).holds


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=-10, max_value=10, allow_nan=False))
def test_constant_sequence_limit(c):
    scale = Scale(N=500)
    verdict = ideal_limit(np.full(scale.N, c), FiniteIdeal(), scale)
    assert verdict.holds
    assert verdict.estimate == pytest.approx(c)


def test_threshold_sweep_matches_base_formula(scale, finite_ideal):
    u = generate('random_bounded', scale.N, seed=3).values
    exact = float(ideal_limsup(u, finite_ideal, scale))
    swept = float(ideal_limsup_threshold(u, finite_ideal, scale))
    step = (u.max() - u.min()) / 1000
    assert exact - 1e-12 <= swept <= exact + step + 1e-12
    assert float(ideal_limsup_threshold(np.full(scale.N, 0.7), finite_ideal, scale)) == 0.7


def test_aggregate_requires_every_eps_to_pass():
    """某个 ε 未决时整体不确定，不能算成立"""
    assert aggregate_outcomes({1.0: EpsOutcome.PASS, 0.1: EpsOutcome.PASS}) == VerdictStatus.HOLDS
    mixed = {1.0: EpsOutcome.PASS, 0.1: EpsOutcome.PASS, 0.01: EpsOutcome.UNRESOLVED}
    assert aggregate_outcomes(mixed) == VerdictStatus.INCONCLUSIVE
    mixed[1e-3] = EpsOutcome.FAIL
    assert aggregate_outcomes(mixed) == VerdictStatus.FAILS
    assert aggregate_outcomes({}) == VerdictStatus.INCONCLUSIVE


def test_null_test_unresolved_eps_is_inconclusive(scale, finite_ideal):
    # 0.15 落在 (0.1, 0.3] 内，ε = 0.1 未决
    verdict = finite_ideal.null_test(np.full(scale.N, 0.15), scale)
    assert verdict.inconclusive
    assert verdict.diagnostics['per_eps']['0.1'] == 'unresolved'


def test_limit_gap_bounded_by_smallest_eps():
    """间隙 0.05 超过 N = 10^4 时最小的有效 ε = 0.01"""
    scale = Scale()
    n = np.arange(1, scale.N + 1)
    u = 0.3 + 0.025 * (-1.0) ** n
    verdict = ideal_limit(u, FiniteIdeal(), scale)
    assert min(scale.eps_effective) == pytest.approx(0.01)
    assert verdict.fails
    assert verdict.witnesses
    assert verdict.diagnostics['limsup_liminf_gap'] == pytest.approx(0.05)
    # 小窗口上最小的 ε 是 0.1，同一序列判定成立
    small = Scale(N=2000)
    assert ideal_limit(u[:small.N], FiniteIdeal(), small).holds


def _random_pair(seed: int, amp: float, offset: float, N: int):
    u = amp * generate('random_bounded', N, seed=seed).values + offset
    v = generate('random_bounded', N, seed=seed + 7919).values
    return u, v


def _ideals(scale: Scale):
    return [FiniteIdeal(), statistical_ideal(scale)]


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.floats(min_value=0.5, max_value=2.0),
       st.floats(min_value=-1.0, max_value=1.0), st.sampled_from([500, 2000]))
def test_liminf_limsup_duality_and_order(seed, amp, offset, N):
    scale = Scale(N=N)
    u, _ = _random_pair(seed, amp, offset, N)
    for I in _ideals(scale):
        upper = float(ideal_limsup(u, I, scale))
        lower = float(ideal_liminf(u, I, scale))
        assert lower == -I.limsup(-u, scale)
        assert lower <= upper


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.floats(min_value=0.5, max_value=2.0),
       st.floats(min_value=-1.0, max_value=1.0), st.sampled_from([500, 2000]))
def test_limsup_subadditive(seed, amp, offset, N):
    scale = Scale(N=N)
    u, v = _random_pair(seed, amp, offset, N)
    for I in _ideals(scale):
        total = float(ideal_limsup(u + v, I, scale))
        assert total <= float(ideal_limsup(u, I, scale)) + float(ideal_limsup(v, I, scale)) + scale.tol


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.floats(min_value=0.5, max_value=2.0),
       st.floats(min_value=-1.0, max_value=1.0))
def test_limsup_shifts_by_convergent_summand(seed, amp, c):
    """v 为常数（I-收敛）时 limsup(u + v) = limsup u + c"""
    scale = Scale(N=500)
    u, _ = _random_pair(seed, amp, 0.0, scale.N)
    for I in _ideals(scale):
        shifted = float(ideal_limsup(u + c, I, scale))
        assert shifted == pytest.approx(float(ideal_limsup(u, I, scale)) + c, abs=1e-9)


@settings(max_examples=5, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_threshold_sweep_matches_derived_limsup(seed):
    scale = Scale(N=500)
    u = generate('random_bounded', scale.N, seed=seed).values
    J = statistical_ideal(scale)
    exact = float(ideal_limsup(u, J, scale))
    swept = float(ideal_limsup_threshold(u, J, scale))
    step = (u.max() - u.min()) / 1000
    assert exact - 1e-12 <= swept <= exact + step + 1e-12
