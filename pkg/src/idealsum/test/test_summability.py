"""
矩阵族可和性、统计收敛、分解与 Tauberian 检验测试
"""
import numpy as np
import pytest

from idealsum.config.args import Scale
from idealsum.core import (
    ConvergenceRequest, GaugeFactory, MatrixFamily, b_summable, generate, get_matrix, statistically_convergent,
    VerdictStatus, strong_summable,
)
from idealsum.core.gauge_family import PowerGaugeFamily, UniformGaugeFamily
from idealsum.core.gauges import PowerGauge
from idealsum.core.ideals import FiniteIdeal
from idealsum.core.matrices import CesaroMatrix, CombinedMatrix, IdentityMatrix
from idealsum.core.summability import (
    almost_convergence, check_base_condition, decompose_statistical, exceptional_set, f_b_convergence, sigma_variance,
    tauberian_check, variance_bridge_bounds, variance_characterization, weighted_density,
)
from idealsum.core.sequence import IndexSet, SequencePrefix
from idealsum.errors import InputError, RefusedError


def _cesaro_request(s, scale, target=None, gauges=None):
    return ConvergenceRequest(s, CesaroMatrix(), FiniteIdeal(), gauges=gauges, target=target, scale=scale)


def test_request_wraps_inputs(scale):
    req = ConvergenceRequest(np.zeros(scale.N), CesaroMatrix(), FiniteIdeal(), scale=scale)
    assert isinstance(req.s, SequencePrefix)
    assert isinstance(req.family, MatrixFamily)
    with pytest.raises(InputError):
        ConvergenceRequest(np.zeros(10), CesaroMatrix(), FiniteIdeal(), scale=scale)


def test_exceptional_set():
    D = exceptional_set(np.array([0.0, 0.5, 1.0]), 0.0, 0.5)
    assert D.indices().tolist() == [2, 3]
    with pytest.raises(InputError):
        exceptional_set(np.zeros(3), 0.0, 0.0)


def test_weighted_density_is_cesaro_count():
    squares = IndexSet.from_predicate(lambda n: np.floor(np.sqrt(n)) ** 2 == n, 100)
    mass = weighted_density(MatrixFamily.single(CesaroMatrix()), squares, 100)
    assert mass[99] == pytest.approx(0.1)
    assert mass[0] == pytest.approx(1.0)


def test_alternating_is_cesaro_summable(scale, alternating):
    verdict = b_summable(_cesaro_request(alternating, scale))
    assert verdict.holds
    assert abs(verdict.estimate) < 0.01
    assert b_summable(_cesaro_request(alternating, scale, target=1.0)).fails


def test_squares_statistically_convergent(scale, squares):
    verdict = statistically_convergent(_cesaro_request(squares, scale), a=0.0)
    assert verdict.holds
    assert verdict.estimate == 0.0
    assert set(verdict.hypotheses) == {f'{eps:g}' for eps in scale.eps_effective}


def test_alternating_not_statistically_convergent(scale, alternating):
    verdict = statistically_convergent(_cesaro_request(alternating, scale), a=0.0)
    assert verdict.fails
    assert verdict.witnesses


def test_statistical_needs_nonnegative_family(scale, squares):
    signed = CombinedMatrix.difference(CesaroMatrix(), IdentityMatrix())
    req = ConvergenceRequest(squares, signed, FiniteIdeal(), scale=scale)
    with pytest.raises(InputError):
        statistically_convergent(req, a=0.0)
    with pytest.raises(InputError):
        strong_summable(req, a=0.0)


def test_strong_summability(scale, squares, alternating):
    assert strong_summable(_cesaro_request(squares, scale), a=0.0).holds
    assert strong_summable(_cesaro_request(alternating, scale), a=0.0).fails
    squared = UniformGaugeFamily(PowerGauge(2))
    verdict = strong_summable(_cesaro_request(squares, scale, gauges=squared), a=0.0)
    assert verdict.holds
    assert verdict.diagnostics['gauges'] == squared.name


def test_sigma_variance_single_row(squares):
    # 第 4 行: (1, 0, 0, 1) 的均值 1/2，平均偏差 1/2
    assert float(sigma_variance(squares, CesaroMatrix(), None, 4, 0)) == pytest.approx(0.5)
    assert float(sigma_variance(squares, CesaroMatrix(), None, 1, 0)) == 0.0


def test_variance_bridge_bounds(scale, squares):
    assert variance_bridge_bounds(squares, CesaroMatrix(), 0.0, scale).holds


def test_almost_convergence(scale):
    verdict = almost_convergence(generate('periodic2', scale.N), scale)
    assert verdict.holds
    assert verdict.estimate == pytest.approx(0.5, abs=0.01)
    assert verdict.diagnostics['i_max'] == scale.N // 2
    with pytest.raises(InputError):
        almost_convergence(SequencePrefix(np.ones(scale.N), bounded=False), scale)


def test_base_condition(scale):
    result = check_base_condition(MatrixFamily.single(CesaroMatrix()), FiniteIdeal(), scale)
    assert result.holds
    assert result.values[-1] == 0.0
    signed = MatrixFamily.single(CombinedMatrix.difference(CesaroMatrix(), IdentityMatrix()))
    with pytest.raises(RefusedError):
        check_base_condition(signed, FiniteIdeal(), scale)


def test_decomposition(scale):
    s = generate('sparse_noise', scale.N, seed=11)
    result = decompose_statistical(s, CesaroMatrix(), FiniteIdeal(), 0.3, scale)
    assert not result.verdict.fails
    squares = IndexSet.from_predicate(lambda n: np.floor(np.sqrt(n)) ** 2 == n, scale.N)
    assert not np.any(result.disagreement.mask & ~squares.mask)
    replaced = result.disagreement.mask
    assert np.all(result.t.values[replaced] == 0.3)
    assert np.array_equal(result.t.values[~replaced], s.values[~replaced])
    assert result.trace[-1]['catch_all']
    with pytest.raises(InputError):
        decompose_statistical(s, CesaroMatrix(), object(), 0.3, scale)


def _cesaro_tauberian(s, scale, a=None):
    return tauberian_check(s, CesaroMatrix(), FiniteIdeal(),
                           phi=lambda x: 1.0 / x, psi=lambda x: 1.0 / x, h=lambda t: t / (1.0 + t),
                           scale=scale, a=a)


def test_tauberian_holds_for_slow_variation(scale):
    report = _cesaro_tauberian(generate('tauberian_ok', scale.N, seed=2), scale, a=0.5)
    assert report.failing == []
    assert report.premise.holds
    assert report.holds
    assert report.conclusion.estimate == pytest.approx(0.5)
    assert report.variation_constant <= 2.5


def test_tauberian_variation_violated(scale):
    report = _cesaro_tauberian(generate('tauberian_violator', scale.N), scale, a=0.0)
    assert 'variation' in report.failing
    assert report.premise.holds
    assert not report.holds
    assert report.conclusion.inconclusive


def test_tauberian_rejects_non_triangular(scale, squares):
    with pytest.raises(InputError):
        tauberian_check(squares, get_matrix('geometric', ratio=0.5), FiniteIdeal(),
                        phi=lambda x: 1.0 / x, psi=lambda x: 1.0 / x, h=lambda t: t, scale=scale)


def test_variance_characterization(scale, squares, alternating):
    verdict = variance_characterization(_cesaro_request(squares, scale), a=0.0)
    assert verdict.holds
    assert verdict.diagnostics['agrees_with_statistical']
    assert set(verdict.hypotheses) >= {'b_summable', 'sigma_to_zero', 'equicontinuity', 'row_sums_to_one'}
    # Cesàro 可和但 σ 不趋于 0
    oscillating = variance_characterization(_cesaro_request(alternating, scale), a=0.0)
    assert oscillating.fails
    assert oscillating.hypotheses['b_summable'].holds
    assert oscillating.diagnostics['agrees_with_statistical']


def test_variance_needs_envelope(scale, squares):
    squared = UniformGaugeFamily(PowerGauge(2))
    assert variance_characterization(_cesaro_request(squares, scale, gauges=squared), a=0.0).holds
    scaled = GaugeFactory.create_family({'kind': 'scaled_identity'})
    refused = variance_characterization(_cesaro_request(squares, scale, gauges=scaled), a=0.0)
    assert refused.inconclusive
    assert 'lower_envelope' in refused.diagnostics['failing']


def test_shift_cesaro_to_cesaro(scale):
    small = scale.with_(i_max=8)
    report = f_b_convergence(generate('periodic2', small.N), CesaroMatrix(), FiniteIdeal(), small)
    assert report.premise.holds
    assert report.premise.estimate == pytest.approx(0.5, abs=0.01)
    assert report.holds
    assert all(v.holds for v in report.hypotheses.values())


# 语料中有界序列及其解析极限
KNOWN_LIMITS = {
    'squares': 0.0,
    'sparse_noise': 0.3,
    'harmonic_drift': 0.3,
    'tauberian_ok': 0.5,
    'periodic2': 0.5,
    'alternating': 0.0,
    'density_half': 0.5,
    'random_bounded': 0.0,
}


@pytest.mark.parametrize('family', ['cesaro', 'shifts'])
@pytest.mark.parametrize('gauges', [None, UniformGaugeFamily(PowerGauge(2)), PowerGaugeFamily(1.0, 2.0)],
                         ids=['identity', 'square', 'mixed_power'])
def test_strong_and_statistical_agree_on_corpus(scale, family, gauges):
    """有界序列上强可和与统计收敛不会给出相反的判定"""
    F = MatrixFamily.single(CesaroMatrix()) if family == 'cesaro' else MatrixFamily.shifts(CesaroMatrix(), 8)
    decided = 0
    for name, limit in KNOWN_LIMITS.items():
        s = generate(name, scale.N, seed=5)
        req = ConvergenceRequest(s, F, FiniteIdeal(), gauges=gauges, scale=scale)
        strong = strong_summable(req, a=limit)
        statistical = statistically_convergent(req, a=limit)
        assert not (strong.holds and statistical.fails), name
        assert not (statistical.holds and strong.fails), name
        decided += strong.status == statistical.status != VerdictStatus.INCONCLUSIVE
    assert decided >= len(KNOWN_LIMITS) // 2


def test_squares_decomposition_at_default_scale():
    """N = 10^4: t 恒为 0，差异集即平方数集，其 Cesàro 权重不超过 0.01"""
    scale = Scale()
    s = generate('squares', scale.N)
    result = decompose_statistical(s, CesaroMatrix(), FiniteIdeal(), 0.0, scale)
    E_max = result.trace[0]['E_max']
    assert np.all(result.t.values[E_max:] == 0.0)
    assert np.all(result.t.values == 0.0)
    assert result.verdict.hypotheses['ideal_limit'].holds
    squares = IndexSet(s.values > 0)
    assert np.array_equal(result.disagreement.mask, squares.mask)
    weight = weighted_density(MatrixFamily.single(CesaroMatrix()), result.disagreement, scale.N)
    assert weight[scale.N - 1] <= 0.01 + 1e-12
    assert not result.verdict.fails


@pytest.mark.parametrize('seed', range(50))
def test_tauberian_sweep(scale, seed):
    report = _cesaro_tauberian(generate('tauberian_ok', scale.N, seed=seed), scale, a=0.5)
    assert report.holds
    assert report.conclusion.estimate == pytest.approx(0.5)


@pytest.mark.parametrize('N', [1000, 1500, 2000, 3000])
def test_tauberian_violator_always_rejected(N):
    scale = Scale(N=N)
    report = _cesaro_tauberian(generate('tauberian_violator', N), scale, a=0.0)
    assert 'variation' in report.failing
    assert not report.holds
