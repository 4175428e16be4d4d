"""
有限维 Banach 空间与 Simons 型检验测试
"""
import math

import numpy as np
import pytest

from idealsum.core import FiniteDimSpace, generate, generate_vectors
from idealsum.core.banach_sim import (
    bi_summable_transfer, hull_contains, i_generation_check, positive_part, positive_part_criterion,
    pre_cauchy_transfer, simons_level_set_contains, simons_sup_check, support_functional, weak_stat_transfer,
)
from idealsum.core.matrices import CesaroMatrix
from idealsum.errors import InputError


@pytest.fixture
def plane():
    return FiniteDimSpace.max_norm(2)


@pytest.fixture
def zigzag(scale):
    return generate_vectors('vector_alternating', scale.N, 2)


def _as_set(points):
    return {tuple(np.round(p, 9) + 0.0) for p in points}


def test_max_norm_dual_points(plane):
    assert _as_set(plane.dual_extreme_points) == {(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)}
    assert plane.norm(np.array([3.0, -1.0])) == pytest.approx(3.0)
    assert plane.dual_norm(np.array([0.5, -0.5])) == pytest.approx(1.0)


def test_space_validation():
    with pytest.raises(InputError):
        FiniteDimSpace.polytope([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])
    with pytest.raises(InputError):
        FiniteDimSpace.pnorm(0.5, 2)
    with pytest.raises(InputError):
        FiniteDimSpace.from_spec({'p': 2, 'd': 2})
    with pytest.raises(InputError):
        FiniteDimSpace('ball')
    space = FiniteDimSpace.from_spec({'kind': 'pnorm', 'p': 2, 'd': 3})
    assert space.q == 2.0
    assert not space.polytopal_dual
    assert FiniteDimSpace.pnorm(1, 2).q == math.inf


def test_support_functional(plane):
    sf = support_functional(plane, [3.0, -1.0])
    assert np.allclose(sf.vector, [1.0, 0.0])
    assert sf.value == pytest.approx(3.0)
    euclid = support_functional(FiniteDimSpace.pnorm(2, 2), [3.0, 4.0])
    assert np.allclose(euclid.vector, [0.6, 0.8])
    assert euclid.value == pytest.approx(5.0)
    assert support_functional(plane, [0.0, 0.0]).degenerate
    with pytest.raises(InputError):
        support_functional(plane, [1.0, 2.0, 3.0])


def test_hull_contains(plane):
    inside, residual = hull_contains(plane.dual_extreme_points, np.array([0.2, 0.3]))
    assert inside
    assert residual <= 1e-9
    outside, residual = hull_contains(plane.dual_extreme_points, np.array([1.0, 1.0]))
    assert not outside
    assert residual > 0.1


def test_positive_part():
    assert positive_part(-2.0) == 0.0
    assert positive_part(1.5) == 1.5
    assert positive_part(np.array([-1.0, 2.0])).tolist() == [0.0, 2.0]


def test_simons_holds_with_full_boundary(scale, plane, zigzag, finite_ideal):
    result = simons_sup_check(plane, plane.dual_extreme_points, zigzag, CesaroMatrix(), finite_ideal, scale,
                              ball_samples=2000)
    assert result.verdict.holds
    assert result.sup_H == pytest.approx(0.3)
    assert result.gap <= scale.tol
    assert result.samples_evaluated + result.samples_pruned == 2000


def test_simons_fails_with_partial_boundary(scale, plane, zigzag, finite_ideal):
    H = [[0.0, 1.0], [0.0, -1.0]]
    result = simons_sup_check(plane, H, zigzag, CesaroMatrix(), finite_ideal, scale, ball_samples=2000)
    assert result.verdict.fails
    assert result.sup_H == pytest.approx(0.2)
    assert result.sup_ball == pytest.approx(0.3)
    assert result.verdict.witnesses


def test_simons_rejects_points_outside_ball(scale, plane, zigzag, finite_ideal):
    with pytest.raises(InputError):
        simons_sup_check(plane, [[2.0, 0.0]], zigzag, CesaroMatrix(), finite_ideal, scale)


def test_i_generation(plane):
    assert i_generation_check(plane.dual_extreme_points, None, plane).holds
    H = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    staged = i_generation_check(H, [[0, 1], [0, 1, 2, 3]], plane)
    assert staged.holds
    assert staged.diagnostics['coverage_per_level'] == [2, 4]
    assert i_generation_check([[1.0, 0.0], [-1.0, 0.0]], None, plane).fails
    with pytest.raises(InputError):
        i_generation_check(H, [[0, 1], [0]], plane)
    with pytest.raises(InputError):
        i_generation_check(H, [[0, 1]], plane)


def test_i_generation_smooth_dual():
    disc = FiniteDimSpace.pnorm(2, 2)
    square = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]
    assert i_generation_check(square, None, disc, samples=64).fails


def test_positive_part_criterion(scale, squares, finite_ideal):
    verdict = positive_part_criterion(squares, CesaroMatrix(), finite_ideal, 0.0, scale)
    assert verdict.holds
    assert verdict.diagnostics['agree']
    assert verdict.diagnostics['converse_applies']


def test_level_set_membership(scale, zigzag, finite_ideal):
    inside = simons_level_set_contains([1.0, 0.0], zigzag, CesaroMatrix(), finite_ideal, 0.3, 0.1, 3, scale)
    assert inside.member
    assert inside.worst == 0.0
    outside = simons_level_set_contains([1.0, 0.0], zigzag, CesaroMatrix(), finite_ideal, 0.0, 0.1, 3, scale)
    assert not outside.member
    assert outside.worst == pytest.approx(0.15, abs=0.01)
    with pytest.raises(InputError):
        simons_level_set_contains([1.0, 0.0], zigzag, CesaroMatrix(), finite_ideal, 0.0, 0.0, 3, scale)


def test_scalar_sequences_are_rejected_as_vectors(scale, plane, finite_ideal):
    with pytest.raises(InputError):
        simons_sup_check(plane, plane.dual_extreme_points, generate('squares', scale.N).values[:, None],
                         CesaroMatrix(), finite_ideal, scale)


def test_weak_stat_transfer(scale, plane, finite_ideal):
    xs = generate_vectors('vector_sparse', scale.N, 2, seed=4)
    limit = [0.3, -0.2]
    verdict = weak_stat_transfer(plane, plane.dual_extreme_points, xs, limit, CesaroMatrix(), finite_ideal, scale,
                                 samples=16)
    assert verdict.holds
    assert verdict.hypotheses['i_generation'].holds
    partial = weak_stat_transfer(plane, [[1.0, 0.0], [-1.0, 0.0]], xs, limit, CesaroMatrix(), finite_ideal, scale,
                                 samples=16)
    assert partial.inconclusive
    assert partial.diagnostics['failing'] == ['i_generation']


def test_bi_summable_transfer(scale, plane, zigzag, finite_ideal):
    verdict = bi_summable_transfer(plane, plane.dual_extreme_points, zigzag, [0.0, 0.0], CesaroMatrix(), finite_ideal,
                                   scale, samples=16)
    assert verdict.holds
    assert verdict.hypotheses['row_norm_bound'].holds
    with pytest.raises(InputError):
        bi_summable_transfer(plane, plane.dual_extreme_points, zigzag, [0.0], CesaroMatrix(), finite_ideal, scale)


def test_pre_cauchy_transfer(scale, plane, zigzag, finite_ideal):
    xs = generate_vectors('vector_sparse', scale.N, 2, seed=4)
    assert pre_cauchy_transfer(plane, plane.dual_extreme_points, xs, CesaroMatrix(), finite_ideal, scale,
                               samples=8).holds
    refused = pre_cauchy_transfer(plane, plane.dual_extreme_points, zigzag, CesaroMatrix(), finite_ideal, scale,
                                  samples=8)
    assert refused.inconclusive
    assert 'on_H' in refused.diagnostics['failing']


def _random_symmetric_polytope(d: int, seed: int) -> FiniteDimSpace:
    """±随机点生成的对称多面体，顶点不超过 12 个"""
    rng = np.random.default_rng(seed)
    points = rng.normal(size=(d + int(rng.integers(0, 7 - d)), d))
    return FiniteDimSpace.polytope(np.vstack([points, -points]), name=f'random^{d}')


@pytest.mark.parametrize('d', [2, 3, 4])
@pytest.mark.parametrize('kind', ['max', 'l1', 'random'])
def test_simons_extreme_points_dominate_dual_ball(scale, finite_ideal, d, kind):
    """H 取全部对偶极点时，对偶球上 10^4 个抽样点都不超过 sup_H"""
    if kind == 'max':
        space = FiniteDimSpace.max_norm(d)
    elif kind == 'l1':
        space = FiniteDimSpace.pnorm(1, d)
    else:
        space = _random_symmetric_polytope(d, seed=d)
        assert len(space.vertices) <= 12
    xs = generate_vectors('vector_alternating', scale.N, d)
    result = simons_sup_check(space, space.dual_extreme_points, xs, CesaroMatrix(), finite_ideal, scale,
                              ball_samples=10_000)
    assert result.sup_H >= result.sup_ball - 1e-6
    assert result.verdict.holds
    assert result.samples_evaluated + result.samples_pruned == 10_000
