"""
矩阵、矩阵族与正则性条件测试
"""
import numpy as np
import pytest

from idealsum.core import MatrixFactory, MatrixFamily, get_matrix
from idealsum.core.matrices import CesaroMatrix, CombinedMatrix, IdentityMatrix, SparseMatrix
from idealsum.core.matrix_engine import (
    build_shift_family, check_condition_plus, check_consistency_conditions, check_toeplitz_regularity,
    derived_ideal, families_agree, family_row_norm_bound, family_row_sums_to_one, transform,
)
from idealsum.core.sequence import SequencePrefix
from idealsum.errors import CapabilityError, InputError, RefusedError


def test_cesaro_rows_and_apply():
    A = CesaroMatrix()
    ks, vals = A.row(4)
    assert ks.tolist() == [1, 2, 3, 4]
    assert np.allclose(vals, 0.25)
    assert np.allclose(A.apply(np.array([1.0, 3.0, 5.0]), 3), [1.0, 2.0, 3.0])
    assert np.allclose(A.row_sums(5), 1.0)
    block = A.block(3, 3).toarray()
    assert np.allclose(block, [[1, 0, 0], [0.5, 0.5, 0], [1 / 3, 1 / 3, 1 / 3]])


def test_transform_single_row(squares):
    value, tail = transform(squares, CesaroMatrix(), 100)
    assert value == pytest.approx(0.1)
    assert tail == 0.0
    with pytest.raises(InputError):
        transform(squares, CesaroMatrix(), 0)


def test_geometric_tail_needs_bound():
    G = get_matrix('geometric', ratio=0.5)
    bounded = SequencePrefix(np.ones(20))
    value, tail = transform(bounded, G, 3)
    assert value == pytest.approx(1.0 - 0.5 ** 20)
    assert tail == pytest.approx(0.5 ** 20)
    unbounded = SequencePrefix(np.ones(20), bounded=False)
    with pytest.raises(CapabilityError):
        transform(unbounded, G, 3)


def test_toeplitz_regular_matrices(scale):
    for A in (CesaroMatrix(), IdentityMatrix()):
        report = check_toeplitz_regularity(A, scale)
        assert report.holds, report.failing
        assert report.combined(scale).holds


def test_toeplitz_failures(scale):
    doubled = MatrixFactory.create_matrix('scaled', base={'kind': 'cesaro'}, factor=2.0)
    assert check_toeplitz_regularity(doubled, scale).failing == ['(ii)']
    geometric = MatrixFactory.create_matrix('geometric', ratio=0.5)
    report = check_toeplitz_regularity(geometric, scale)
    assert '(iii)' in report.failing
    assert report.row_sums.holds


def test_condition_plus(scale, finite_ideal):
    F = MatrixFamily.single(CesaroMatrix())
    assert check_condition_plus(F, scale=scale).holds
    assert F.plus_index == 0
    assert derived_ideal(F, finite_ideal, scale).family is F


def test_signed_family_refused(scale, finite_ideal):
    signed = MatrixFamily.single(CombinedMatrix.difference(CesaroMatrix(), IdentityMatrix()))
    assert not signed.nonnegative
    with pytest.raises(RefusedError):
        derived_ideal(signed, finite_ideal, scale)


def test_shift_family(scale, finite_ideal):
    F = MatrixFactory.create_family({'kind': 'shift_of', 'base': {'kind': 'cesaro'}}, i_max=3)
    assert len(F) == 4
    assert F.indices == (0, 1, 2, 3)
    assert F.eval_length(scale.N) == scale.N - 3
    ks, _ = F.member(2).row(3)
    assert ks.tolist() == [3, 4, 5]
    assert family_row_norm_bound(F, finite_ideal, scale).estimate == pytest.approx(1.0)
    assert family_row_sums_to_one(F, finite_ideal, scale).holds
    with pytest.raises(InputError):
        F.member(9)
    direct = build_shift_family(CesaroMatrix(), 3)
    assert direct.indices == F.indices
    assert direct.member(2).row(3)[0].tolist() == [3, 4, 5]
    with pytest.raises(InputError):
        build_shift_family(CesaroMatrix(), -1)


def test_factory_errors(tmp_path):
    assert 'shift_of' in MatrixFactory.get_available_matrices()
    with pytest.raises(InputError):
        MatrixFactory.create_matrix('nope')
    with pytest.raises(InputError):
        MatrixFactory.create_family({'kind': 'shift_of'})
    with pytest.raises(InputError):
        MatrixFactory.create_family({'base': {'kind': 'cesaro'}})
    with pytest.raises(InputError):
        MatrixFactory.create_matrix('geometric', speed=3)


def test_triangular_csv(tmp_path):
    path = tmp_path / 'half.csv'
    path.write_text('n,k,value\n1,1,1\n2,1,0.5\n2,2,0.5\n', encoding='utf-8')
    A = MatrixFactory.create_matrix('triangular_csv', path=str(path))
    assert isinstance(A, SparseMatrix)
    assert A.lower_triangular
    assert A.entry(2, 1) == pytest.approx(0.5)
    upper = tmp_path / 'upper.csv'
    upper.write_text('1,2,1\n', encoding='utf-8')
    with pytest.raises(InputError):
        MatrixFactory.create_matrix('triangular_csv', path=str(upper))
    broken = tmp_path / 'broken.csv'
    broken.write_text('1,1,1\n2,x,1\n', encoding='utf-8')
    with pytest.raises(InputError, match=':2:'):
        MatrixFactory.create_matrix('triangular_csv', path=str(broken))


def test_families_agree(scale, finite_ideal):
    C = MatrixFamily.single(CesaroMatrix())
    assert families_agree(C, MatrixFamily.single(CesaroMatrix()), finite_ideal, scale).holds
    assert families_agree(C, MatrixFamily.single(IdentityMatrix()), finite_ideal, scale).fails


def test_consistency_conditions(scale, finite_ideal):
    F = MatrixFamily.single(CesaroMatrix())
    sample = np.zeros(scale.N)
    sample[:5] = 1.0
    report = check_consistency_conditions(F, finite_ideal, [sample], scale)
    assert report.holds
    with pytest.raises(InputError):
        check_consistency_conditions(F, finite_ideal, [np.ones(scale.N)], scale)
