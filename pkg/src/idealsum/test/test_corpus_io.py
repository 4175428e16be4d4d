"""
语料生成与序列文件读写测试
"""
import numpy as np
import pytest

from idealsum.core import (
    available_corpora, generate, generate_vectors, read_sequence, read_vectors, sequence_text, write_atomic,
    write_sequence,
)
from idealsum.core.sequence import IndexSet, SequencePrefix
from idealsum.core.sequence_io import format_number
from idealsum.errors import InputError


def test_squares_prefix():
    s = generate('squares', 10)
    assert s.values.tolist() == [1, 0, 0, 1, 0, 0, 0, 0, 1, 0]
    assert s.metadata['corpus'] == 'squares'
    assert 'limit' in s.metadata


def test_squares_large_n_exact():
    s = generate('squares', 1_000_000)
    assert int(s.values.sum()) == 1000
    assert s[999_999] == 0.0
    assert s[1_000_000] == 1.0


def test_periodic_and_alternating():
    assert generate('periodic2', 4).values.tolist() == [1, 0, 1, 0]
    assert generate('alternating', 4).values.tolist() == [-1, 1, -1, 1]


def test_density_half_blocks():
    s = generate('density_half', 20)
    # ⌊√n⌋ 为 1 (n=1..3)、2 (n=4..8)、3 (n=9..15)、4 (n=16..20)
    expected = [0] * 3 + [1] * 5 + [0] * 7 + [1] * 5
    assert s.values.tolist() == expected


def test_seeded_corpus_is_reproducible():
    a = generate('random_bounded', 50, seed=7)
    b = generate('random_bounded', 50, seed=7)
    c = generate('random_bounded', 50, seed=8)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)
    assert a.metadata['seed'] == 7
    assert np.all(np.abs(a.values) <= 1.0)


def test_unknown_corpus():
    with pytest.raises(InputError):
        generate('nope', 10)
    with pytest.raises(InputError):
        generate('squares', 0)
    with pytest.raises(InputError):
        generate_vectors('nope', 10, 2)
    assert 'tauberian_violator' in available_corpora()


def test_vector_corpora():
    xs = generate_vectors('vector_alternating', 6, 3)
    assert xs.dim == 3
    assert np.allclose(xs.vectors[1], -xs.vectors[0])
    assert xs.vectors[1, 0] == pytest.approx(0.3)
    sparse = generate_vectors('vector_sparse', 10, 2, seed=1)
    off_squares = [1, 2, 4, 5, 6, 7, 9]
    assert np.allclose(sparse.vectors[off_squares], [0.3, -0.2])


def test_sequence_prefix_validation():
    with pytest.raises(InputError):
        SequencePrefix(np.array([]))
    with pytest.raises(InputError):
        SequencePrefix(np.array([1.0, np.nan]))
    with pytest.raises(InputError):
        SequencePrefix(np.zeros((2, 2)))
    s = SequencePrefix(np.array([3.0, -4.0, 1.0]))
    assert s.bound == 4.0
    assert s[2] == -4.0
    assert s.window(2).N == 2
    assert s.is_real


def test_index_set_from_indices():
    K = IndexSet.from_indices([1, 4, 50], N=10)
    assert len(K) == 2
    assert 4 in K
    assert 50 not in K
    assert K.indices().tolist() == [1, 4]
    with pytest.raises(InputError):
        IndexSet.from_indices([0], N=5)


def test_read_sequence_skips_comments(tmp_path):
    path = tmp_path / 'seq.txt'
    path.write_text('# header\n1\n\n2.5\n1+2j\n', encoding='utf-8')
    s = read_sequence(path)
    assert s.name == 'seq'
    assert s.N == 3
    assert s.values[2] == complex(1, 2)
    assert not s.is_real


def test_read_sequence_reports_line(tmp_path):
    path = tmp_path / 'bad.txt'
    path.write_text('1\n2\nabc\n', encoding='utf-8')
    with pytest.raises(InputError, match=':3:'):
        read_sequence(path)
    path.write_text('1\nnan\n', encoding='utf-8')
    with pytest.raises(InputError, match=':2:'):
        read_sequence(path)
    with pytest.raises(InputError):
        read_sequence(tmp_path / 'missing.txt')
    empty = tmp_path / 'empty.txt'
    empty.write_text('# nothing\n', encoding='utf-8')
    with pytest.raises(InputError):
        read_sequence(empty)


def test_read_vectors(tmp_path):
    path = tmp_path / 'xs.txt'
    path.write_text('1,2\n3,4\n', encoding='utf-8')
    xs = read_vectors(path)
    assert xs.vectors.shape == (2, 2)
    path.write_text('1,2\n3,4,5\n', encoding='utf-8')
    with pytest.raises(InputError, match=':2:'):
        read_vectors(path)


def test_format_number():
    assert format_number(3.0) == '3'
    assert format_number(0.5) == '0.5'
    assert format_number(-2) == '-2'
    assert format_number(np.inf) == 'inf'
    assert format_number(complex(1, 2)) == '(1+2j)'


def test_write_and_read_back(tmp_path):
    s = generate('tauberian_ok', 200, seed=3)
    path = tmp_path / 'nested' / 'ok.txt'
    write_sequence(s, path)
    back = read_sequence(path)
    assert np.array_equal(back.values, s.values)
    assert not list(path.parent.glob('.ok.txt.*'))


def test_sequence_text_vectors():
    xs = generate_vectors('vector_alternating', 2, 2)
    lines = sequence_text(xs).splitlines()
    assert len(lines) == 2
    assert [float(v) for v in lines[1].split(',')] == pytest.approx([0.3, -0.2])


def test_write_atomic_replaces(tmp_path):
    path = tmp_path / 'out.json'
    write_atomic(path, 'first')
    write_atomic(path, 'second')
    assert path.read_text(encoding='utf-8') == 'second'
