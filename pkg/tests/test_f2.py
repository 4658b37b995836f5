import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from barriers_lab import f2

import oracles


def bit_matrices(max_rows=5, max_cols=6):
    shape = st.tuples(st.integers(0, max_rows), st.integers(1, max_cols))
    return shape.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


@pytest.mark.parametrize("A, v, expected", [
    ([[1, 1], [0, 1]], [1, 1], [0, 1]),
    (np.eye(3, dtype=np.uint8), [1, 0, 1], [1, 0, 1]),
    ([[1, 1, 0], [0, 1, 1]], [1, 1, 1], [0, 0]),
])
def test_mat_vec(A, v, expected):
    assert f2.mat_vec(A, v).tolist() == expected


def test_matmul_shape_error_names_shapes():
    with pytest.raises(ValueError, match=r"\(2, 3\).*\(2, 2\)"):
        f2.matmul(np.ones((2, 3)), np.ones((2, 2)))


def test_as_bits_rejects_non_binary():
    with pytest.raises(ValueError):
        f2.as_bits([[0, 2]], 2)


@pytest.mark.parametrize("A, r", [([[1, 1], [1, 1]], 1), (np.eye(4), 4), (np.zeros((3, 5)), 0)])
def test_rank(A, r):
    assert f2.rank(A) == r


def test_kernel_examples():
    assert f2.kernel_basis([[1, 1, 0], [0, 1, 1]]).tolist() == [[1, 1, 1]]
    assert f2.kernel_basis(np.eye(3)).shape == (0, 3)
    assert f2.kernel_basis([[1, 1], [1, 1]]).tolist() == [[1, 1]]


def test_solve_examples():
    A = np.array([[1, 1, 0], [0, 1, 1]])
    x = f2.solve(A, [1, 0])
    assert f2.mat_vec(A, x).tolist() == [1, 0]
    assert f2.solve([[1, 1], [1, 1]], [1, 0]) is None
    assert f2.solve(np.eye(2), [0, 1]).tolist() == [0, 1]


def test_kron_examples():
    assert f2.kron(np.eye(2), [[1, 1]]).tolist() == [[1, 1, 0, 0], [0, 0, 1, 1]]
    B = np.array([[1, 0, 1], [0, 1, 1]])
    assert f2.kron([[1]], B).tolist() == B.tolist()
    assert f2.kron([[1, 1]], np.eye(2)).tolist() == [[1, 0, 1, 0], [0, 1, 0, 1]]


def test_reshape3_unit_vector():
    dims = (2, 3, 2)
    v = f2.kron_vec([0, 1], [0, 0, 1], [1, 0])
    T = f2.reshape3(v, dims)
    assert T.sum() == 1 and T[1, 2, 0] == 1
    assert f2.flatten3(T).tolist() == v.tolist()


def test_mode_product_identity_and_kron(rng):
    dims = (2, 3, 2)
    v = rng.integers(0, 2, 12).astype(np.uint8)
    T = f2.reshape3(v, dims)
    eyes = [np.eye(d, dtype=np.uint8) for d in dims]
    assert np.array_equal(f2.mode_product(*eyes, T), T)
    A, B, C = (rng.integers(0, 2, (r, d)).astype(np.uint8) for r, d in zip((3, 2, 4), dims))
    expected = f2.mat_vec(f2.kron(A, B, C), v)
    assert np.array_equal(f2.flatten3(f2.mode_product(A, B, C, T)), expected)


@given(bit_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_span_size(A):
    assert f2.rank(A) == oracles.rank(A)


@given(bit_matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_is_full_nullspace(A):
    K = f2.kernel_basis(A)
    n = A.shape[1]
    assert not f2.matmul(A, K.T).any()
    assert K.shape[0] == n - f2.rank(A)
    assert f2.rank(K) == K.shape[0]
    assert len(oracles.kernel(A)) == 2 ** K.shape[0]


@given(bit_matrices(), st.data())
@settings(max_examples=60, deadline=None)
def test_solve_consistent(A, data):
    b = np.array(data.draw(st.lists(st.integers(0, 1), min_size=A.shape[0], max_size=A.shape[0])), dtype=np.uint8)
    x = f2.solve(A, b)
    reachable = any(np.array_equal(f2.mat_vec(A, y), b) for y in oracles.all_vectors(A.shape[1]))
    assert (x is not None) == reachable
    if x is not None:
        assert np.array_equal(f2.mat_vec(A, x), b)


@given(bit_matrices(4, 5), bit_matrices(3, 4))
@settings(max_examples=40, deadline=None)
def test_kron_rank_multiplies(A, B):
    assert f2.rank(f2.kron(A, B)) == f2.rank(A) * f2.rank(B)


@given(bit_matrices(4, 7), bit_matrices(3, 7))
@settings(max_examples=40, deadline=None)
def test_min_weight_in_span_matches_enumeration(sub, extra):
    n = sub.shape[1]
    extra = extra[:, :n] if extra.shape[1] >= n else np.zeros((0, n), np.uint8)
    reps = f2.complement_basis(f2.row_basis(sub), extra)
    if reps.shape[0] == 0:
        return
    got = f2.min_weight_in_span(f2.row_basis(sub), reps, n)
    S = oracles.span(sub, n)
    full = oracles.span(np.vstack([sub, reps]), n)
    assert got == min(sum(v) for v in full if v not in S)


def test_coset_minimum_with_offset():
    sub = np.array([[1, 1, 1, 0], [0, 0, 1, 1]], dtype=np.uint8)
    offset = np.array([1, 1, 0, 1], dtype=np.uint8)
    expected = min(sum((np.array(v) + offset) % 2) for v in oracles.span(sub, 4))
    assert f2.min_weight_in_span(sub, np.zeros((0, 4), np.uint8), 4, offset=offset) == expected


def test_min_weight_cap():
    with pytest.raises(f2.InstanceTooLarge):
        f2.min_weight_in_span(np.zeros((0, 30)), np.eye(30), 30, cap=1 << 10)


@given(st.integers(1, 130), st.data())
@settings(max_examples=30, deadline=None)
def test_pack_roundtrip(n, data):
    rows = data.draw(st.integers(0, 4))
    M = np.array(data.draw(st.lists(st.integers(0, 1), min_size=rows * n, max_size=rows * n)),
                 dtype=np.uint8).reshape(rows, n)
    P = f2.pack_rows(M)
    assert np.array_equal(f2.unpack_rows(P, n), M)
    assert f2.popcount_rows(P).tolist() == M.sum(axis=1).tolist()


def test_int_bits_roundtrip():
    v = np.array([1, 0, 1, 1, 0], dtype=np.uint8)
    assert f2.int_of_bits(v) == 0b01101
    assert f2.bits_of_int(0b01101, 5).tolist() == v.tolist()


def test_echelon_basis():
    eb = f2.EchelonBasis(3)
    assert eb.add([1, 1, 0]) and eb.add([0, 1, 1])
    assert not eb.add([1, 0, 1])
    assert eb.contains([1, 0, 1]) and len(eb) == 2
