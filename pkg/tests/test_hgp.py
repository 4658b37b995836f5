import numpy as np
import pytest

from barriers_lab import f2
from barriers_lab.classical import ClassicalCode, distance, random_code, repetition_code
from barriers_lab.css import quantum_distance
from barriers_lab.hgp import (
    hgp2,
    hgp3,
    hgp4,
    predict_params3,
    predict_params4,
    product_complex,
)
from barriers_lab.chain import homology_rank, validate

import oracles

K = f2.kron


def eye(n):
    return np.eye(n, dtype=np.uint8)


def blockwise_3d(a, b, c):
    """Boundary maps of the three-fold product written out block by block."""
    da, db, dc = a.H, b.H, c.H
    na, nb, nc, ra, rb, rc = a.n, b.n, c.n, a.m, b.m, c.m
    z = np.zeros
    d0 = np.vstack([K(da, eye(nb), eye(nc)), K(eye(na), db, eye(nc)), K(eye(na), eye(nb), dc)])
    d1 = np.block([
        [K(eye(ra), db, eye(nc)), K(da, eye(rb), eye(nc)), z((ra * rb * nc, na * nb * rc), np.uint8)],
        [K(eye(ra), eye(nb), dc), z((ra * nb * rc, na * rb * nc), np.uint8), K(da, eye(nb), eye(rc))],
        [z((na * rb * rc, ra * nb * nc), np.uint8), K(eye(na), eye(rb), dc), K(eye(na), db, eye(rc))],
    ])
    d2 = np.hstack([K(eye(ra), eye(rb), dc), K(eye(ra), db, eye(rc)), K(da, eye(rb), eye(rc))])
    return d0, d1, d2


def blockwise_4d(a, b, c, d):
    da, db, dc, dd = a.H, b.H, c.H, d.H
    na, nb, nc, nd, ra, rb, rc, rd = a.n, b.n, c.n, d.n, a.m, b.m, c.m, d.m
    I = eye

    def shape(*dims):
        return int(np.prod(dims))

    col1 = [(ra, nb, nc, nd), (na, rb, nc, nd), (na, nb, rc, nd), (na, nb, nc, rd)]
    col2 = [(ra, rb, nc, nd), (ra, nb, rc, nd), (ra, nb, nc, rd), (na, rb, rc, nd), (na, rb, nc, rd), (na, nb, rc, rd)]
    col3 = [(ra, rb, rc, nd), (ra, rb, nc, rd), (ra, nb, rc, rd), (na, rb, rc, rd)]

    def grid(rows, cols, entries):
        return np.block([[entries.get((i, j), np.zeros((shape(*r), shape(*c)), np.uint8))
                          for j, c in enumerate(cols)] for i, r in enumerate(rows)])

    d0 = np.vstack([K(da, I(nb), I(nc), I(nd)), K(I(na), db, I(nc), I(nd)),
                    K(I(na), I(nb), dc, I(nd)), K(I(na), I(nb), I(nc), dd)])
    d1 = grid(col2, col1, {
        (0, 0): K(I(ra), db, I(nc), I(nd)), (0, 1): K(da, I(rb), I(nc), I(nd)),
        (1, 0): K(I(ra), I(nb), dc, I(nd)), (1, 2): K(da, I(nb), I(rc), I(nd)),
        (2, 0): K(I(ra), I(nb), I(nc), dd), (2, 3): K(da, I(nb), I(nc), I(rd)),
        (3, 1): K(I(na), I(rb), dc, I(nd)), (3, 2): K(I(na), db, I(rc), I(nd)),
        (4, 1): K(I(na), I(rb), I(nc), dd), (4, 3): K(I(na), db, I(nc), I(rd)),
        (5, 2): K(I(na), I(nb), I(rc), dd), (5, 3): K(I(na), I(nb), dc, I(rd)),
    })
    # column order: CCVV, CVCV, CVVC, VCCV, VCVC, VVCC
    d2 = grid(col3, col2, {
        (0, 0): K(I(ra), I(rb), dc, I(nd)), (0, 1): K(I(ra), db, I(rc), I(nd)), (0, 3): K(da, I(rb), I(rc), I(nd)),
        (1, 0): K(I(ra), I(rb), I(nc), dd), (1, 2): K(I(ra), db, I(nc), I(rd)), (1, 4): K(da, I(rb), I(nc), I(rd)),
        (2, 1): K(I(ra), I(nb), I(rc), dd), (2, 2): K(I(ra), I(nb), dc, I(rd)), (2, 5): K(da, I(nb), I(rc), I(rd)),
        (3, 3): K(I(na), I(rb), I(rc), dd), (3, 4): K(I(na), I(rb), dc, I(rd)), (3, 5): K(I(na), db, I(rc), I(rd)),
    })
    d3 = np.hstack([K(I(ra), I(rb), I(rc), dd), K(I(ra), I(rb), dc, I(rd)),
                    K(I(ra), db, I(rc), I(rd)), K(da, I(rb), I(rc), I(rd))])
    return d0, d1, d2, d3


def odd_factors(rng, count):
    # non-square factors catch any transposed dimension
    shapes = [(2, 3), (3, 2), (1, 3), (2, 2)]
    return [ClassicalCode(rng.integers(0, 2, shapes[i % 4]).astype(np.uint8)) for i in range(count)]


def test_hgp3_matches_blockwise_matrices():
    rng = np.random.default_rng(1)
    for _ in range(5):
        fs = odd_factors(rng, 3)
        d0, d1, d2 = blockwise_3d(*fs)
        code = hgp3(*fs)
        assert np.array_equal(code.H_Z, d0.T)
        assert np.array_equal(code.H_X, d1)
        assert np.array_equal(code.meta_X, d2)
        assert [b.name for b in code.blocks] == ["C1.V2.V3", "V1.C2.V3", "V1.V2.C3"]


def test_hgp4_matches_blockwise_matrices():
    rng = np.random.default_rng(2)
    for _ in range(3):
        fs = odd_factors(rng, 4)
        d0, d1, d2, d3 = blockwise_4d(*fs)
        code = hgp4(*fs)
        assert np.array_equal(code.meta_Z, d0.T)
        assert np.array_equal(code.H_Z, d1.T)
        assert np.array_equal(code.H_X, d2)
        assert np.array_equal(code.meta_X, d3)
        assert [b.name for b in code.blocks] == [
            "C1.C2.V3.V4", "C1.V2.C3.V4", "C1.V2.V3.C4", "V1.C2.C3.V4", "V1.C2.V3.C4", "V1.V2.C3.C4"]


def test_product_complex_agrees_with_hgp3():
    rng = np.random.default_rng(3)
    fs = odd_factors(rng, 3)
    C, code = product_complex(*fs), hgp3(*fs)
    assert np.array_equal(C.boundary(3), code.H_Z.T)
    assert np.array_equal(C.boundary(2), code.H_X)
    assert np.array_equal(C.boundary(1), code.meta_X)


def test_product_complex_agrees_with_hgp4_up_to_block_order():
    rng = np.random.default_rng(4)
    fs = odd_factors(rng, 4)
    C, code = product_complex(*fs), hgp4(*fs)
    offsets = C.block_offsets(2)
    letters = {0: "C", 1: "V"}
    perm = []
    for b in code.blocks:
        label = tuple(0 if p == "C" else 1 for p in b.pattern)
        start, size = offsets[label]
        assert size == b.size, "".join(letters[x] for x in label)
        perm.extend(range(start, start + size))
    perm = np.array(perm)
    # qubit i of the code is level-2 index perm[i] of the complex; check rows
    # may also be ordered differently, so compare row spaces
    HZ = C.boundary(3)[perm, :].T
    HX = C.boundary(2)[:, perm]
    for ours, theirs in ((code.H_Z, HZ), (code.H_X, HX)):
        assert f2.rank(ours) == f2.rank(theirs) == f2.rank(np.vstack([ours, theirs]))
    assert sorted(map(tuple, HX.tolist())) == sorted(map(tuple, code.H_X.tolist()))


def test_hgp2_examples(code512):
    assert (code512.n, code512.k) == (5, 1)
    assert quantum_distance(code512, "z") == quantum_distance(code512, "x") == 2
    assert quantum_distance(code512, "z") == oracles.css_distance(code512.H_X, code512.H_Z)
    toric = hgp2(repetition_code(3, True), repetition_code(3, True))
    assert (toric.n, toric.k) == (18, 2)


def test_commutation_and_metas_random():
    rng = np.random.default_rng(9)
    for _ in range(20):
        fs = [random_code(int(rng.integers(1, 5)), int(rng.integers(1, 5)), rng) for _ in range(4)]
        for code in (hgp2(*fs[:2]), hgp3(*fs[:3]), hgp4(*fs)):
            assert not f2.matmul(code.H_X, code.H_Z.T).any()
            if code.meta_X is not None:
                assert not f2.matmul(code.meta_X, code.H_X).any()
            if code.meta_Z is not None:
                assert not f2.matmul(code.meta_Z, code.H_Z).any()
        assert validate(product_complex(*fs)).ok


def test_toric3_parameters(toric3):
    pred = predict_params3(*toric3.factors)
    assert (toric3.n, toric3.k) == (24, 3) == (pred.n, pred.k)
    assert quantum_distance(toric3, "z") == pred.d_z == 4
    assert quantum_distance(toric3, "x") == pred.d_x == 2
    a, b, c = toric3.factors
    assert pred.n == a.m * b.n * c.n + a.n * b.m * c.n + a.n * b.n * c.m


def test_toric4_parameters(toric4):
    pred = predict_params4(*toric4.factors)
    assert (toric4.n, toric4.k) == (96, 6) == (pred.n, pred.k)
    assert homology_rank(product_complex(*toric4.factors), 2) == 6
    assert (pred.d_x, pred.d_z) == (4, 4)


@pytest.mark.parametrize("L", [2, 3, 4])
def test_predictions_cyclic(L):
    reps = [repetition_code(L, True)] * 4
    p3 = predict_params3(*reps[:3])
    assert (p3.n, p3.k, p3.d_x, p3.d_z) == (3 * L ** 3, 3, L, L * L)
    p4 = predict_params4(*reps)
    assert (p4.n, p4.k, p4.d_x, p4.d_z) == (6 * L ** 4, 6, L * L, L * L)


def test_prediction_with_trivial_factor():
    a = b = repetition_code(3, True)
    c = repetition_code(3)  # k = 1, k^T = 0
    p = predict_params3(a, b, c)
    assert p.k == a.k_transpose * b.k * c.k + a.k * b.k_transpose * c.k + a.k * b.k * c.k_transpose == 2
    assert hgp3(a, b, c).k == p.k


def test_prediction_matches_rank_random():
    rng = np.random.default_rng(12)
    for _ in range(10):
        fs = [random_code(int(rng.integers(1, 4)), int(rng.integers(1, 4)), rng) for _ in range(4)]
        assert predict_params3(*fs[:3]).k == hgp3(*fs[:3]).k
        assert predict_params4(*fs).k == hgp4(*fs).k


def test_prediction_distance_small_random():
    rng = np.random.default_rng(13)
    checked = 0
    while checked < 5:
        fs = [random_code(int(rng.integers(1, 3)), int(rng.integers(2, 4)), rng) for _ in range(3)]
        code = hgp3(*fs)
        pred = predict_params3(*fs)
        if code.k == 0 or code.n > 20:
            continue
        assert quantum_distance(code, "z") == pred.d_z
        assert quantum_distance(code, "x") == pred.d_x
        checked += 1


def test_factor_distance_used_in_prediction():
    rep = repetition_code(3)
    assert distance(rep) == 3
