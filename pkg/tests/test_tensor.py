import numpy as np
import pytest

from barriers_lab.barrier import PauliPath, barrier_exact
from barriers_lab.classical import distance, from_parity, repetition_code
from barriers_lab.tensor import bound_ledger, build, product_logical, strip_path

import oracles

cyc = lambda L: repetition_code(L, True)  # noqa: E731
opn = repetition_code


def test_build_params():
    tp = build(cyc(2), cyc(2))
    assert (tp.code.n, tp.code.k, distance(tp.code)) == (4, 1, 4)
    tp = build(cyc(3), cyc(3))
    assert (tp.code.n, tp.code.k, distance(tp.code)) == (9, 1, 9)
    assert build(opn(2), from_parity(np.eye(2))).code.k == 0


def test_tensor_distance_by_enumeration():
    tp = build(cyc(2), opn(3))
    assert distance(tp.code) == oracles.min_weight(oracles.kernel(tp.code.H))


def test_product_logical():
    tp = build(cyc(3), cyc(3))
    assert product_logical(tp, np.ones(3), np.ones(3)).tolist() == [1] * 9
    tp = build(cyc(2), cyc(2))
    assert product_logical(tp, [1, 1], [1, 1]).tolist() == [1, 1, 1, 1]
    with pytest.raises(ValueError):
        product_logical(tp, [1, 0], [1, 1])


def test_product_logical_weight_multiplies():
    a = from_parity(np.zeros((1, 3), dtype=np.uint8))
    b = from_parity(np.zeros((1, 4), dtype=np.uint8))
    tp = build(a, b)
    assert product_logical(tp, np.ones(3), np.ones(4)).sum() == 12


def test_strip_path_cyclic3():
    a = b = cyc(3)
    tp = build(a, b)
    pa = PauliPath.from_flips(3, [0, 1, 2])
    pb = PauliPath.from_flips(3, [0, 1, 2])
    p = strip_path(tp, pa, pb)
    energies = [oracles.energy(tp.code.H, s) for s in p.steps]
    assert len(energies) == 10
    assert max(energies) == p.max_energy(tp.code.H) <= 3 * 2 + 2


def test_strip_path_cyclic2_steps():
    tp = build(cyc(2), cyc(2))
    p = strip_path(tp, PauliPath.from_flips(2, [0, 1]), PauliPath.from_flips(2, [0, 1]))
    assert len(p.flips) == 4
    assert p.endpoint.tolist() == [1, 1, 1, 1]


def test_strip_path_column_orientation():
    tp = build(cyc(3), opn(2))
    p = strip_path(tp, PauliPath.from_flips(3, [0, 1, 2]), PauliPath.from_flips(2, [0, 1]), "column")
    assert p.endpoint.tolist() == [1] * 6


def test_strip_path_rejects_non_codeword():
    tp = build(cyc(2), cyc(2))
    with pytest.raises(ValueError):
        strip_path(tp, PauliPath.from_flips(2, [0]), PauliPath.from_flips(2, [0, 1]))


@pytest.mark.parametrize("a, b, expected", [
    (cyc(3), cyc(3), {"lower_distance": 3, "conjecture": 6, "upper_strip": 8}),
    (cyc(2), cyc(2), {"lower_distance": 2, "conjecture": 4, "upper_strip": 6}),
    (opn(3), cyc(3), {"conjecture": 3}),
])
def test_ledger_formulas(a, b, expected):
    led = bound_ledger(a, b).as_dict()
    for key, value in expected.items():
        assert led[key] == value


def test_ledger_measured_cyclic2():
    led = bound_ledger(cyc(2), cyc(2), with_measurement=True)
    V = led.measured.value
    assert V == oracles.barrier(build(cyc(2), cyc(2)).code.H, 4, lambda s: s == 15) == 4
    assert led.lower_energy <= V <= led.upper_strip
    assert not led.warnings


def test_ledger_all_small_pairs():
    factors = [cyc(2), cyc(3), opn(2), opn(3)]
    for a in factors:
        for b in factors:
            if a.n * b.n > 16:
                continue
            led = bound_ledger(a, b, with_measurement=True)
            V = led.measured.value
            assert min(led.E_a, led.E_b) <= V
            assert min(led.d_a, led.d_b) <= V
            assert V <= min(led.d_b * led.E_a + led.E_b, led.d_a * led.E_b + led.E_a)
            assert V == barrier_exact(build(a, b).code.H, a.n * b.n, np.ones(a.n * b.n, dtype=np.uint8)).value


@pytest.mark.parametrize("L, expected", [(3, 8), (4, 10)])
def test_two_dim_repetition_scaling(L, expected):
    led = bound_ledger(cyc(L), cyc(L), with_measurement=True)
    assert led.measured.value == expected >= L
    n = L * L
    assert expected == oracles.barrier(build(cyc(L), cyc(L)).code.H, n, lambda s: s == (1 << n) - 1)
