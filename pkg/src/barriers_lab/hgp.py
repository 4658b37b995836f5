"""Hypergraph products of classical codes in two, three and four dimensions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import f2
from .chain import ChainComplex, from_parity, tensor
from .classical import ClassicalCode, distance
from .css import Block, CssCode, blocks_from_patterns

PATTERNS_3D = (("C", "V", "V"), ("V", "C", "V"), ("V", "V", "C"))
PATTERNS_4D = (
    ("C", "C", "V", "V"), ("C", "V", "C", "V"), ("C", "V", "V", "C"),
    ("V", "C", "C", "V"), ("V", "C", "V", "C"), ("V", "V", "C", "C"),
)


def _term(factors, choice):
    """Kronecker product picking, per axis, ``H``, an identity on bits or on checks."""
    mats = []
    for f, c in zip(factors, choice):
        if c == "H":
            mats.append(f.H)
        elif c == "V":
            mats.append(f2.identity(f.n))
        else:
            mats.append(f2.identity(f.m))
    return f2.kron(*mats)


def _assemble(factors, rows, cols, entries):
    """Block matrix from a sparse description ``{(row, col): axis choices}``."""
    def size(pattern):
        return int(np.prod([f.m if p == "C" else f.n for p, f in zip(pattern, factors)]))
    row_sizes = [size(p) for p in rows]
    col_sizes = [size(p) for p in cols]
    M = f2.zeros((sum(row_sizes), sum(col_sizes)))
    r_off = np.concatenate([[0], np.cumsum(row_sizes)])
    c_off = np.concatenate([[0], np.cumsum(col_sizes)])
    for (i, j), choice in entries.items():
        M[r_off[i]:r_off[i + 1], c_off[j]:c_off[j + 1]] = _term(factors, choice)
    return M


def _coboundary(factors, rows, cols):
    """Map raising the number of check axes by one, one ``H`` per differing axis."""
    entries = {}
    for j, src in enumerate(cols):
        for i, dst in enumerate(rows):
            diff = [t for t in range(len(src)) if src[t] != dst[t]]
            if len(diff) == 1 and src[diff[0]] == "V":
                entries[(i, j)] = tuple("H" if t == diff[0] else src[t] for t in range(len(src)))
    return _assemble(factors, rows, cols, entries)


def hgp2(a: ClassicalCode, b: ClassicalCode) -> CssCode:
    """Standard hypergraph product.

    ``H_X = (H_a ⊗ I | I ⊗ H_b^T)`` and ``H_Z = (I ⊗ H_b | H_a^T ⊗ I)`` on the
    blocks ``bits_a x bits_b`` then ``checks_a x checks_b``.
    """
    HX = f2.hstack([f2.kron(a.H, f2.identity(b.n)), f2.kron(f2.identity(a.m), b.H.T)])
    HZ = f2.hstack([f2.kron(f2.identity(a.n), b.H), f2.kron(a.H.T, f2.identity(b.m))])
    blocks = (
        Block("V1.V2", ("V", "V"), 0, (a.n, b.n)),
        Block("C1.C2", ("C", "C"), a.n * b.n, (a.m, b.m)),
    )
    return CssCode(HX, HZ, blocks=blocks, factors=(a, b), name=f"hgp2({a.name},{b.name})")


def _levels(dim):
    """Block patterns grouped by number of check axes."""
    by = {}
    for p in itertools.product("CV", repeat=dim):
        by.setdefault(p.count("C"), []).append(p)
    # order within a level: check axes as far left as possible first
    return {c: sorted(v, key=lambda p: [0 if x == "C" else 1 for x in p]) for c, v in by.items()}


def hgp3(a: ClassicalCode, b: ClassicalCode, c: ClassicalCode) -> CssCode:
    """Three-fold hypergraph product with a meta-check on the X syndrome.

    Qubits live on blocks with one check axis.  Z checks sit on the all-bits
    block (``H_Z`` is the transpose of the map into the qubits), X checks on the
    blocks with two check axes, and the meta-check on the all-checks block.
    """
    factors = (a, b, c)
    lv = _levels(3)
    d0 = _coboundary(factors, lv[1], lv[0])
    d1 = _coboundary(factors, lv[2], lv[1])
    d2 = _coboundary(factors, lv[3], lv[2])
    return CssCode(
        d1, d0.T, meta_X=d2,
        blocks=blocks_from_patterns(lv[1], factors),
        factors=factors,
        name=f"hgp3({a.name},{b.name},{c.name})",
    )


def hgp4(a: ClassicalCode, b: ClassicalCode, c: ClassicalCode, d: ClassicalCode) -> CssCode:
    """Four-fold hypergraph product with meta-checks on both syndromes.

    Qubits live on the six blocks with two check axes.
    """
    factors = (a, b, c, d)
    lv = _levels(4)
    d0 = _coboundary(factors, lv[1], lv[0])
    d1 = _coboundary(factors, lv[2], lv[1])
    d2 = _coboundary(factors, lv[3], lv[2])
    d3 = _coboundary(factors, lv[4], lv[3])
    return CssCode(
        d2, d1.T, meta_X=d3, meta_Z=d0.T,
        blocks=blocks_from_patterns(lv[2], factors),
        factors=factors,
        name=f"hgp4({a.name},{b.name},{c.name},{d.name})",
    )


def product_complex(*factors: ClassicalCode) -> ChainComplex:
    """Left-nested tensor product of the two-term complexes of the factors."""
    C = from_parity(factors[0].H)
    for f in factors[1:]:
        C = tensor(C, from_parity(f.H))
    return C


@dataclass(frozen=True)
class HgpPrediction:
    n: int
    k: int
    d_x: int | None
    d_z: int | None

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d_x": self.d_x, "d_z": self.d_z}


def _factor_stats(f: ClassicalCode, cap: int) -> dict:
    def dist(code):
        try:
            return distance(code, cap=cap) if code.k else None
        except f2.InstanceTooLarge:
            return None
    return {"n": f.n, "r": f.m, "k": f.k, "kT": f.k_transpose, "d": dist(f), "dT": dist(f.transpose())}


def predict_params(factors, patterns, cap: int = 1 << 20) -> HgpPrediction:
    """Block-count formulas for ``n``, ``k`` and the two distances.

    Each block contributes ``prod k^T`` over check axes times ``prod k`` over
    bit axes to ``k``.  A Z logical of that block has weight ``prod d`` over
    the bit axes and an X logical ``prod d^T`` over the check axes; distances
    are minima over blocks that carry logicals.
    """
    stats = [_factor_stats(f, cap) for f in factors]
    n = k = 0
    dz, dx = [], []
    for pat in patterns:
        n += int(np.prod([s["r"] if p == "C" else s["n"] for p, s in zip(pat, stats)]))
        count = int(np.prod([s["kT"] if p == "C" else s["k"] for p, s in zip(pat, stats)]))
        k += count
        if count == 0:
            continue
        dz.append(_product_or_none(s["d"] for p, s in zip(pat, stats) if p == "V"))
        dx.append(_product_or_none(s["dT"] for p, s in zip(pat, stats) if p == "C"))
    return HgpPrediction(n, k, _min_or_none(dx), _min_or_none(dz))


def _product_or_none(values):
    out = 1
    for v in values:
        if v is None:
            return None
        out *= v
    return out


def _min_or_none(values):
    values = list(values)
    if not values or any(v is None for v in values):
        return None
    return min(values)


def predict_params3(a, b, c, cap: int = 1 << 20) -> HgpPrediction:
    return predict_params((a, b, c), PATTERNS_3D, cap)


def predict_params4(a, b, c, d, cap: int = 1 << 20) -> HgpPrediction:
    return predict_params((a, b, c, d), PATTERNS_4D, cap)
