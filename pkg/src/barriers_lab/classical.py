"""Classical binary codes given by parity-check matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

import numpy as np

from . import f2


@dataclass(frozen=True, eq=False)
class ClassicalCode:
    """Code ``ker(H)`` for an ``m x n`` parity-check matrix ``H``."""

    H: np.ndarray
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        H = f2.as_bits(self.H, 2, "parity-check matrix").copy()
        H.flags.writeable = False
        object.__setattr__(self, "H", H)

    @property
    def m(self) -> int:
        return self.H.shape[0]

    @property
    def n(self) -> int:
        return self.H.shape[1]

    @cached_property
    def rank(self) -> int:
        return f2.rank(self.H)

    @property
    def k(self) -> int:
        return self.n - self.rank

    @property
    def k_transpose(self) -> int:
        return self.m - self.rank

    @cached_property
    def codewords_basis(self) -> np.ndarray:
        return f2.kernel_basis(self.H)

    def transpose(self) -> ClassicalCode:
        return ClassicalCode(self.H.T, name=f"{self.name}^T" if self.name else "")

    def syndrome(self, x) -> np.ndarray:
        return f2.mat_vec(self.H, f2.as_bits(x, 1, "error"))

    def energy(self, x) -> int:
        return f2.weight(self.syndrome(x))

    def is_codeword(self, x) -> bool:
        return not self.syndrome(x).any()

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"ClassicalCode{label}(m={self.m}, n={self.n}, k={self.k})"


def from_parity(H, name: str = "") -> ClassicalCode:
    H = f2.as_bits(H, 2, "parity-check matrix")
    if H.shape[1] == 0:
        raise ValueError("parity-check matrix has no columns")
    return ClassicalCode(H, name=name)


def transpose_code(code: ClassicalCode) -> ClassicalCode:
    return code.transpose()


def syndrome_energy(code: ClassicalCode, x) -> int:
    """Number of unsatisfied checks for the bit string ``x``."""
    return code.energy(x)


def distance(code: ClassicalCode, cap: int = 1 << 24) -> int:
    """Minimum weight of a nonzero codeword, by exhaustive enumeration."""
    if code.k == 0:
        raise ValueError(f"{code!r} has no nonzero codewords")
    return f2.min_weight_in_span(np.zeros((0, code.n)), code.codewords_basis, code.n, cap=cap)


def repetition_code(L: int, periodic: bool = False) -> ClassicalCode:
    """Length-``L`` repetition code with nearest-neighbour checks.

    The open code has ``L - 1`` checks ``x_i + x_{i+1}``; the periodic one adds
    the wrap-around check, giving a square ``L x L`` matrix.
    """
    if L < 2:
        raise ValueError(f"repetition code needs length at least 2, got {L}")
    rows = L if periodic else L - 1
    H = np.zeros((rows, L), dtype=np.uint8)
    for i in range(rows):
        H[i, i] = 1
        H[i, (i + 1) % L] = 1
    kind = "cyclic" if periodic else "open"
    return ClassicalCode(H, name=f"rep-{kind}-{L}")


def random_code(m: int, n: int, rng: np.random.Generator, density: float = 0.5) -> ClassicalCode:
    H = (rng.random((m, n)) < density).astype(np.uint8)
    return ClassicalCode(H, name=f"random-{m}x{n}")


def biregular_code(n: int, dv: int, dc: int, rng: np.random.Generator, tries: int = 1000) -> ClassicalCode:
    """Random ``(dv, dc)``-biregular Tanner graph without repeated edges.

    Bits have degree ``dv`` and checks degree ``dc``; ``n * dv`` must be a
    multiple of ``dc``.
    """
    if (n * dv) % dc:
        raise ValueError(f"n*dv = {n * dv} is not divisible by dc = {dc}")
    m = n * dv // dc
    for _ in range(tries):
        sockets = np.repeat(np.arange(m), dc)
        rng.shuffle(sockets)
        H = np.zeros((m, n), dtype=np.uint8)
        ok = True
        for bit in range(n):
            checks = sockets[bit * dv:(bit + 1) * dv]
            if len(set(checks.tolist())) < dv:
                ok = False
                break
            H[checks, bit] = 1
        if ok:
            return ClassicalCode(H, name=f"biregular-{dv},{dc}-{n}")
    raise RuntimeError(f"no simple ({dv},{dc})-biregular graph found in {tries} tries")


@dataclass(frozen=True)
class ExpansionRow:
    size: int
    min_neighbors: int
    min_unique_neighbors: int

    def as_dict(self) -> dict:
        return {"size": self.size, "min_neighbors": self.min_neighbors,
                "min_unique_neighbors": self.min_unique_neighbors}


def expansion_scan(code: ClassicalCode, max_size: int, cap: int = 1 << 22) -> list[ExpansionRow]:
    """Minimum neighbourhood and unique-neighbourhood sizes over bit subsets.

    For every subset ``S`` of bits with ``|S| <= max_size``, ``N(S)`` is the set
    of checks touching ``S`` and ``U(S)`` those touching it exactly once.
    """
    n = code.n
    total = sum(comb(n, s) for s in range(1, max_size + 1))
    if total > cap:
        raise f2.InstanceTooLarge(f"{total} subsets exceed the cap of {cap}")
    cols = code.H.T.astype(np.int16)
    rows = []
    for s in range(1, min(max_size, n) + 1):
        best_n = best_u = code.m + 1
        combos = itertools.combinations(range(n), s)
        while True:
            batch = np.array(list(itertools.islice(combos, 1 << 16)), dtype=np.int64)
            if batch.size == 0:
                break
            counts = cols[batch].sum(axis=1)
            best_n = min(best_n, int((counts > 0).sum(axis=1).min()))
            best_u = min(best_u, int((counts == 1).sum(axis=1).min()))
        rows.append(ExpansionRow(s, best_n, best_u))
    return rows


def composite_repetition(L: int) -> ClassicalCode:
    """Grid repetition code bridged to a 1D chain of the same size.

    Bits ``0 .. L*L-1`` form an ``L x L`` grid (bit ``i*L + j``) with checks on
    horizontal and vertical nearest-neighbour pairs.  Bits ``L*L .. 2*L*L-1``
    form an open chain.  One bridge check joins the grid corner ``(L-1, 0)`` to
    the first chain bit.  Every bit is forced equal, so the only nonzero
    codeword is all-ones.

    Flipping the whole chain violates only the bridge check, while its weight
    ``L*L`` is at most half the length: a large reduced weight with syndrome
    weight one.
    """
    if L < 2:
        raise ValueError("grid side must be at least 2")
    g = L * L
    checks: list[tuple[int, int]] = []
    for i in range(L):
        for j in range(L - 1):
            checks.append((i * L + j, i * L + j + 1))
    for i in range(L - 1):
        for j in range(L):
            checks.append((i * L + j, (i + 1) * L + j))
    checks.append(((L - 1) * L, g))
    for t in range(g - 1):
        checks.append((g + t, g + t + 1))
    H = np.zeros((len(checks), 2 * g), dtype=np.uint8)
    for r, (a, b) in enumerate(checks):
        H[r, a] = H[r, b] = 1
    return ClassicalCode(H, name=f"composite-{L}", meta={"grid_bits": g, "chain_bits": g})
