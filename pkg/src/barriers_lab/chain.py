"""Chain complexes over GF(2), their tensor products and homology."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import f2

Label = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """``C_L -> ... -> C_1 -> C_0`` with ``maps[j - 1]`` the boundary ``C_j -> C_{j-1}``.

    ``summands[j]`` lists ``(label, size)`` pairs describing how level ``j`` is a
    direct sum of factor spaces; for a tensor product the label records the
    level taken from each factor.
    """

    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...]
    summands: tuple[tuple[tuple[Label, int], ...], ...]

    def __post_init__(self):
        if len(self.maps) != len(self.dims) - 1:
            raise ValueError(f"{len(self.dims)} levels need {len(self.dims) - 1} maps, got {len(self.maps)}")
        maps = []
        for j, A in enumerate(self.maps, start=1):
            A = f2.as_bits(A, 2, f"boundary map {j}")
            if A.shape != (self.dims[j - 1], self.dims[j]):
                raise ValueError(
                    f"boundary map {j} has shape {A.shape}, expected {(self.dims[j - 1], self.dims[j])}"
                )
            maps.append(A)
        object.__setattr__(self, "maps", tuple(maps))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def length(self) -> int:
        return len(self.maps)

    def boundary(self, j: int) -> np.ndarray:
        """Map ``C_j -> C_{j-1}``; zero outside ``1 .. length``."""
        if 1 <= j <= self.length:
            return self.maps[j - 1]
        lo = self.dims[j - 1] if 0 <= j - 1 < len(self.dims) else 0
        hi = self.dims[j] if 0 <= j < len(self.dims) else 0
        return f2.zeros((lo, hi))

    def block_offsets(self, j: int) -> dict[Label, tuple[int, int]]:
        out, start = {}, 0
        for label, size in self.summands[j]:
            out[label] = (start, size)
            start += size
        return out


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[tuple[int, int, int], ...]
    """Entries ``(j, row, col)`` where ``∂_j ∂_{j+1}`` is nonzero."""


def validate(C: ChainComplex) -> ValidationReport:
    """Check that every pair of consecutive boundary maps composes to zero."""
    failures = []
    for j in range(1, C.length):
        P = f2.matmul(C.maps[j - 1], C.maps[j])
        for r, c in zip(*np.nonzero(P)):
            failures.append((j, int(r), int(c)))
    return ValidationReport(not failures, tuple(failures))


def from_parity(H) -> ChainComplex:
    """Two-term complex ``C_1 = F^n -> C_0 = F^m`` with boundary ``H``."""
    H = f2.as_bits(H, 2, "parity-check matrix")
    m, n = H.shape
    if n == 0:
        raise ValueError("parity-check matrix has no columns")
    return ChainComplex((m, n), (H,), ((((0,), m),), (((1,), n),)))


def tensor(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """Tensor product complex.

    Level ``t`` is the direct sum of ``A_i ⊗ B_{t-i}`` in increasing ``i``; each
    block is Kronecker-ordered with the ``A`` index outermost.  The boundary on
    a block is ``∂A ⊗ I + I ⊗ ∂B`` (signs vanish over GF(2)).
    """
    top = A.length + B.length
    levels = []
    for t in range(top + 1):
        levels.append([(i, t - i) for i in range(A.length + 1) if 0 <= t - i <= B.length])
    dims = tuple(sum(A.dims[i] * B.dims[j] for i, j in lv) for lv in levels)
    maps = []
    for t in range(1, top + 1):
        D = f2.zeros((dims[t - 1], dims[t]))
        row_off = _offsets(levels[t - 1], A, B)
        col = 0
        for i, j in levels[t]:
            width = A.dims[i] * B.dims[j]
            if i >= 1:
                r = row_off[(i - 1, j)]
                D[r:r + A.dims[i - 1] * B.dims[j], col:col + width] ^= f2.kron(A.boundary(i), f2.identity(B.dims[j]))
            if j >= 1:
                r = row_off[(i, j - 1)]
                D[r:r + A.dims[i] * B.dims[j - 1], col:col + width] ^= f2.kron(f2.identity(A.dims[i]), B.boundary(j))
            col += width
        maps.append(D)
    out = ChainComplex(dims, tuple(maps), tuple(_regroup(lv, A, B) for lv in levels))
    report = validate(out)
    if not report.ok:
        raise ValueError(f"tensor product is not a complex; first failure at {report.failures[0]}")
    return out


def _offsets(level, A, B) -> dict[tuple[int, int], int]:
    out, start = {}, 0
    for i, j in level:
        out[(i, j)] = start
        start += A.dims[i] * B.dims[j]
    return out


def _regroup(level, A, B):
    # In A_i ⊗ B_j the A index is outermost, so summands of A_i stay contiguous
    # while summands of B_j interleave; the latter are left unlabelled.
    entries = []
    for i, j in level:
        sa, sb = A.summands[i], B.summands[j]
        if len(sb) == 1:
            for la, size in sa:
                entries.append((la + sb[0][0], size * sb[0][1]))
        else:
            entries.append((("mixed", i, j), A.dims[i] * B.dims[j]))
    return tuple(entries)


def homology_rank(C: ChainComplex, j: int) -> int:
    """``dim ker ∂_j - rank ∂_{j+1}``."""
    _check_level(C, j)
    n = C.dims[j]
    kernel = n - f2.rank(C.boundary(j)) if j >= 1 else n
    image = f2.rank(C.boundary(j + 1)) if j + 1 <= C.length else 0
    return kernel - image


def homology_reps(C: ChainComplex, j: int) -> np.ndarray:
    """Cycles at level ``j`` whose classes form a basis of the homology."""
    _check_level(C, j)
    cycles = f2.kernel_basis(C.boundary(j)) if j >= 1 else f2.identity(C.dims[j])
    return f2.complement_basis(_boundaries(C, j), cycles)


def _check_level(C: ChainComplex, j: int) -> None:
    if not 0 <= j <= C.length:
        raise IndexError(f"level {j} outside 0..{C.length}")


def _boundaries(C: ChainComplex, j: int) -> np.ndarray:
    if j + 1 > C.length:
        return f2.zeros((0, C.dims[j]))
    return f2.row_basis(C.boundary(j + 1).T)


def homology_distance(C: ChainComplex, j: int, cap: int = 1 << 24) -> int:
    """Least weight of a cycle at level ``j`` that is not a boundary."""
    reps = homology_reps(C, j)
    if reps.shape[0] == 0:
        raise ValueError(f"trivial homology at level {j}")
    return f2.min_weight_in_span(_boundaries(C, j), reps, C.dims[j], cap=cap)


def kunneth_rank(A: ChainComplex, B: ChainComplex, t: int) -> int:
    """Homology rank of ``A ⊗ B`` at level ``t`` predicted from the factors."""
    return sum(
        homology_rank(A, i) * homology_rank(B, t - i)
        for i in range(A.length + 1)
        if 0 <= t - i <= B.length
    )
