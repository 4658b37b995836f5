"""Dense linear algebra over GF(2).

Bit vectors and bit matrices are plain ``numpy.uint8`` arrays holding 0/1.
Index conventions for products follow ``numpy.kron``: the left factor is the
outermost index, so bit ``(i, j)`` of ``A ⊗ B`` lives at ``i * B.shape[1] + j``.

Exhaustive searches work on bit-packed rows (``uint64`` words) and use
``numpy.bitwise_count`` for weights.
"""

from __future__ import annotations

from collections.abc import Iterator

import numpy as np


class InstanceTooLarge(RuntimeError):
    """An exhaustive routine would exceed its configured cap."""


def as_bits(x, ndim: int | None = None, name: str = "array") -> np.ndarray:
    """Coerce ``x`` to a uint8 0/1 array, rejecting anything that is not binary."""
    a = np.asarray(x)
    if a.dtype == bool:
        a = a.astype(np.uint8)
    elif a.size and not np.issubdtype(a.dtype, np.integer):
        if not np.all(np.mod(a, 1) == 0):
            raise ValueError(f"{name} must hold integers 0/1")
        a = a.astype(np.int64)
    if a.size and (a.min() < 0 or a.max() > 1):
        raise ValueError(f"{name} must hold only 0/1 entries")
    if ndim is not None and a.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {a.shape}")
    return a.astype(np.uint8, copy=False)


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=np.uint8)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def weight(v) -> int:
    return int(np.count_nonzero(v))


def matmul(A, B) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape[-1] != B.shape[0]:
        raise ValueError(f"shape mismatch: {A.shape} @ {B.shape}")
    return (A.astype(np.int64) @ B.astype(np.int64) % 2).astype(np.uint8)


def mat_vec(A, v) -> np.ndarray:
    A = np.asarray(A)
    v = np.asarray(v)
    if v.ndim != 1 or A.shape[1] != v.shape[0]:
        raise ValueError(f"shape mismatch: matrix {A.shape} times vector {v.shape}")
    return matmul(A, v)


def kron(*factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.uint8)
    for f in factors:
        out = np.kron(out, np.asarray(f, dtype=np.uint8))
    return out.astype(np.uint8)


def kron_vec(*vectors) -> np.ndarray:
    out = np.ones(1, dtype=np.uint8)
    for v in vectors:
        out = np.kron(out, np.asarray(v, dtype=np.uint8))
    return out.astype(np.uint8)


def hstack(blocks) -> np.ndarray:
    return np.hstack([np.asarray(b, dtype=np.uint8) for b in blocks])


def vstack(blocks) -> np.ndarray:
    return np.vstack([np.asarray(b, dtype=np.uint8) for b in blocks])


def rref(A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = as_bits(A, 2, "matrix").copy()
    m, n = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        rows = np.flatnonzero(M[r:, c])
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if others.size:
            M[others] ^= M[r]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A)[1])


def kernel_basis(A) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` as the rows of a ``(dim, cols)`` array.

    One basis vector per free column, in increasing column order.
    """
    A = as_bits(A, 2, "matrix")
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n)
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in set(pivots)]
    K = zeros((len(free), n))
    for t, f in enumerate(free):
        K[t, f] = 1
        for row, p in enumerate(pivots):
            if R[row, f]:
                K[t, p] = 1
    return K


def row_basis(A) -> np.ndarray:
    A = as_bits(A, 2, "matrix")
    if A.shape[0] == 0:
        return zeros((0, A.shape[1]))
    return rref(A)[0]


def solve(A, b) -> np.ndarray | None:
    """One solution of ``A x = b``, or ``None`` if the system is inconsistent.

    Free variables are set to zero.
    """
    A = as_bits(A, 2, "matrix")
    b = as_bits(b, 1, "vector")
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: matrix {A.shape} with right-hand side {b.shape}")
    n = A.shape[1]
    R, pivots = rref(np.hstack([A, b[:, None]]))
    if pivots and pivots[-1] == n:
        return None
    x = zeros(n)
    for row, p in enumerate(pivots):
        x[p] = R[row, n]
    return x


def in_row_space(v, A) -> bool:
    A = np.asarray(A)
    if A.shape[0] == 0:
        return not np.any(v)
    return solve(A.T, v) is not None


class EchelonBasis:
    """Incrementally built basis supporting membership tests.

    Each stored row is reduced against the others' pivots, so reducing a new
    vector is one pass over the stored rows.
    """

    def __init__(self, n: int):
        self.n = n
        self._rows: list[np.ndarray] = []
        self._pivots: list[int] = []

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v) -> np.ndarray:
        r = np.array(v, dtype=np.uint8, copy=True)
        for row, p in zip(self._rows, self._pivots):
            if r[p]:
                r ^= row
        return r

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def add(self, v) -> bool:
        """Add ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        p = int(nz[0])
        for i, row in enumerate(self._rows):
            if row[p]:
                self._rows[i] = row ^ r
        self._rows.append(r)
        self._pivots.append(p)
        return True

    def extend(self, rows) -> None:
        for v in np.asarray(rows):
            self.add(v)


def complement_basis(sub, vectors) -> np.ndarray:
    """Rows of ``vectors`` that extend span(``sub``), chosen greedily in order."""
    vectors = np.asarray(vectors, dtype=np.uint8)
    n = vectors.shape[1] if vectors.ndim == 2 else np.asarray(sub).shape[1]
    eb = EchelonBasis(n)
    eb.extend(np.asarray(sub, dtype=np.uint8).reshape(-1, n))
    picked = [v for v in vectors if eb.add(v)]
    return np.array(picked, dtype=np.uint8).reshape(len(picked), n)


# --- three-index tensors ---------------------------------------------------

def reshape3(v, dims: tuple[int, int, int]) -> np.ndarray:
    v = np.asarray(v, dtype=np.uint8)
    if v.ndim != 1 or v.size != int(np.prod(dims)):
        raise ValueError(f"cannot reshape vector of shape {v.shape} to {tuple(dims)}")
    return v.reshape(dims)


def flatten3(T) -> np.ndarray:
    T = np.asarray(T, dtype=np.uint8)
    if T.ndim != 3:
        raise ValueError(f"expected a 3-index tensor, got shape {T.shape}")
    return T.reshape(-1)


def mode_product(A, B, C, T) -> np.ndarray:
    """Apply ``A ⊗ B ⊗ C`` to the tensor ``T`` axis by axis."""
    T = np.asarray(T, dtype=np.int64)
    for name, M, axis in (("first", A, 0), ("second", B, 1), ("third", C, 2)):
        if np.asarray(M).shape[1] != T.shape[axis]:
            raise ValueError(
                f"{name} factor has shape {np.asarray(M).shape} but tensor axis {axis} has length {T.shape[axis]}"
            )
    out = np.einsum("ia,jb,kc,abc->ijk", np.asarray(A, np.int64), np.asarray(B, np.int64),
                    np.asarray(C, np.int64), T)
    return (out % 2).astype(np.uint8)


# --- packed rows for exhaustive enumeration --------------------------------

def pack_rows(M) -> np.ndarray:
    """Pack each row of a 0/1 matrix into little-endian uint64 words."""
    M = np.asarray(M, dtype=np.uint8)
    if M.ndim == 1:
        M = M[None, :]
    m, n = M.shape
    words = max(1, (n + 63) // 64)
    padded = np.zeros((m, words * 64), dtype=np.uint8)
    padded[:, :n] = M
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(m, words)


def unpack_rows(P, n: int) -> np.ndarray:
    P = np.asarray(P, dtype=np.uint64)
    if P.ndim == 1:
        P = P[None, :]
    as_bytes = np.ascontiguousarray(P.astype("<u8")).view(np.uint8).reshape(P.shape[0], 8 * P.shape[1])
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n].astype(np.uint8)


def popcount_rows(P) -> np.ndarray:
    return np.bitwise_count(np.asarray(P, dtype=np.uint64)).sum(axis=-1, dtype=np.int64)


def span_table(basis_packed) -> np.ndarray:
    """All ``2**r`` combinations of the packed basis rows.

    Entry ``s`` is the XOR of rows whose index bit is set in ``s``.
    """
    B = np.asarray(basis_packed, dtype=np.uint64)
    words = B.shape[1] if B.ndim == 2 and B.shape[1] else 1
    table = np.zeros((1 << B.shape[0], words), dtype=np.uint64)
    for i in range(B.shape[0]):
        half = 1 << i
        table[half:2 * half] = table[:half] ^ B[i]
    return table


def iter_span_chunks(basis_packed, chunk_bits: int = 16) -> Iterator[tuple[int, np.ndarray]]:
    """Walk the span of the packed basis in blocks of ``2**chunk_bits`` rows.

    Yields ``(high, block)`` where ``high`` is the combination of basis rows
    beyond the first ``chunk_bits`` that is XORed into every row of ``block``,
    and row ``s`` of the block additionally carries low combination ``s``.
    """
    B = np.asarray(basis_packed, dtype=np.uint64)
    low = span_table(B[:chunk_bits])
    high = B[chunk_bits:]
    offset = np.zeros(low.shape[1], dtype=np.uint64)
    for t in range(1 << high.shape[0]):
        if t:
            offset = offset ^ high[(t & -t).bit_length() - 1]
        yield t ^ (t >> 1), low ^ offset


def min_weight_in_span(sub, extra, n: int, cap: int = 1 << 24, offset=None) -> int:
    """Minimum weight over ``offset + l + s`` with ``l`` in span(extra), ``s`` in span(sub).

    Without ``offset`` the ``l = 0`` combinations are excluded, which gives the
    minimum weight of a vector in span(extra + sub) outside span(sub).  With an
    offset every combination counts, which is a coset minimum.
    """
    sub = np.asarray(sub, dtype=np.uint8).reshape(-1, n)
    extra = np.asarray(extra, dtype=np.uint8).reshape(-1, n)
    e = extra.shape[0]
    total = e + sub.shape[0]
    if (1 << total) > cap:
        raise InstanceTooLarge(f"enumeration of 2^{total} combinations exceeds the cap of {cap}")
    if offset is None and e == 0:
        raise ValueError("nothing to enumerate: the extra span is zero")
    chunk_bits = 16
    basis = pack_rows(np.vstack([extra, sub])) if total else np.zeros((0, max(1, (n + 63) // 64)), np.uint64)
    shift = pack_rows(offset)[0] if offset is not None else None
    low_mask = (1 << min(e, chunk_bits)) - 1
    high_mask = (1 << max(e - chunk_bits, 0)) - 1
    best = n + 1
    for high, block in iter_span_chunks(basis, chunk_bits):
        if shift is not None:
            block = block ^ shift
        w = popcount_rows(block)
        if offset is None and not (high & high_mask):
            idx = np.arange(w.shape[0])
            w = w[(idx & low_mask) != 0]
            if w.size == 0:
                continue
        best = min(best, int(w.min()))
    return best


def int_of_bits(v) -> int:
    """Encode a bit vector as an integer with bit ``i`` equal to ``v[i]``."""
    out = 0
    for i in np.flatnonzero(np.asarray(v)):
        out |= 1 << int(i)
    return out


def bits_of_int(x: int, n: int) -> np.ndarray:
    return np.array([(x >> i) & 1 for i in range(n)], dtype=np.uint8)
