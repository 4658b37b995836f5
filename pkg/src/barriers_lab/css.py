"""CSS codes, their logical operators and canonical logical bases."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import f2
from .classical import ClassicalCode


@dataclass(frozen=True)
class Block:
    """Contiguous range of qubits forming one tensor-product block.

    ``pattern`` has one letter per factor code: ``"C"`` when that axis runs
    over the factor's checks and ``"V"`` when it runs over its bits.
    """

    name: str
    pattern: tuple[str, ...]
    offset: int
    shape: tuple[int, ...]

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def stop(self) -> int:
        return self.offset + self.size

    def as_dict(self) -> dict:
        return {"name": self.name, "offset": self.offset, "size": self.size, "shape": list(self.shape)}


def blocks_from_patterns(patterns, factors) -> tuple[Block, ...]:
    blocks, offset = [], 0
    for pattern in patterns:
        shape = tuple(f.m if p == "C" else f.n for p, f in zip(pattern, factors))
        name = ".".join(f"{p}{i + 1}" for i, p in enumerate(pattern))
        blocks.append(Block(name, tuple(pattern), offset, shape))
        offset += blocks[-1].size
    return tuple(blocks)


@dataclass(frozen=True, eq=False)
class CssCode:
    """CSS code with X checks ``H_X`` and Z checks ``H_Z`` on ``n`` qubits.

    Z-type errors are detected by ``H_X`` and X-type errors by ``H_Z``.
    Optional meta-checks satisfy ``meta_X @ H_X = 0`` and ``meta_Z @ H_Z = 0``.
    """

    H_X: np.ndarray
    H_Z: np.ndarray
    meta_X: np.ndarray | None = None
    meta_Z: np.ndarray | None = None
    blocks: tuple[Block, ...] = ()
    factors: tuple[ClassicalCode, ...] = ()
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        HX = f2.as_bits(self.H_X, 2, "H_X")
        HZ = f2.as_bits(self.H_Z, 2, "H_Z")
        if HX.shape[1] != HZ.shape[1]:
            raise ValueError(f"H_X has {HX.shape[1]} columns but H_Z has {HZ.shape[1]}")
        if f2.matmul(HX, HZ.T).any():
            raise ValueError("H_X and H_Z do not commute: H_X H_Z^T != 0")
        for label, M, H in (("meta_X", self.meta_X, HX), ("meta_Z", self.meta_Z, HZ)):
            if M is None:
                continue
            M = f2.as_bits(M, 2, label)
            if M.shape[1] != H.shape[0] or f2.matmul(M, H).any():
                raise ValueError(f"{label} of shape {M.shape} is not a meta-check for a {H.shape} matrix")
            object.__setattr__(self, label, M)
        object.__setattr__(self, "H_X", HX)
        object.__setattr__(self, "H_Z", HZ)
        if self.blocks and self.blocks[-1].stop != HX.shape[1]:
            raise ValueError(f"block layout covers {self.blocks[-1].stop} qubits, code has {HX.shape[1]}")

    @classmethod
    def from_classical(cls, code: ClassicalCode) -> CssCode:
        """View a classical code as a CSS code with only X checks.

        Its Z-type errors see exactly the classical syndrome.
        """
        return cls(code.H, f2.zeros((0, code.n)), name=code.name or "classical")

    @property
    def n(self) -> int:
        return self.H_X.shape[1]

    @cached_property
    def rank_X(self) -> int:
        return f2.rank(self.H_X)

    @cached_property
    def rank_Z(self) -> int:
        return f2.rank(self.H_Z)

    @property
    def k(self) -> int:
        return self.n - self.rank_X - self.rank_Z

    @cached_property
    def sparsity(self) -> tuple[int, int]:
        """``(w_c, w_q)``: max check weight and max checks acting on one qubit."""
        H = np.vstack([self.H_X, self.H_Z]).astype(np.int64)
        if H.shape[0] == 0:
            return 0, 0
        return int(H.sum(axis=1).max()), int(H.sum(axis=0).max())

    def checks(self, kind: str) -> np.ndarray:
        """Checks that detect errors of the given Pauli type."""
        return self.H_X if _kind(kind) == "z" else self.H_Z

    def stabilizers(self, kind: str) -> np.ndarray:
        """Stabilizer generators of the given Pauli type."""
        return self.H_Z if _kind(kind) == "z" else self.H_X

    def block(self, name_or_index) -> Block:
        if isinstance(name_or_index, int):
            return self.blocks[name_or_index - 1]
        for b in self.blocks:
            if b.name == name_or_index:
                return b
        raise KeyError(f"no block {name_or_index!r}; blocks are {[b.name for b in self.blocks]}")

    def is_logical(self, kind: str, v) -> bool:
        v = f2.as_bits(v, 1, "operator")
        if f2.mat_vec(self.checks(kind), v).any():
            return False
        return not f2.in_row_space(v, self.stabilizers(kind))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"CssCode{label}(n={self.n}, k={self.k})"


def _kind(kind: str) -> str:
    k = kind.lower()
    if k not in ("x", "z"):
        raise ValueError(f"kind must be 'x' or 'z', got {kind!r}")
    return k


def logical_space(css: CssCode, kind: str) -> np.ndarray:
    """Representatives of a basis of the logical operators of the given type."""
    kernel = f2.kernel_basis(css.checks(kind))
    return f2.complement_basis(css.stabilizers(kind), kernel)


def quantum_distance(css: CssCode, kind: str, cap: int = 1 << 24) -> int:
    """Least weight of a nontrivial logical operator of the given type."""
    reps = logical_space(css, kind)
    if reps.shape[0] == 0:
        raise ValueError(f"{css!r} encodes no logical qubits")
    stab = f2.row_basis(css.stabilizers(kind))
    return f2.min_weight_in_span(stab, reps, css.n, cap=cap)


def select_unit_vectors(delta, count: int) -> np.ndarray:
    """Lowest-index unit vectors whose span meets the column space of ``delta`` trivially."""
    delta = f2.as_bits(delta, 2, "matrix")
    r = delta.shape[0]
    eb = f2.EchelonBasis(r)
    eb.extend(delta.T)
    picked = []
    for i in range(r):
        if len(picked) == count:
            break
        e = f2.zeros(r)
        e[i] = 1
        if eb.add(e):
            picked.append(e)
    if len(picked) < count:
        raise ValueError(f"only {len(picked)} unit vectors avoid the image, {count} requested")
    return np.array(picked, dtype=np.uint8).reshape(count, r)


@dataclass(frozen=True, eq=False)
class CanonicalLogicalSet:
    """Product-form logical basis of a higher-dimensional product code.

    ``labels[i]`` is ``(family, indices)``: the 1-based block the operator is
    supported on and the index chosen in each factor's list.
    """

    kind: str
    operators: np.ndarray
    labels: tuple[tuple[int, tuple[int, ...]], ...]

    def __len__(self) -> int:
        return len(self.labels)

    def family(self, f: int) -> np.ndarray:
        idx = [i for i, (fam, _) in enumerate(self.labels) if fam == f]
        return self.operators[idx]

    def find(self, label: str) -> int:
        """Index of the operator whose :func:`label_str` equals ``label``."""
        for i, lab in enumerate(self.labels):
            if label_str(lab) == label:
                return i
        raise KeyError(f"no canonical operator {label!r}; known: {[label_str(lab) for lab in self.labels]}")


def label_str(label) -> str:
    fam, idx = label
    return f"{fam}:" + ",".join(str(i) for i in idx)


def factor_vectors(code: ClassicalCode, position: str, kind: str) -> np.ndarray:
    """Per-factor vectors used in canonical operators.

    Z type: unit vectors outside ``im(H)`` on a check axis, codewords on a bit
    axis.  X type: codewords of ``H^T`` on a check axis, unit vectors outside
    ``im(H^T)`` on a bit axis.
    """
    H = code.H
    if _kind(kind) == "z":
        return select_unit_vectors(H, code.k_transpose) if position == "C" else f2.kernel_basis(H)
    return f2.kernel_basis(H.T) if position == "C" else select_unit_vectors(H.T, code.k)


def canonical_logicals(css: CssCode, kind: str) -> CanonicalLogicalSet:
    """Canonical logical basis of a product code built with a block layout."""
    kind = _kind(kind)
    if not css.blocks or not css.factors:
        raise ValueError(f"{css!r} carries no product structure")
    ops, labels = [], []
    for fam, block in enumerate(css.blocks, start=1):
        lists = [factor_vectors(f, p, kind) for f, p in zip(css.factors, block.pattern)]
        for idx in itertools.product(*(range(len(v)) for v in lists)):
            op = f2.zeros(css.n)
            op[block.offset:block.stop] = f2.kron_vec(*(v[i] for v, i in zip(lists, idx)))
            ops.append(op)
            labels.append((fam, tuple(idx)))
    ops_arr = np.array(ops, dtype=np.uint8).reshape(len(ops), css.n)
    checks = css.checks(kind)
    eb = f2.EchelonBasis(css.n)
    eb.extend(f2.row_basis(css.stabilizers(kind)))
    for op, lab in zip(ops_arr, labels):
        if f2.mat_vec(checks, op).any():
            raise ValueError(f"canonical {kind.upper()} operator {label_str(lab)} is detected by the checks")
        if not eb.add(op):
            raise ValueError(
                f"canonical {kind.upper()} operator {label_str(lab)} is dependent on the stabilizers "
                f"and the operators before it"
            )
    if len(ops) != css.k:
        raise ValueError(f"built {len(ops)} canonical operators but the code has k = {css.k}")
    return CanonicalLogicalSet(kind, ops_arr, tuple(labels))
