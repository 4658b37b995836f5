"""Energy barriers of bit strings under syndrome-weight energy.

A path is a sequence of configurations starting at zero in which consecutive
configurations differ in at most one bit.  The barrier of a target is the
least, over paths reaching it, of the largest energy met along the way.

Exhaustive search works on integer states whose bit ``i`` is coordinate ``i``.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

import numpy as np

from . import f2
from .classical import ClassicalCode
from .css import CssCode, logical_space

DEFAULT_EXACT_CAP = 22


class CheckEnergy:
    """Number of rows of ``H`` violated by a configuration."""

    def __init__(self, H):
        self.H = f2.as_bits(H, 2, "check matrix")

    @property
    def n(self) -> int:
        return self.H.shape[1]

    def __call__(self, x) -> int:
        return f2.weight(f2.mat_vec(self.H, x))

    def many(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.uint8).reshape(-1, self.n)
        return f2.matmul(X, self.H.T).sum(axis=1, dtype=np.int64)


def _as_energy(energy):
    if isinstance(energy, CheckEnergy):
        return energy
    if isinstance(energy, np.ndarray) and energy.ndim == 2:
        return CheckEnergy(energy)
    if callable(energy):
        return energy
    raise TypeError(f"energy must be a check matrix or a callable, got {type(energy).__name__}")


@dataclass(frozen=True, eq=False)
class PauliPath:
    """Sequence of configurations, stored as the rows of ``steps``."""

    steps: np.ndarray

    def __post_init__(self):
        steps = f2.as_bits(self.steps, 2, "path steps")
        steps.flags.writeable = False
        object.__setattr__(self, "steps", steps)

    @classmethod
    def from_flips(cls, n: int, flips, start=None) -> PauliPath:
        x = f2.zeros(n) if start is None else f2.as_bits(start, 1, "start").copy()
        rows = [x.copy()]
        for i in flips:
            if i is not None:
                x[int(i)] ^= 1
            rows.append(x.copy())
        return cls(np.array(rows, dtype=np.uint8))

    @property
    def n(self) -> int:
        return self.steps.shape[1]

    def __len__(self) -> int:
        return self.steps.shape[0]

    @property
    def endpoint(self) -> np.ndarray:
        return self.steps[-1]

    @property
    def flips(self) -> list[int]:
        """Flipped coordinate of every step that changes something."""
        out = []
        for d in np.diff(self.steps.astype(np.int8), axis=0):
            nz = np.flatnonzero(d)
            if nz.size:
                out.append(int(nz[0]))
        return out

    def is_valid(self) -> bool:
        if self.steps.shape[0] == 0 or self.steps[0].any():
            return False
        diffs = np.count_nonzero(np.diff(self.steps.astype(np.int8), axis=0), axis=1)
        return bool(np.all(diffs <= 1))

    def energies(self, energy) -> np.ndarray:
        energy = _as_energy(energy)
        if isinstance(energy, CheckEnergy):
            return energy.many(self.steps)
        return np.array([energy(s) for s in self.steps], dtype=np.int64)

    def max_energy(self, energy) -> int:
        return int(self.energies(energy).max())


def verify_path(path: PauliPath, target) -> bool:
    """True when ``path`` is a valid path ending at ``target``."""
    target = f2.as_bits(target, 1, "target")
    return path.is_valid() and target.shape == path.endpoint.shape and bool(np.all(path.endpoint == target))


@dataclass(frozen=True, eq=False)
class BarrierResult:
    value: int
    witness: PauliPath
    exact: bool
    target: str

    def as_dict(self) -> dict:
        return {
            "value": int(self.value),
            "exact": bool(self.exact),
            "target": self.target,
            "n": self.witness.n,
            "witness_flips": self.witness.flips,
        }


# --- exhaustive search ------------------------------------------------------

def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise f2.InstanceTooLarge(
            f"exact search over 2^{n} states exceeds the cap of 2^{cap}; raise the cap or use best-first search"
        )


def syndrome_chunks(M, chunk_bits: int = 16):
    """Packed ``M x`` for every state ``x``, in consecutive blocks.

    Yields ``(start, block)`` with row ``s`` of the block the packed syndrome
    of state ``start + s``.
    """
    M = f2.as_bits(M, 2, "matrix")
    n = M.shape[1]
    cols = f2.pack_rows(M.T) if M.shape[0] else np.zeros((n, 1), dtype=np.uint64)
    low_bits = min(n, chunk_bits)
    low = f2.span_table(cols[:low_bits])
    high = f2.span_table(cols[low_bits:])
    for h in range(high.shape[0]):
        yield h << low_bits, low ^ high[h]


def energy_table(energy, n: int, cap: int = DEFAULT_EXACT_CAP) -> np.ndarray:
    """Energy of every one of the ``2**n`` states, indexed by state."""
    _check_cap(n, cap)
    energy = _as_energy(energy)
    table = np.empty(1 << n, dtype=np.int32)
    if isinstance(energy, CheckEnergy):
        if energy.n != n:
            raise ValueError(f"check matrix acts on {energy.n} bits, not {n}")
        for start, block in syndrome_chunks(energy.H):
            table[start:start + block.shape[0]] = f2.popcount_rows(block)
        return table
    for s in range(1 << n):
        table[s] = energy(f2.bits_of_int(s, n))
    return table


def _flood(table: np.ndarray, n: int, target_mask: np.ndarray | None, forbidden=None, start: int = 0):
    """Bottleneck labels grown threshold by threshold from ``start``.

    At each threshold ``T`` every state reachable through states of energy at
    most ``T`` receives label ``T``; its parent records the flip that first
    reached it, scanning flips in increasing index order.  Stops at the first
    threshold at which a target state is labelled, unless ``target_mask`` is
    None.
    """
    size = 1 << n
    label = np.full(size, -1, dtype=np.int32)
    parent = np.full(size, -1, dtype=np.int8)
    seen = np.zeros(size, dtype=bool)
    blocked = np.zeros(size, dtype=bool) if forbidden is None else forbidden.copy()
    if blocked[start]:
        raise ValueError("the start state is forbidden")
    seen[start] = True
    for T in np.unique(table[~blocked]):
        if T < table[start]:
            continue
        frontier = np.flatnonzero(seen & (label < 0) & (table <= T))
        label[frontier] = T
        while frontier.size:
            new = []
            for i in range(n):
                nb = frontier ^ (1 << i)
                nb = nb[~seen[nb] & ~blocked[nb]]
                if nb.size == 0:
                    continue
                seen[nb] = True
                parent[nb] = i
                nb = nb[table[nb] <= T]
                label[nb] = T
                new.append(nb)
            frontier = np.concatenate(new) if new else np.empty(0, dtype=np.int64)
        if target_mask is not None and np.any(target_mask & (label >= 0)):
            break
    return label, parent


def _trace(parent: np.ndarray, state: int, n: int) -> PauliPath:
    flips = []
    while parent[state] >= 0:
        i = int(parent[state])
        flips.append(i)
        state ^= 1 << i
    return PauliPath.from_flips(n, reversed(flips))


def _target_mask(target, n: int) -> tuple[np.ndarray, str]:
    size = 1 << n
    if isinstance(target, np.ndarray) and target.dtype == bool and target.shape == (size,):
        return target, "predicate"
    if callable(target):
        mask = np.array([bool(target(f2.bits_of_int(s, n))) for s in range(size)])
        return mask, "predicate"
    v = f2.as_bits(target, 1, "target")
    if v.shape[0] != n:
        raise ValueError(f"target has length {v.shape[0]}, expected {n}")
    mask = np.zeros(size, dtype=bool)
    mask[f2.int_of_bits(v)] = True
    return mask, "operator " + "".join(map(str, v))


def _solve(table, n, mask, description, forbidden=None) -> BarrierResult:
    if not mask.any():
        raise ValueError("no nontrivial targets")
    label, parent = _flood(table, n, mask, forbidden)
    hit = np.flatnonzero(mask & (label >= 0))
    if hit.size == 0:
        raise ValueError("no target state is reachable")
    labels = label[hit]
    best = int(labels.min())
    state = int(hit[labels == best][0])
    path = _trace(parent, state, n)
    value = int(table[[f2.int_of_bits(s) for s in path.steps]].max())
    if value != best:
        raise AssertionError(f"witness bottleneck {value} differs from label {best}")
    return BarrierResult(value, path, True, description)


def barrier_exact(energy, n: int, target, cap: int = DEFAULT_EXACT_CAP, forbidden=None) -> BarrierResult:
    """Exact barrier to a target vector, predicate, or boolean state mask.

    For several target states the result is the least barrier among them.
    ``forbidden`` is an optional boolean mask of states the path may not visit.
    """
    table = energy_table(energy, n, cap)
    mask, description = _target_mask(target, n)
    return _solve(table, n, mask, description, forbidden)


def bottleneck_labels(energy, n: int, cap: int = DEFAULT_EXACT_CAP) -> np.ndarray:
    """Barrier of every state, indexed by state."""
    label, _ = _flood(energy_table(energy, n, cap), n, None)
    return label


def _linear_targets(H, D, n: int, cap: int):
    """Energy table of ``H`` and the mask of states with zero syndrome and ``D x != 0``."""
    _check_cap(n, cap)
    table = np.empty(1 << n, dtype=np.int32)
    mask = np.empty(1 << n, dtype=bool)
    m = H.shape[0]
    stacked = np.vstack([H, D])
    for start, block in syndrome_chunks(stacked):
        sl = slice(start, start + block.shape[0])
        bits = f2.unpack_rows(block, stacked.shape[0])
        syn, sig = bits[:, :m], bits[:, m:]
        table[sl] = syn.sum(axis=1)
        mask[sl] = ~syn.any(axis=1) & sig.any(axis=1)
    return table, mask


def code_barrier_exact(code, kind: str | None = None, cap: int = DEFAULT_EXACT_CAP) -> BarrierResult:
    """Least exact barrier over all nontrivial logicals of a code.

    For a classical code the targets are the nonzero codewords.  For a CSS
    code and ``kind="z"`` the energy is the weight of ``H_X z`` and the targets
    are ``ker(H_X)`` minus the span of the Z stabilizers; ``kind="x"`` swaps
    the roles.  The check rows of the matrix are the generators, as given.
    """
    if isinstance(code, ClassicalCode):
        n = code.n
        if code.k == 0:
            raise ValueError("no nontrivial targets")
        table = energy_table(CheckEnergy(code.H), n, cap)
        mask = table == 0
        mask[0] = False
        return _solve(table, n, mask, "nonzero codewords")
    if not isinstance(code, CssCode) or kind is None:
        raise TypeError("expected a ClassicalCode, or a CssCode with kind 'x' or 'z'")
    n = code.n
    detector = logical_space(code, "x" if kind.lower() == "z" else "z")
    if detector.shape[0] == 0:
        raise ValueError("no nontrivial targets")
    table, mask = _linear_targets(code.checks(kind), detector, n, cap)
    return _solve(table, n, mask, f"nontrivial {kind.upper()} logicals")


def coset_barrier_exact(css: CssCode, kind: str, operator, cap: int = DEFAULT_EXACT_CAP) -> BarrierResult:
    """Least barrier over the logical class of ``operator`` (all stabilizer-equivalent forms)."""
    operator = f2.as_bits(operator, 1, "operator")
    detector = logical_space(css, "x" if kind.lower() == "z" else "z")
    signature = f2.mat_vec(detector, operator)
    if not signature.any():
        raise ValueError("operator is not a nontrivial logical")
    H = css.checks(kind)
    n = css.n
    _check_cap(n, cap)
    table = energy_table(CheckEnergy(H), n, cap)
    mask = np.empty(1 << n, dtype=bool)
    want = f2.int_of_bits(signature)
    for start, block in syndrome_chunks(np.vstack([H, detector])):
        bits = f2.unpack_rows(block, H.shape[0] + detector.shape[0])
        syn, sig = bits[:, :H.shape[0]], bits[:, H.shape[0]:]
        sig_int = (sig.astype(np.int64) << np.arange(sig.shape[1])).sum(axis=1)
        mask[start:start + block.shape[0]] = ~syn.any(axis=1) & (sig_int == want)
    return _solve(table, n, mask, "logical class of operator " + "".join(map(str, operator)))


# --- heuristic search -------------------------------------------------------

def barrier_best_first(
    energy,
    n: int,
    target,
    frontier_cap: int = 10**6,
    seed: int = 0,
    heuristic_weight: float = 0.0,
) -> BarrierResult:
    """Greedy best-first path search toward one target.

    States are expanded in order of ``energy + heuristic_weight * distance``
    to the target, ties broken by seeded random keys.  The value is the
    largest energy on the path found, an upper estimate of the barrier.
    """
    energy = _as_energy(energy)
    target_vec = f2.as_bits(target, 1, "target")
    if target_vec.shape[0] != n:
        raise ValueError(f"target has length {target_vec.shape[0]}, expected {n}")
    goal = f2.int_of_bits(target_vec)
    if isinstance(energy, CheckEnergy):
        cols = [f2.int_of_bits(energy.H[:, i]) for i in range(n)]
        syndromes = {0: 0}

        def cost(state: int, prev: int, flip: int) -> int:
            s = syndromes[prev] ^ cols[flip]
            syndromes[state] = s
            return s.bit_count()
        start_energy = 0
    else:
        def cost(state: int, prev: int, flip: int) -> int:
            return int(energy(f2.bits_of_int(state, n)))
        start_energy = int(energy(f2.zeros(n)))

    rng = random.Random(seed)
    parent: dict[int, int] = {0: -1}
    energies = {0: start_energy}
    heap = [(start_energy + heuristic_weight * goal.bit_count(), rng.random(), 0)]
    while heap:
        _, _, state = heapq.heappop(heap)
        if state == goal:
            flips = []
            while parent[state] >= 0:
                flips.append(parent[state])
                state ^= 1 << parent[state]
            path = PauliPath.from_flips(n, reversed(flips))
            return BarrierResult(path.max_energy(energy), path, False, "operator " + "".join(map(str, target_vec)))
        for i in range(n):
            nb = state ^ (1 << i)
            if nb in parent:
                continue
            parent[nb] = i
            e = cost(nb, state, i)
            energies[nb] = e
            heapq.heappush(heap, (e + heuristic_weight * (nb ^ goal).bit_count(), rng.random(), nb))
        if len(parent) > frontier_cap:
            raise RuntimeError(
                f"frontier exceeded {frontier_cap} states before reaching the target; "
                f"retry with a larger frontier cap"
            )
    raise RuntimeError("search space exhausted without reaching the target")


# --- slice deformation on three-fold products -------------------------------

def _family_axis(css: CssCode, family: int) -> int:
    if len(css.factors) != 3 or len(css.blocks) != 3:
        raise ValueError(f"{css!r} is not a three-fold product code")
    pattern = css.block(family).pattern
    return pattern.index("C")


def deform_state(css: CssCode, x, La, alpha: int, family: int = 1) -> np.ndarray:
    """Fold the check-axis slices of one qubit block into slice ``alpha``.

    The block of ``family`` has one axis running over the checks of its
    factor.  The new slice ``alpha`` is the sum of the slices indexed by the
    support of ``La``; all other slices and all other blocks are cleared.
    """
    block = css.block(family)
    axis = _family_axis(css, family)
    part = np.asarray(x[block.offset:block.stop], dtype=np.int64).reshape(block.shape)
    folded = np.tensordot(np.asarray(La, dtype=np.int64), part, axes=(0, axis)) % 2
    out_block = np.zeros(block.shape, dtype=np.uint8)
    index = [slice(None)] * 3
    index[axis] = alpha
    out_block[tuple(index)] = folded
    out = f2.zeros(css.n)
    out[block.offset:block.stop] = out_block.reshape(-1)
    return out


def slice_deform_3d(css: CssCode, path: PauliPath, La, alpha: int, family: int = 1) -> PauliPath:
    """Deform a path so that it stays inside one slice of one qubit block.

    ``La`` must be a codeword of the transpose of the family's check-axis
    factor, with ``alpha`` in its support.  Energies never increase step by
    step; this is checked on every step.
    """
    axis = _family_axis(css, family)
    factor = css.factors[axis]
    La = f2.as_bits(La, 1, "slice codeword")
    if La.shape[0] != factor.m:
        raise ValueError(f"slice codeword has length {La.shape[0]}, factor has {factor.m} checks")
    if f2.mat_vec(factor.H.T, La).any():
        raise ValueError("slice codeword is not annihilated by the transposed factor checks")
    if not 0 <= alpha < factor.m or not La[alpha]:
        raise ValueError(f"slice index {alpha} is outside the support of the slice codeword")
    if not path.is_valid():
        raise ValueError("input path is not valid")
    steps = np.array([deform_state(css, s, La, alpha, family) for s in path.steps], dtype=np.uint8)
    out = PauliPath(steps)
    before = path.energies(css.H_X)
    after = out.energies(css.H_X)
    bad = np.flatnonzero(after > before)
    if bad.size:
        i = int(bad[0])
        raise AssertionError(f"deformed energy {after[i]} exceeds original {before[i]} at step {i}")
    if not out.is_valid():
        raise AssertionError("deformed path takes a multi-bit step")
    return out


def select_slice_codeword(css: CssCode, target, family: int = 1) -> tuple[np.ndarray, int]:
    """Pick ``(La, alpha)`` so that deforming ``target`` gives a nontrivial logical.

    Codewords of the transposed factor are scanned in a fixed order and the
    first one whose folded image of ``target`` is a nontrivial Z logical wins;
    ``alpha`` is the lowest index in its support.
    """
    axis = _family_axis(css, family)
    factor = css.factors[axis]
    basis = f2.kernel_basis(factor.H.T)
    for combo in range(1, 1 << basis.shape[0]):
        La = f2.zeros(factor.m)
        for i in range(basis.shape[0]):
            if combo >> i & 1:
                La ^= basis[i]
        for alpha in np.flatnonzero(La):
            image = deform_state(css, target, La, int(alpha), family)
            if css.is_logical("z", image):
                return La, int(alpha)
    raise ValueError("no slice codeword maps the target to a nontrivial logical")


def is_elementary_slice_operator(css: CssCode, z, family: int = 1) -> bool:
    """True for a nontrivial Z logical living in one check-axis slice of one block.

    The slice content must be a codeword of the tensor-product code of the two
    bit-axis factors, and the slice index must lie outside the image of its
    factor's checks.
    """
    z = f2.as_bits(z, 1, "operator")
    block = css.block(family)
    axis = _family_axis(css, family)
    if z[:block.offset].any() or z[block.stop:].any():
        return False
    part = z[block.offset:block.stop].reshape(block.shape)
    occupied = [a for a in range(block.shape[axis]) if np.take(part, a, axis=axis).any()]
    if len(occupied) != 1:
        return False
    alpha = occupied[0]
    content = np.take(part, alpha, axis=axis)
    others = [f for t, f in enumerate(css.factors) if t != axis]
    if f2.matmul(others[0].H, content).any() or f2.matmul(content, others[1].H.T).any():
        return False
    unit = f2.zeros(block.shape[axis])
    unit[alpha] = 1
    if f2.solve(css.factors[axis].H, unit) is not None:
        return False
    return css.is_logical("z", z)
