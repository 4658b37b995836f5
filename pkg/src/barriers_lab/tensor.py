"""Classical tensor-product codes and their barrier bounds.

The product of codes ``a`` and ``b`` acts on an ``n_a x n_b`` grid of bits,
bit ``(i, j)`` at index ``i * n_b + j``.  Its checks are ``H_a ⊗ I`` (each
column is a copy of ``a``) stacked over ``I ⊗ H_b`` (each row a copy of ``b``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import f2
from .barrier import DEFAULT_EXACT_CAP, BarrierResult, PauliPath, code_barrier_exact, verify_path
from .classical import ClassicalCode, distance


class BoundViolation(AssertionError):
    """A proven inequality failed on exactly computed values."""


@dataclass(frozen=True, eq=False)
class TensorProductCode:
    code: ClassicalCode
    a: ClassicalCode
    b: ClassicalCode

    @property
    def na(self) -> int:
        return self.a.n

    @property
    def nb(self) -> int:
        return self.b.n

    def index(self, i: int, j: int) -> int:
        return i * self.nb + j

    def coords(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.nb)

    def grid(self, v) -> np.ndarray:
        return np.asarray(v, dtype=np.uint8).reshape(self.na, self.nb)


def build(a: ClassicalCode, b: ClassicalCode) -> TensorProductCode:
    H = f2.vstack([f2.kron(a.H, f2.identity(b.n)), f2.kron(f2.identity(a.n), b.H)])
    code = ClassicalCode(H, name=f"{a.name}⊗{b.name}" if a.name and b.name else "")
    if code.k != a.k * b.k:
        raise AssertionError(f"product has k = {code.k}, expected {a.k} * {b.k}")
    return TensorProductCode(code, a, b)


def product_logical(tp: TensorProductCode, La, Lb) -> np.ndarray:
    for name, code, L in (("first", tp.a, La), ("second", tp.b, Lb)):
        L = f2.as_bits(L, 1, f"{name} factor logical")
        if L.shape[0] != code.n or not L.any() or not code.is_codeword(L):
            raise ValueError(f"{name} factor input is not a nonzero codeword of its code")
    return f2.kron_vec(La, Lb)


def strip_path(tp: TensorProductCode, path_a: PauliPath, path_b: PauliPath, orientation: str = "row") -> PauliPath:
    """Path to ``La ⊗ Lb`` that applies one factor's logical line by line.

    ``path_a`` ends at ``La`` and ``path_b`` at ``Lb``.  In row orientation the
    rows ``i`` are visited in the flip order of ``path_a`` and on each one the
    flips of ``path_b`` are replayed (undoing the row if ``i`` is flipped
    back).  Column orientation swaps the roles.  The largest energy along the
    result is at most ``wt(Lb) * max(path_a) + max(path_b)`` when ``path_b``
    stays inside the support of ``Lb``; extra excursions are charged one
    column-check neighbourhood each, and the bound is checked on the spot.
    """
    for name, code, p in (("first", tp.a, path_a), ("second", tp.b, path_b)):
        if p.n != code.n or not p.is_valid():
            raise ValueError(f"{name} factor path is not a valid path of length {code.n}")
        if not code.is_codeword(p.endpoint) or not p.endpoint.any():
            raise ValueError(f"{name} factor path does not end at a nonzero codeword")
    if orientation not in ("row", "column"):
        raise ValueError(f"orientation must be 'row' or 'column', got {orientation!r}")
    outer, inner = (path_a, path_b) if orientation == "row" else (path_b, path_a)
    outer_code, inner_code = (tp.a, tp.b) if orientation == "row" else (tp.b, tp.a)

    def cell(line: int, pos: int) -> int:
        return tp.index(line, pos) if orientation == "row" else tp.index(pos, line)

    flips = []
    line_state = {}
    for line in outer.flips:
        on = line_state.get(line, False)
        seq = inner.flips if not on else list(reversed(inner.flips))
        flips.extend(cell(line, pos) for pos in seq)
        line_state[line] = not on
    path = PauliPath.from_flips(tp.code.n, flips)
    target = product_logical(tp, path_a.endpoint, path_b.endpoint)
    if not verify_path(path, target):
        raise AssertionError("strip path does not reach the product logical")
    L_inner = inner.endpoint
    outside = np.flatnonzero(inner.steps.any(axis=0) & (L_inner == 0))
    col_weight = int(outer_code.H.sum(axis=0).max()) if outer_code.m else 0
    claim = (f2.weight(L_inner) * outer.max_energy(outer_code.H)
             + inner.max_energy(inner_code.H) + outside.size * col_weight)
    measured = path.max_energy(tp.code.H)
    if measured > claim:
        raise AssertionError(f"strip path reaches energy {measured}, above the claimed {claim}")
    return path


@dataclass
class Check:
    claim: str
    holds: bool
    enforced: bool
    note: str = ""

    def as_dict(self) -> dict:
        return {"claim": self.claim, "holds": self.holds, "enforced": self.enforced, "note": self.note}


@dataclass
class BoundLedger:
    n: int
    k: int
    d: int | None
    d_a: int
    d_b: int
    E_a: int
    E_b: int
    lower_energy: int
    lower_distance: int
    conjecture: int
    upper_strip: int
    measured: BarrierResult | None = None
    strip_witness_value: int | None = None
    checks: list[Check] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {
            "n": self.n, "k": self.k, "d": self.d,
            "d_a": self.d_a, "d_b": self.d_b, "E_a": self.E_a, "E_b": self.E_b,
            "lower_energy": self.lower_energy, "lower_distance": self.lower_distance,
            "conjecture": self.conjecture, "upper_strip": self.upper_strip,
        }
        if self.measured is not None:
            out["measured"] = self.measured.value
            out["witness_path"] = self.measured.witness.flips
        if self.strip_witness_value is not None:
            out["strip_witness_value"] = self.strip_witness_value
        out["checks"] = [c.as_dict() for c in self.checks]
        out["warnings"] = list(self.warnings)
        return out


def bound_ledger(a: ClassicalCode, b: ClassicalCode, with_measurement: bool = False,
                 cap: int = DEFAULT_EXACT_CAP) -> BoundLedger:
    """Analytic barrier bounds for ``a ⊗ b``, optionally with the exact barrier.

    ``E_a`` and ``E_b`` are code-level exact barriers of the factors.  Failed
    inequalities that are proven for the inputs raise :class:`BoundViolation`;
    the conjectured lower bound is only recorded.
    """
    tp = build(a, b)
    d_a, d_b = distance(a), distance(b)
    res_a, res_b = code_barrier_exact(a, cap=cap), code_barrier_exact(b, cap=cap)
    E_a, E_b = res_a.value, res_b.value
    try:
        d = distance(tp.code)
    except f2.InstanceTooLarge:
        d = None
    ledger = BoundLedger(
        n=tp.code.n, k=tp.code.k, d=d, d_a=d_a, d_b=d_b, E_a=E_a, E_b=E_b,
        lower_energy=min(E_a, E_b),
        lower_distance=min(d_a, d_b),
        conjecture=min(d_a * E_b, d_b * E_a),
        upper_strip=min(d_b * E_a + E_b, d_a * E_b + E_a),
    )
    ledger.checks.append(Check(
        "lower_distance <= conjecture <= upper_strip",
        ledger.lower_distance <= ledger.conjecture <= ledger.upper_strip, True))

    # a concrete strip path from the factor witnesses bounds the product barrier from above
    strip = strip_path(tp, res_a.witness, res_b.witness, "row")
    strip_t = strip_path(tp, res_a.witness, res_b.witness, "column")
    ledger.strip_witness_value = min(strip.max_energy(tp.code.H), strip_t.max_energy(tp.code.H))

    if with_measurement:
        try:
            ledger.measured = code_barrier_exact(tp.code, cap=cap)
        except f2.InstanceTooLarge as exc:
            ledger.warnings.append(f"measurement skipped: {exc}")
    if ledger.measured is not None:
        V = ledger.measured.value
        ledger.checks.append(Check("lower_energy <= measured", ledger.lower_energy <= V, True))
        small = min(d_a, d_b) <= 2
        ledger.checks.append(Check(
            "lower_distance <= measured", ledger.lower_distance <= V, not small,
            "factor distance <= 2: downgraded to a warning" if small else ""))
        single = a.k == 1 and b.k == 1
        ledger.checks.append(Check(
            "measured <= upper_strip", V <= ledger.upper_strip, single,
            "" if single else "factors with several logicals: formula mixes minima of different logicals"))
        ledger.checks.append(Check("measured <= strip witness", V <= ledger.strip_witness_value, True))
        ledger.checks.append(Check("conjecture <= measured", ledger.conjecture <= V, False, "open conjecture"))
    for c in ledger.checks:
        if not c.holds:
            if c.enforced:
                raise BoundViolation(f"{c.claim} fails for {a!r} ⊗ {b!r}: {ledger.as_dict()}")
            if c.note:
                ledger.warnings.append(f"{c.claim} fails ({c.note})")
    return ledger
