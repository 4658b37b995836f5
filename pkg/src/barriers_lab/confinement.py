"""Reduced weights, confinement and soundness scans.

For an error ``e`` of one Pauli type, its syndrome is taken with the checks
that detect that type (``H_X`` for Z errors).  The reduced weight is the least
weight of any error with the same syndrome, i.e. the minimum over the coset
``e + ker(checks)``.
"""

from __future__ import annotations

import ast
import itertools
import operator
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import f2
from .css import CssCode

DEFAULT_COSET_CAP = 1 << 20

_BINOPS = {
    ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
    ast.Div: operator.truediv, ast.Pow: operator.pow,
}


def parse_function(expr: str) -> Callable[[float], float]:
    """Turn an arithmetic expression in ``x`` such as ``"x^3/4"`` into a function.

    Only numbers, ``x``, ``+ - * / ^ **`` and parentheses are accepted.
    """
    tree = ast.parse(expr.replace("^", "**"), mode="eval")

    def ev(node, x):
        if isinstance(node, ast.Expression):
            return ev(node.body, x)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.Name) and node.id == "x":
            return x
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left, x), ev(node.right, x))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand, x)
        raise ValueError(f"unsupported element in function expression {expr!r}")

    ev(tree, 1.0)

    def f(x):
        return ev(tree, x)
    f.expr = expr
    return f


def _as_function(f) -> Callable[[float], float]:
    return parse_function(f) if isinstance(f, str) else f


class CosetMinimizer:
    """Reduced weights for errors of one type on one code."""

    def __init__(self, css: CssCode, kind: str, cap: int = DEFAULT_COSET_CAP):
        self.css = css
        self.checks = css.checks(kind)
        kernel = f2.kernel_basis(self.checks)
        self.kernel = kernel
        self.exhaustive = (1 << kernel.shape[0]) <= cap
        if self.exhaustive:
            words = max(1, (css.n + 63) // 64)
            packed = f2.pack_rows(kernel) if kernel.shape[0] else np.zeros((0, words), np.uint64)
            self.table = f2.span_table(packed)

    def many(self, E: np.ndarray) -> np.ndarray:
        """Reduced weight of every row of ``E``."""
        E = np.asarray(E, dtype=np.uint8).reshape(-1, self.css.n)
        if not self.exhaustive:
            return np.array([self._descend(e) for e in E], dtype=np.int64)
        P = f2.pack_rows(E)
        out = np.empty(P.shape[0], dtype=np.int64)
        step = max(1, (1 << 22) // self.table.shape[0])
        for s in range(0, P.shape[0], step):
            block = P[s:s + step, None, :] ^ self.table[None, :, :]
            out[s:s + step] = np.bitwise_count(block).sum(axis=2).min(axis=1)
        return out

    def one(self, e) -> int:
        return int(self.many(f2.as_bits(e, 1, "error"))[0])

    def _descend(self, e: np.ndarray) -> int:
        # greedy: add kernel vectors while the weight drops
        best = e.copy()
        improved = True
        while improved:
            improved = False
            for v in self.kernel:
                cand = best ^ v
                if f2.weight(cand) < f2.weight(best):
                    best, improved = cand, True
        return f2.weight(best)


def reduced_weight(css: CssCode, e, kind: str, cap: int = DEFAULT_COSET_CAP) -> int:
    """Least weight over ``e + ker(checks)``; errors if the coset is too large."""
    m = CosetMinimizer(css, kind, cap)
    if not m.exhaustive:
        raise f2.InstanceTooLarge(f"coset of dimension {m.kernel.shape[0]} exceeds the cap of {cap}")
    return m.one(e)


@dataclass
class ConfinementReport:
    kind: str
    w_max: int
    t: int
    f: str
    points: dict[int, int] = field(default_factory=dict)
    by_error_weight: dict[int, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    errors_scanned: int = 0
    complete: bool = True
    exhaustive: bool = True

    def as_dict(self) -> dict:
        return {
            "kind": self.kind, "w_max": self.w_max, "t": self.t, "f": self.f,
            "complete": self.complete, "exhaustive": self.exhaustive,
            "errors_scanned": self.errors_scanned,
            "points": {str(k): v for k, v in sorted(self.points.items())},
            "by_error_weight": {str(k): v for k, v in sorted(self.by_error_weight.items())},
            "violations": self.violations,
        }


def _errors_by_weight(n: int, w: int, batch: int = 1 << 14):
    combos = itertools.combinations(range(n), w)
    while True:
        idx = list(itertools.islice(combos, batch))
        if not idx:
            return
        E = np.zeros((len(idx), n), dtype=np.uint8)
        rows = np.repeat(np.arange(len(idx)), w)
        E[rows, np.array(idx, dtype=np.int64).reshape(-1)] = 1
        yield idx, E


def confinement_scan(css: CssCode, kind: str, w_max: int, f, t: int,
                     budget_secs: float | None = None, cap: int = DEFAULT_COSET_CAP) -> ConfinementReport:
    """Exhaustive check of ``f(|σ(e)|) >= |e|_red`` over all errors up to weight ``w_max``.

    A violation is an error with reduced weight at most ``t`` for which the
    inequality fails.  When the time budget runs out the report is marked
    incomplete.  When the coset is too large to enumerate, reduced weights are
    greedy upper estimates and the report is marked non-exhaustive.
    """
    func = _as_function(f)
    report = ConfinementReport(kind.lower(), w_max, t, getattr(func, "expr", repr(f)))
    minimizer = CosetMinimizer(css, kind, cap)
    report.exhaustive = minimizer.exhaustive
    H = css.checks(kind)
    w_q = css.sparsity[1]
    deadline = None if budget_secs is None else time.monotonic() + budget_secs
    for w in range(1, min(w_max, css.n) + 1):
        for idx, E in _errors_by_weight(css.n, w):
            if deadline is not None and time.monotonic() > deadline:
                report.complete = False
                return report
            syn = f2.matmul(E, H.T).sum(axis=1)
            if np.any(syn > w_q * w):
                raise AssertionError("syndrome weight exceeds the sparsity bound")
            red = minimizer.many(E)
            report.errors_scanned += len(idx)
            report.by_error_weight[w] = max(report.by_error_weight.get(w, 0), int(red.max()))
            for s in np.unique(syn):
                report.points[int(s)] = max(report.points.get(int(s), 0), int(red[syn == s].max()))
            for r in np.flatnonzero(red <= t):
                if func(int(syn[r])) < red[r]:
                    report.violations.append({
                        "support": list(idx[r]), "syndrome_weight": int(syn[r]),
                        "reduced_weight": int(red[r]),
                    })
    return report


def check_error(css: CssCode, kind: str, e, f, t: int, cap: int = DEFAULT_COSET_CAP) -> dict:
    """Evaluate the confinement inequality for one explicit error."""
    func = _as_function(f)
    e = f2.as_bits(e, 1, "error")
    syn = f2.weight(f2.mat_vec(css.checks(kind), e))
    red = reduced_weight(css, e, kind, cap)
    return {
        "support": [int(i) for i in np.flatnonzero(e)],
        "syndrome_weight": syn,
        "reduced_weight": red,
        "violation": red <= t and func(syn) < red,
    }


@dataclass
class SoundnessReport:
    kind: str
    t: int
    f: str
    w_max: int
    worst_min_weight_by_syndrome_weight: dict[int, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)
    syndromes_seen: int = 0
    complete: bool = True

    def as_dict(self) -> dict:
        return {
            "kind": self.kind, "t": self.t, "f": self.f, "w_max": self.w_max,
            "complete": self.complete, "syndromes_seen": self.syndromes_seen,
            "worst_min_weight_by_syndrome_weight": {
                str(k): v for k, v in sorted(self.worst_min_weight_by_syndrome_weight.items())},
            "violations": self.violations,
        }


def soundness_scan(css: CssCode, kind: str, t: int, f, w_max: int = 4,
                   budget_secs: float | None = None, cap: int = DEFAULT_COSET_CAP) -> SoundnessReport:
    """Compare, for syndromes of weight below ``t``, the least error weight with ``f``.

    Syndromes are discovered by sweeping errors up to weight ``w_max``; for
    each one found, the exact least weight producing it is the reduced weight
    of any error that produces it.
    """
    func = _as_function(f)
    report = SoundnessReport(kind.lower(), t, getattr(func, "expr", repr(f)), w_max)
    minimizer = CosetMinimizer(css, kind, cap)
    if not minimizer.exhaustive:
        raise f2.InstanceTooLarge("coset too large for an exact soundness scan")
    H = css.checks(kind)
    seen: dict[bytes, None] = {b"": None}
    report.worst_min_weight_by_syndrome_weight[0] = 0
    deadline = None if budget_secs is None else time.monotonic() + budget_secs
    for w in range(1, min(w_max, css.n) + 1):
        for _, E in _errors_by_weight(css.n, w):
            if deadline is not None and time.monotonic() > deadline:
                report.complete = False
                report.syndromes_seen = len(seen)
                return report
            S = f2.matmul(E, H.T)
            syn_w = S.sum(axis=1)
            keep = np.flatnonzero((syn_w > 0) & (syn_w < t))
            fresh = []
            for r in keep:
                key = np.packbits(S[r]).tobytes()
                if key not in seen:
                    seen[key] = None
                    fresh.append(r)
            if not fresh:
                continue
            red = minimizer.many(E[fresh])
            for r, m in zip(fresh, red):
                x = int(syn_w[r])
                prev = report.worst_min_weight_by_syndrome_weight.get(x)
                report.worst_min_weight_by_syndrome_weight[x] = max(prev or 0, int(m))
                if m > func(x):
                    report.violations.append({
                        "syndrome": [int(i) for i in np.flatnonzero(S[r])],
                        "syndrome_weight": x, "min_error_weight": int(m),
                    })
    report.syndromes_seen = len(seen)
    return report


def barrier_bound_from_confinement(t: int, f, d: int) -> int:
    """Least integer ``x`` with ``f(x) >= (d - 1) / 2``.

    With ``(t, f)``-confinement and ``t`` at most the distance, this is a lower
    bound on the energy barrier.
    """
    if t > d:
        raise ValueError(f"confinement range t = {t} exceeds the distance d = {d}")
    func = _as_function(f)
    goal = (d - 1) / 2
    x = 0
    while func(x) < goal:
        x += 1
        if x > 10 * max(d, 1) ** 2:
            raise ValueError("f does not reach (d - 1) / 2; is it increasing?")
    return x


def expected_error_count(n: int, w_max: int) -> int:
    return sum(comb(n, w) for w in range(1, w_max + 1))
