"""Command-line entry point: ``barriers-lab <command> ...``.

All configuration comes from flags; no environment variables are read.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import f2
from .barrier import (
    DEFAULT_EXACT_CAP,
    CheckEnergy,
    barrier_best_first,
    barrier_exact,
    code_barrier_exact,
    coset_barrier_exact,
)
from .classical import ClassicalCode, composite_repetition, repetition_code
from .confinement import confinement_scan, soundness_scan
from .css import CssCode, canonical_logicals, label_str, logical_space
from .hgp import hgp2, hgp3, hgp4, predict_params
from .pcm import format_pcm, load_code, write_manifest
from .tensor import bound_ledger
from .verify import SUITES, VerifyConfig, emit_report, run_verify


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # Subcommands get the same flags with suppressed defaults, so a flag given
    # before or after the command name both take effect.
    p = argparse.ArgumentParser(add_help=False)

    def default(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--seed", type=int, default=default(7), help="seed for random choices (default 7)")
    p.add_argument("--cap-exact", type=int, default=default(DEFAULT_EXACT_CAP),
                   help="largest qubit count for exhaustive state-space searches")
    p.add_argument("--budget-secs", type=float, default=default(None), help="time budget for scans")
    p.add_argument("--out", default=default(None), help="output file (directory for hgp)")
    p.add_argument("--format", choices=("json", "table", "csv"), default=default("json"))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="barriers-lab", parents=[_global_flags(False)],
                                     description="Energy barriers of classical and product quantum codes.")
    common = [_global_flags(True)]
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=common, help="generate a classical parity-check matrix")
    gen.add_argument("family", choices=("rep", "composite"))
    gen.add_argument("--len", type=int, required=True, dest="length")
    gen.add_argument("--periodic", action="store_true")

    hgp = sub.add_parser("hgp", parents=common, help="build a hypergraph-product code")
    hgp.add_argument("--dim", type=int, choices=(2, 3, 4), required=True)
    hgp.add_argument("--factors", required=True, help="comma-separated matrix files, one per factor")

    ten = sub.add_parser("tensor", parents=common, help="barrier bounds for a tensor-product code")
    ten.add_argument("--a", required=True)
    ten.add_argument("--b", required=True)
    ten.add_argument("--measure", action="store_true", help="also compute the exact barrier")

    log = sub.add_parser("logicals", parents=common, help="list logical operators")
    log.add_argument("--code", required=True)
    log.add_argument("--kind", choices=("z", "x"), required=True)
    log.add_argument("--canonical", action="store_true")

    bar = sub.add_parser("barrier", parents=common, help="energy barrier of a code or logical")
    bar.add_argument("--code", required=True)
    bar.add_argument("--kind", choices=("z", "x", "classical"), required=True)
    bar.add_argument("--target", help="canonical label such as 1:0,0,0, or a 0/1 string")
    mode = bar.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exhaustive search (default)")
    mode.add_argument("--best-first", action="store_true", help="heuristic search toward the target")
    bar.add_argument("--frontier", type=int, default=10**6)

    con = sub.add_parser("confine", parents=common, help="confinement or soundness scan")
    con.add_argument("--code", required=True)
    con.add_argument("--kind", choices=("z", "x"), required=True)
    con.add_argument("--wmax", type=int, default=4)
    con.add_argument("--f", required=True, help='function such as "x^3/4"')
    con.add_argument("--t", type=int, required=True)
    con.add_argument("--soundness", action="store_true")

    ver = sub.add_parser("verify", parents=common, help="run a named verification suite")
    ver.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)}")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _load_css(path: str) -> CssCode:
    code = load_code(path)
    if not isinstance(code, CssCode):
        raise ValueError(f"{path} holds a classical code; a CSS manifest is needed here")
    return code


def cmd_gen(args) -> int:
    code = repetition_code(args.length, args.periodic) if args.family == "rep" else composite_repetition(args.length)
    _emit(format_pcm(code.H), args.out)
    return 0


def cmd_hgp(args) -> int:
    paths = args.factors.split(",")
    if len(paths) != args.dim:
        raise ValueError(f"--dim {args.dim} needs {args.dim} factor files, got {len(paths)}")
    factors = [load_code(p) for p in paths]
    if not all(isinstance(f, ClassicalCode) for f in factors):
        raise ValueError("factors must be classical parity-check matrices")
    code = {2: hgp2, 3: hgp3, 4: hgp4}[args.dim](*factors)
    pred = predict_params(code.factors, [b.pattern for b in code.blocks]).as_dict()
    provenance = {"command": f"hgp --dim {args.dim} --factors {args.factors}", "seed": args.seed}
    out = Path(args.out or f"hgp{args.dim}")
    path = write_manifest(out, code, f"hgp{args.dim}", pred, provenance)
    _emit(_json({"manifest": str(path), "n": code.n, "k": code.k, "predicted_params": pred}), None)
    return 0


def cmd_tensor(args) -> int:
    a, b = load_code(args.a), load_code(args.b)
    ledger = bound_ledger(a, b, with_measurement=args.measure, cap=args.cap_exact)
    _emit(_json(ledger.as_dict()), args.out)
    return 0


def _block_of(css: CssCode, op: np.ndarray) -> list[str]:
    return [b.name for b in css.blocks if op[b.offset:b.stop].any()]


def cmd_logicals(args) -> int:
    css = _load_css(args.code)
    if args.canonical:
        cset = canonical_logicals(css, args.kind)
        ops, labels = cset.operators, [label_str(lab) for lab in cset.labels]
    else:
        ops = logical_space(css, args.kind)
        labels = [str(i) for i in range(ops.shape[0])]
    doc = [{"label": lab, "weight": int(op.sum()), "blocks": _block_of(css, op),
            "support": np.flatnonzero(op).tolist()} for lab, op in zip(labels, ops)]
    _emit(_json({"kind": args.kind, "k": css.k, "operators": doc}), args.out)
    return 0


def _resolve_target(code, kind: str, target: str | None) -> np.ndarray | None:
    if target is None:
        return None
    if set(target) <= {"0", "1"} and len(target) == code.n:
        return np.array([int(c) for c in target], dtype=np.uint8)
    if isinstance(code, CssCode):
        cset = canonical_logicals(code, kind)
        return cset.operators[cset.find(target)]
    raise ValueError(f"target {target!r} is neither a canonical label nor a length-{code.n} bit string")


def cmd_barrier(args) -> int:
    code = load_code(args.code)
    kind = args.kind
    if kind == "classical":
        if not isinstance(code, ClassicalCode):
            raise ValueError("--kind classical needs a classical code")
        checks, css_kind = code.H, None
    else:
        if not isinstance(code, CssCode):
            code = CssCode.from_classical(code)
        checks, css_kind = code.checks(kind), kind
    target = _resolve_target(code, kind, args.target)
    if args.best_first:
        if target is None:
            reps = code.codewords_basis if css_kind is None else logical_space(code, kind)
            if reps.shape[0] == 0:
                raise ValueError("no nontrivial targets")
            target = reps[0]
        result = barrier_best_first(checks, code.n, target, frontier_cap=args.frontier, seed=args.seed)
    elif target is None:
        result = code_barrier_exact(code, css_kind, cap=args.cap_exact)
    elif css_kind is None:
        result = barrier_exact(CheckEnergy(checks), code.n, target, cap=args.cap_exact)
    else:
        result = coset_barrier_exact(code, kind, target, cap=args.cap_exact)
    _emit(_json(result.as_dict()), args.out)
    return 0


def cmd_confine(args) -> int:
    css = _load_css(args.code)
    if args.soundness:
        report = soundness_scan(css, args.kind, args.t, args.f, w_max=args.wmax, budget_secs=args.budget_secs)
    else:
        report = confinement_scan(css, args.kind, args.wmax, args.f, args.t, budget_secs=args.budget_secs)
    _emit(_json(report.as_dict()), args.out)
    return 0


def cmd_verify(args) -> int:
    config = VerifyConfig(seed=args.seed, cap_exact=args.cap_exact, budget_secs=args.budget_secs)
    report = run_verify(args.suite, config)
    _emit(emit_report(report, args.format, include_runtime=args.format == "table"), args.out)
    return 0 if report.ok else 1


COMMANDS = {"gen": cmd_gen, "hgp": cmd_hgp, "tensor": cmd_tensor, "logicals": cmd_logicals,
            "barrier": cmd_barrier, "confine": cmd_confine, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except f2.InstanceTooLarge as exc:
        print(f"barriers-lab: instance too large: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, FileNotFoundError, IndexError) as exc:
        print(f"barriers-lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
