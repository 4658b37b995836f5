"""Plain-text matrix files and JSON code manifests.

Matrix files ("pcm v1"): a header line ``<rows> <cols>`` followed by one line
of ``0``/``1`` characters per row.  Blank lines and lines starting with ``#``
are ignored.

A manifest is a JSON file naming the matrix files of a code (paths relative
to the manifest), its qubit block layout, cached parameters and provenance.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import f2
from .classical import ClassicalCode
from .css import CssCode, blocks_from_patterns

MANIFEST_FORMAT = "manifest v1"


def parse_pcm(text: str, source: str = "<string>") -> np.ndarray:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError(f"{source}: empty matrix file")
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise ValueError(f"{source}: header must be '<rows> <cols>', got {lines[0]!r}")
    rows, cols = int(header[0]), int(header[1])
    body = lines[1:]
    found_cols = {len(ln) for ln in body}
    if len(body) != rows or (body and found_cols != {cols}):
        shape = f"{len(body)} rows of lengths {sorted(found_cols)}" if body else "0 rows"
        raise ValueError(f"{source}: header declares {rows}x{cols} but body has {shape}")
    M = np.zeros((rows, cols), dtype=np.uint8)
    for r, ln in enumerate(body):
        if set(ln) - {"0", "1"}:
            raise ValueError(f"{source}: row {r} contains characters other than 0/1")
        M[r] = np.frombuffer(ln.encode(), dtype=np.uint8) - ord("0")
    return M


def read_pcm(path) -> np.ndarray:
    path = Path(path)
    return parse_pcm(path.read_text(), str(path))


def format_pcm(M) -> str:
    M = f2.as_bits(M, 2, "matrix")
    lines = [f"{M.shape[0]} {M.shape[1]}"]
    lines += ["".join("1" if b else "0" for b in row) for row in M]
    return "\n".join(lines) + "\n"


def write_pcm(path, M) -> None:
    Path(path).write_text(format_pcm(M))


def code_params(code) -> dict:
    if isinstance(code, ClassicalCode):
        return {"n": code.n, "m": code.m, "k": code.k, "rank": code.rank}
    w_c, w_q = code.sparsity
    return {"n": code.n, "k": code.k, "rank_X": code.rank_X, "rank_Z": code.rank_Z, "w_c": w_c, "w_q": w_q}


def write_manifest(out_dir, code, construction: str = "", predicted: dict | None = None,
                   provenance: dict | None = None) -> Path:
    """Write the matrices of ``code`` and a ``manifest.json`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: dict[str, str] = {}
    if isinstance(code, ClassicalCode):
        write_pcm(out / "H.pcm", code.H)
        files["H"] = "H.pcm"
        kind = "classical"
    else:
        kind = "css"
        for name in ("H_X", "H_Z", "meta_X", "meta_Z"):
            M = getattr(code, name)
            if M is not None:
                write_pcm(out / f"{name}.pcm", M)
                files[name] = f"{name}.pcm"
    factors = []
    for i, f in enumerate(getattr(code, "factors", ()) or (), start=1):
        write_pcm(out / f"factor_{i}.pcm", f.H)
        factors.append(f"factor_{i}.pcm")
    manifest = {
        "format": MANIFEST_FORMAT,
        "kind": kind,
        "name": code.name,
        "construction": construction,
        "files": files,
        "factors": factors,
        "dims": code_params(code),
        "block_layout": [b.as_dict() | {"pattern": "".join(b.pattern)} for b in getattr(code, "blocks", ())],
        "predicted_params": predicted,
        "validated": True,
        "provenance": provenance or {},
    }
    path = out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def load_code(path):
    """Load a code from a manifest or a bare matrix file (read as a classical code)."""
    path = Path(path)
    if path.suffix != ".json":
        return ClassicalCode(read_pcm(path), name=path.stem)
    manifest = json.loads(path.read_text())
    if manifest.get("format") != MANIFEST_FORMAT:
        raise ValueError(f"{path}: unsupported manifest format {manifest.get('format')!r}")
    base = path.parent
    files = manifest["files"]
    for rel in list(files.values()) + manifest.get("factors", []):
        if not (base / rel).exists():
            raise FileNotFoundError(f"{path}: referenced file {rel} does not exist")
    if manifest["kind"] == "classical":
        code = ClassicalCode(read_pcm(base / files["H"]), name=manifest.get("name", ""))
    else:
        factors = tuple(ClassicalCode(read_pcm(base / rel), name=Path(rel).stem)
                        for rel in manifest.get("factors", []))
        patterns = [tuple(b["pattern"]) for b in manifest.get("block_layout", [])]
        blocks = blocks_from_patterns(patterns, factors) if factors and patterns else ()
        code = CssCode(
            read_pcm(base / files["H_X"]),
            read_pcm(base / files["H_Z"]),
            meta_X=read_pcm(base / files["meta_X"]) if "meta_X" in files else None,
            meta_Z=read_pcm(base / files["meta_Z"]) if "meta_Z" in files else None,
            blocks=blocks,
            factors=factors,
            name=manifest.get("name", ""),
        )
    cached = manifest.get("dims")
    if cached and cached != code_params(code):
        raise ValueError(f"{path}: cached parameters {cached} do not match the matrices {code_params(code)}")
    return code
