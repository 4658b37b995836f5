"""Energy barriers of classical codes, tensor products and hypergraph-product codes."""

from .barrier import (
    BarrierResult,
    CheckEnergy,
    PauliPath,
    barrier_best_first,
    barrier_exact,
    code_barrier_exact,
    coset_barrier_exact,
    slice_deform_3d,
    verify_path,
)
from .chain import ChainComplex, homology_rank, kunneth_rank, tensor, validate
from .classical import (
    ClassicalCode,
    biregular_code,
    composite_repetition,
    distance,
    expansion_scan,
    repetition_code,
)
from .confinement import (
    barrier_bound_from_confinement,
    confinement_scan,
    reduced_weight,
    soundness_scan,
)
from .css import CssCode, canonical_logicals, quantum_distance
from .f2 import InstanceTooLarge
from .hgp import hgp2, hgp3, hgp4, predict_params3, predict_params4
from .pcm import load_code, read_pcm, write_manifest, write_pcm
from .tensor import bound_ledger
from .verify import emit_report, run_verify

__version__ = "0.1.0"

__all__ = [
    "BarrierResult",
    "ChainComplex",
    "CheckEnergy",
    "ClassicalCode",
    "CssCode",
    "InstanceTooLarge",
    "PauliPath",
    "barrier_best_first",
    "barrier_bound_from_confinement",
    "barrier_exact",
    "biregular_code",
    "bound_ledger",
    "canonical_logicals",
    "code_barrier_exact",
    "composite_repetition",
    "confinement_scan",
    "coset_barrier_exact",
    "distance",
    "emit_report",
    "expansion_scan",
    "hgp2",
    "hgp3",
    "hgp4",
    "homology_rank",
    "kunneth_rank",
    "load_code",
    "predict_params3",
    "predict_params4",
    "quantum_distance",
    "read_pcm",
    "reduced_weight",
    "repetition_code",
    "run_verify",
    "slice_deform_3d",
    "soundness_scan",
    "tensor",
    "validate",
    "verify_path",
    "write_manifest",
    "write_pcm",
]
