"""Photon-subtracted two-mode squeezed vortex states.

Closed-form wavefunctions and Wigner functions, a truncated Fock-space
oracle, vortex charge detection and entanglement measures.
"""

from .errors import ConvergenceError, CutoffError
from .fock import (
    FockState2,
    HeraldConfig,
    SchmidtState,
    SqueezeParams,
    apply_ladder,
    fidelity,
    herald_subtract,
    normalize,
    schmidt_coefficients,
    suggest_cutoff,
    tmsv,
    wavefunction_from_fock,
)
from .entanglement import (
    CoefficientSource,
    EntanglementCurve,
    MeasureKind,
    coefficients,
    ef_paper,
    entanglement_entropy,
    log_negativity,
    negativity_ratio,
)
from .grid import GridSpec
from .states import PolyGauss, subtracted_wavefunction, tmsv_wavefunction
from .vortexmap import ChargeResult, Singularity, locate_singularities, total_charge
from .wigner import (
    NegativityReport,
    PhaseSpacePoint4,
    WignerSliceSpec,
    negativity_volume,
    slice_field,
    wigner_tmsv,
)

__all__ = [
    "ChargeResult",
    "CoefficientSource",
    "ConvergenceError",
    "CutoffError",
    "EntanglementCurve",
    "FockState2",
    "GridSpec",
    "HeraldConfig",
    "MeasureKind",
    "NegativityReport",
    "PhaseSpacePoint4",
    "PolyGauss",
    "SchmidtState",
    "Singularity",
    "SqueezeParams",
    "WignerSliceSpec",
    "apply_ladder",
    "coefficients",
    "ef_paper",
    "entanglement_entropy",
    "fidelity",
    "herald_subtract",
    "locate_singularities",
    "log_negativity",
    "negativity_ratio",
    "negativity_volume",
    "normalize",
    "schmidt_coefficients",
    "slice_field",
    "subtracted_wavefunction",
    "suggest_cutoff",
    "tmsv",
    "tmsv_wavefunction",
    "total_charge",
    "wavefunction_from_fock",
    "wigner_tmsv",
]
