"""Finite fusion frames: operators, spectral tetris, complements and completions."""
from .completion import TightCompletion, minimal_tight_constant, shift_completion, tight_completion
from .complements import naimark_complement, naimark_dilation, spatial_complement
from .errors import FusionFrameError, InfeasibleError, PreconditionError
from .model import (
    FusionFrame,
    SpectrumSpec,
    Subspace,
    VerificationReport,
    WeightedSubspace,
    chordal_distance_sq,
    fusion_frame_operator,
    validate,
)
from .reconstruct import Reconstructor, measure, reconstruct
from .tetris import check_feasibility_integer, check_feasibility_real, fcre, ffcie, ffcre

__all__ = [
    "FusionFrame", "SpectrumSpec", "Subspace", "WeightedSubspace", "VerificationReport",
    "fusion_frame_operator", "chordal_distance_sq", "validate",
    "check_feasibility_integer", "check_feasibility_real", "ffcie", "ffcre", "fcre",
    "spatial_complement", "naimark_complement", "naimark_dilation",
    "shift_completion", "tight_completion", "minimal_tight_constant", "TightCompletion",
    "measure", "reconstruct", "Reconstructor",
    "FusionFrameError", "InfeasibleError", "PreconditionError",
]
