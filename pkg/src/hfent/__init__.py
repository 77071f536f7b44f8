"""Finite-group (co)homology, higher-form gauging and entanglement sum rules."""

from hfent.complexes import (
    Bipartition,
    Chain,
    Cochain,
    DeltaComplex,
    boundary,
    coboundary,
    library_complex,
    library_cut,
    load_complex,
    load_cut,
    make_bipartition,
    pairing,
)
from hfent.coupling import conjugate, dual_coupling, minimal_coupling
from hfent.entropy import entanglement_entropy, symmetric_eigenstates
from hfent.factorize import factorize
from hfent.groups import Angle, FiniteAbelianGroup
from hfent.hilbert import HilbertModel, PhaseDiagonal, projector_inv
from hfent.homology import cohomology, homology, mv_criterion

__version__ = "0.1.0"

__all__ = [
    "Angle",
    "FiniteAbelianGroup",
    "DeltaComplex",
    "Chain",
    "Cochain",
    "Bipartition",
    "boundary",
    "coboundary",
    "pairing",
    "library_complex",
    "library_cut",
    "load_complex",
    "load_cut",
    "make_bipartition",
    "homology",
    "cohomology",
    "mv_criterion",
    "HilbertModel",
    "PhaseDiagonal",
    "projector_inv",
    "minimal_coupling",
    "dual_coupling",
    "conjugate",
    "factorize",
    "entanglement_entropy",
    "symmetric_eigenstates",
]
