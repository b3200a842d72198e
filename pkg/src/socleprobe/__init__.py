"""Exact socle, local cohomology and Gorenstein computations for rings
k[x_1..x_n]/I with I monomial and k a prime field."""

__version__ = "0.1.0"

from .dim1 import Dim1Invariants, dim1_bound, reduction_number, torsion_gap
from .exactla import DEFAULT_PRIME, Subspace, kernel, lattice, rank, rref
from .gorprobe import family_ring, family_xy, gorenstein_dim1, is_irreducible, probe_ell
from .idealcalc import ArtinianQuotient, colon_slices, gamma_torsion, ideal_subspace, quotient_socle
from .limits import det_transition, limit_closure, power_quotient_system, verify_ps_consequence
from .localring import (
    ParameterSystem,
    RingElement,
    RingModel,
    RingSpec,
    TruncatedAlgebra,
    certify_sop,
    load_ring,
    multiply,
    truncate,
)

__all__ = [
    "ArtinianQuotient",
    "DEFAULT_PRIME",
    "Dim1Invariants",
    "ParameterSystem",
    "RingElement",
    "RingModel",
    "RingSpec",
    "Subspace",
    "TruncatedAlgebra",
    "certify_sop",
    "colon_slices",
    "det_transition",
    "dim1_bound",
    "family_ring",
    "family_xy",
    "gamma_torsion",
    "gorenstein_dim1",
    "ideal_subspace",
    "is_irreducible",
    "kernel",
    "lattice",
    "limit_closure",
    "load_ring",
    "multiply",
    "power_quotient_system",
    "probe_ell",
    "quotient_socle",
    "rank",
    "reduction_number",
    "rref",
    "torsion_gap",
    "truncate",
    "verify_ps_consequence",
]
