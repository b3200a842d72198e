"""Invariants of one-dimensional rings: reduction number c, torsion gap g,
and the Gorenstein-detection bound max{c, g} + 1.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from . import exactla
from .errors import InconclusiveError, InvariantViolation, UnsupportedInput
from .idealcalc import gamma_slices, gamma_torsion, maximal_power
from .localring import RingElement, RingModel, certify_sop

EXACT = "exact"
PROBABILISTIC = "probabilistic-upper-bound"


def _require_dim1(ring: RingModel):
    if ring.dim != 1:
        raise UnsupportedInput(f"this invariant is defined for dimension 1 rings, ring has dimension {ring.dim}")


def ring_seed(ring: RingModel, *extra: int) -> list[int]:
    """Seed material derived from the presentation, stable across processes."""
    key = repr((ring.spec.vars, ring.spec.char, ring.spec.ideal_gens)).encode()
    return [zlib.crc32(key), *(int(e) for e in extra)]


def torsion_gap(ring: RingModel) -> int:
    """Least i with m^i meeting Gamma_m(R) only in 0."""
    _require_dim1(ring)
    _, basis = gamma_torsion(ring)
    if not basis:
        return 0
    top = max(sum(u) for u in basis)
    alg = ring.algebra(max(ring.default_truncation(), top + 2))
    gamma = gamma_slices(alg, top + 1)
    for i in range(top + 2):
        mi = maximal_power(alg, i, top + 1)
        if all(mi.slices[d].meet(gamma[d]).is_zero for d in range(top + 2)):
            return i
    raise InvariantViolation("Gamma has no monomials above its top degree, so the loop must end")


@dataclass(frozen=True)
class ReductionNumber:
    c: int
    witness: RingElement
    certainty: str


def reduces(ring: RingModel, x: RingElement, i: int, N: int | None = None) -> bool:
    """Check (x) m^i = m^{i+1} on the degree i+1 slice (enough in a standard graded ring)."""
    alg = ring.algebra(max(ring.default_truncation(N), i + 3))
    target = alg.dim(i + 1)
    if target == 0:
        return True
    if alg.dim(i) == 0:
        return False
    return exactla.rank(alg.mult_matrix(x, i), ring.p) == target


def _candidates(ring: RingModel, i: int, attempts: int, seed: int):
    yield from ring.variables()
    rng = np.random.default_rng(ring_seed(ring, seed, i))
    for _ in range(attempts):
        coeffs = rng.integers(0, ring.p, size=ring.n)
        f = RingElement(ring, [(v.terms[0][0], int(c)) for v, c in zip(ring.variables(), coeffs)])
        if not f.is_zero:
            yield f


def reduction_number(ring: RingModel, attempts: int = 32, seed: int = 0, truncation: int | None = None) -> ReductionNumber:
    """Least i admitting a linear parameter x with (x) m^i = m^{i+1}.

    Variables are tried before ``attempts`` seeded random linear forms. The
    answer is exact when every smaller i is ruled out by dimension count
    (H(i+1) > H(i)); otherwise it is an upper bound that a luckier sample
    might improve.
    """
    _require_dim1(ring)
    N = ring.default_truncation(truncation)
    for i in range(N - 1):
        for x in _candidates(ring, i, attempts, seed):
            if reduces(ring, x, i, N) and certify_sop(ring, [x], N).certified:
                exact = all(ring.hilbert(j + 1) > ring.hilbert(j) for j in range(i))
                return ReductionNumber(i, x, EXACT if exact else PROBABILISTIC)
    raise InconclusiveError(f"no reduction witness found for i < {N - 1} with {attempts} random attempts per degree")


@dataclass(frozen=True)
class Dim1Invariants:
    c: int
    c_witness: RingElement
    c_certainty: str
    g: int
    bound_n: int
    gamma_dim: int


def dim1_bound(ring: RingModel, attempts: int = 32, seed: int = 0) -> Dim1Invariants:
    red = reduction_number(ring, attempts, seed)
    if not reduces(ring, red.witness, red.c):
        raise InvariantViolation("reduction witness failed re-verification")
    g = torsion_gap(ring)
    gdim, _ = gamma_torsion(ring)
    return Dim1Invariants(red.c, red.witness, red.certainty, g, max(red.c, g) + 1, gdim)
