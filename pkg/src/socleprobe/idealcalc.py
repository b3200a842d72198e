"""Degreewise ideal calculus inside a truncated algebra.

Homogeneous ideals are stored slice by slice: ``slices[d]`` is the degree-d
part as a subspace of the degree-d standard-basis coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import exactla
from .exactla import Subspace
from .errors import InvariantViolation, UnsupportedInput, WindowError
from .localring import (
    Monomial,
    ParameterSystem,
    RingElement,
    RingModel,
    TruncatedAlgebra,
    require_certified,
)


@dataclass
class GradedIdealSlices:
    alg: TruncatedAlgebra
    generators: tuple[RingElement, ...]
    slices: list[Subspace]
    sound_upto: int

    def slice(self, d: int) -> Subspace:
        if d > self.sound_upto:
            raise WindowError(f"ideal slice in degree {d} requested, exact only up to {self.sound_upto}")
        return self.slices[d]

    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.slices)

    def __eq__(self, other):
        if not isinstance(other, GradedIdealSlices):
            return NotImplemented
        upto = min(self.sound_upto, other.sound_upto)
        return all(self.slices[d] == other.slices[d] for d in range(upto + 1))


def _homogeneous(gens) -> tuple[RingElement, ...]:
    gens = tuple(g for g in gens if not g.is_zero)
    for g in gens:
        if not g.is_homogeneous:
            raise UnsupportedInput(f"{g} is not homogeneous")
    return gens


def ideal_slice(alg: TruncatedAlgebra, gens, d: int) -> Subspace:
    """Degree-d part of the ideal generated by homogeneous ``gens``."""
    rows = [alg.mult_matrix(g, d - g.degree) for g in gens if g.degree <= d]
    if not rows:
        return Subspace.zero(alg.dim(d), alg.p)
    return exactla.rref(np.vstack(rows), alg.p, alg.dim(d))


def ideal_subspace(alg: TruncatedAlgebra, gens, upto: int) -> GradedIdealSlices:
    gens = _homogeneous(alg.ring.element(g) for g in gens)
    if upto > alg.N - 1:
        raise WindowError(f"ideal slices up to degree {upto} need N > {upto}, have N={alg.N}")
    slices = [ideal_slice(alg, gens, d) for d in range(upto + 1)]
    return GradedIdealSlices(alg, gens, slices, upto)


def maximal_power(alg: TruncatedAlgebra, i: int, upto: int) -> GradedIdealSlices:
    """m^i: every slice of degree >= i."""
    if upto > alg.N - 1:
        raise WindowError(f"m^{i} slices up to degree {upto} exceed N={alg.N}")
    slices = [
        Subspace.full(alg.dim(d), alg.p) if d >= i else Subspace.zero(alg.dim(d), alg.p) for d in range(upto + 1)
    ]
    gens = tuple(alg.element(np.eye(alg.dim(i), dtype=np.int64)[k], i) for k in range(alg.dim(i))) if i < alg.N else ()
    return GradedIdealSlices(alg, gens, slices, upto)


def artinian_degree(alg: TruncatedAlgebra, gens, limit: int) -> tuple[int | None, tuple[int, ...]]:
    """Least M <= limit with (gens)_M equal to the whole slice R_M.

    Also returns the Hilbert function of R/(gens) in degrees 0..M. Because R
    is generated in degree 1, a full slice stays full; that is re-checked on
    the next degree when the window allows.
    """
    gens = _homogeneous(gens)
    hq = []
    for d in range(min(limit, alg.N - 1) + 1):
        s = ideal_slice(alg, gens, d)
        hq.append(s.ambient_dim - s.dim)
        if s.is_full:
            if d + 1 < alg.N and not ideal_slice(alg, gens, d + 1).is_full:
                raise InvariantViolation(f"quotient slice refilled in degree {d + 1} after vanishing in degree {d}")
            return d, tuple(hq)
    return None, tuple(hq)


class ArtinianQuotient:
    """R/q for a homogeneous m-primary q, with canonical quotient coordinates.

    Degree-d quotient coordinates are the free columns of the RREF of q_d;
    ``lift`` and ``reduce`` convert between them and R_d coordinates.
    """

    def __init__(self, alg: TruncatedAlgebra, gens, artinian_degree: int):
        gens = _homogeneous(gens)
        M = int(artinian_degree)
        if M + 1 > alg.N - 1:
            raise WindowError(f"quotient with Artinian degree {M} needs N >= {M + 2}, have N={alg.N}")
        self.alg = alg
        self.generators = gens
        self.M = M
        self.ideal = ideal_subspace(alg, gens, M + 1)
        if not (self.ideal.slices[M].is_full and self.ideal.slices[M + 1].is_full):
            raise InvariantViolation(f"ideal is not m-primary by degree {M}")
        self._qmaps = [s.quotient_map() for s in self.ideal.slices[:M]]
        self._free = [s.free_columns for s in self.ideal.slices[:M]]

    @classmethod
    def from_sop(cls, alg: TruncatedAlgebra, sop: ParameterSystem) -> "ArtinianQuotient":
        return cls(alg, sop.elements, sop.artinian_degree)

    def dim(self, d: int) -> int:
        return len(self._free[d]) if 0 <= d < self.M else 0

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.dim(d) for d in range(self.M))

    @property
    def length(self) -> int:
        return sum(self.dims)

    def reduce(self, vectors, d: int) -> np.ndarray:
        """R_d coordinates (rows) to quotient coordinates."""
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.alg.dim(d))
        if not 0 <= d < self.M:
            return np.zeros((vectors.shape[0], 0), dtype=np.int64)
        return exactla.matmul(vectors, self._qmaps[d], self.alg.p)

    def lift(self, coords, d: int) -> np.ndarray:
        """Quotient coordinates (rows) to normal-form R_d coordinates."""
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, self.dim(d))
        out = np.zeros((coords.shape[0], self.alg.dim(d)), dtype=np.int64)
        if self.dim(d):
            out[:, list(self._free[d])] = coords
        return out

    def colon_maximal(self, d: int) -> Subspace:
        """(q : m)_d as a subspace of R_d."""
        alg = self.alg
        mats = [alg.mult_matrix(x, d) for x in alg.ring.variables()]
        targets = [self.ideal.slices[d + 1]] * len(mats)
        return exactla.joint_preimage(mats, targets, alg.dim(d), alg.p)

    def socle(self) -> dict[int, Subspace]:
        """Soc(R/q) per degree, in quotient coordinates."""
        out = {}
        for d in range(self.M):
            col = self.colon_maximal(d)
            out[d] = exactla.rref(self.reduce(col.basis, d), self.alg.p, self.dim(d))
        return out

    def element(self, coords, d: int) -> RingElement:
        return self.alg.element(self.lift(coords, d)[0], d)


@dataclass(frozen=True)
class SocleResult:
    dim: int
    basis: tuple[RingElement, ...]
    degrees: dict[int, int] = field(compare=False)


def quotient_socle(alg: TruncatedAlgebra, q) -> SocleResult:
    """Dimension and normal-form basis of Soc(R/q) for a certified parameter ideal."""
    sop = require_certified(alg.ring, q)
    if alg.N < sop.artinian_degree + 2:
        alg = alg.ring.algebra(sop.artinian_degree + 2)
    quot = ArtinianQuotient(alg, sop.elements, sop.artinian_degree)
    soc = quot.socle()
    basis = []
    for d, s in soc.items():
        basis.extend(quot.element(row, d) for row in s.basis)
    if not basis:
        raise InvariantViolation("a nonzero Artinian quotient must have a nonzero socle")
    return SocleResult(len(basis), tuple(basis), {d: s.dim for d, s in soc.items() if s.dim})


def colon_slices(alg: TruncatedAlgebra, q: GradedIdealSlices, f, upto: int) -> GradedIdealSlices:
    """(q : f) slice by slice: the preimage of q_{d + deg f} under multiplication by f."""
    f = alg.ring.element(f)
    e = f.degree
    if e is None:
        raise UnsupportedInput(f"colon by inhomogeneous or zero element {f}")
    if upto + e > q.sound_upto:
        raise WindowError(f"colon up to degree {upto} needs q exact to degree {upto + e}, have {q.sound_upto}")
    slices = [exactla.preimage(alg.mult_matrix(f, d), q.slices[d + e]) for d in range(upto + 1)]
    return GradedIdealSlices(alg, q.generators, slices, upto)


def is_torsion_monomial(ring: RingModel, u: Monomial) -> bool:
    """u is killed by a power of m: each x_t^e u lies in I for some e <= 1 + max exponent of x_t."""
    if ring.in_ideal(u):
        return False
    for t, E in enumerate(ring.max_exponents):
        for e in range(1, E + 2):
            w = list(u)
            w[t] += e
            if ring.in_ideal(tuple(w)):
                break
        else:
            return False
    return True


def gamma_torsion(ring_or_alg) -> tuple[int, tuple[Monomial, ...]]:
    """Monomial basis of Gamma_m(R), the m-torsion of R.

    A torsion monomial has every exponent below the largest exponent of
    that variable among the generators (otherwise raising it would give
    infinitely many torsion monomials), so a finite box is enumerated.
    """
    ring = ring_or_alg.ring if isinstance(ring_or_alg, TruncatedAlgebra) else ring_or_alg
    box = [range(E) for E in ring.max_exponents]
    basis = [u for u in itertools.product(*box) if is_torsion_monomial(ring, u)]
    basis.sort(key=lambda m: (sum(m), tuple(-e for e in m)))
    return len(basis), tuple(basis)


def gamma_slices(alg: TruncatedAlgebra, upto: int | None = None) -> list[Subspace]:
    """Gamma_m(R) slice by slice as coordinate subspaces."""
    upto = alg.N - 1 if upto is None else upto
    _, basis = gamma_torsion(alg.ring)
    out = []
    for d in range(upto + 1):
        idx = alg.index[d]
        rows = [np.eye(alg.dim(d), dtype=np.int64)[idx[u]] for u in basis if sum(u) == d]
        out.append(Subspace.span(rows, alg.dim(d), alg.p))
    return out
