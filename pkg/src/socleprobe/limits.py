"""Parameter-power direct systems and their limit.

For a system of parameters x_1..x_d the quotients R/(x_1^i, ..., x_d^i) form
a direct system under multiplication by x_1...x_d whose limit is the top
local cohomology H^d_m(R). This module materializes the stages as
ArtinianQuotients, pushes socles forward, and measures where the socle map
to the limit becomes surjective.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import exactla
from .exactla import Subspace
from .errors import ContainmentError, InputError, InvariantViolation, WindowError
from .idealcalc import ArtinianQuotient, artinian_degree, ideal_subspace
from .localring import ParameterSystem, RingElement, RingModel, TruncatedAlgebra, require_certified

DEFAULT_WINDOW = 3


class GradedMap:
    """A degree-``shift`` linear map between two ArtinianQuotients.

    ``blocks[d]`` has shape (source.dim(d), target.dim(d + shift)).
    """

    def __init__(self, source: ArtinianQuotient, target: ArtinianQuotient, shift: int, blocks: dict[int, np.ndarray]):
        self.source = source
        self.target = target
        self.shift = shift
        self.blocks = blocks

    def __repr__(self):
        return f"GradedMap(shift={self.shift}, rank={self.rank})"

    @classmethod
    def multiplication(cls, source: ArtinianQuotient, target: ArtinianQuotient, f: RingElement, shift: int | None = None, check: bool = True) -> "GradedMap":
        """Multiplication by homogeneous f; raises ContainmentError unless f * q_source lies in q_target."""
        alg = source.alg
        if f.is_zero:
            if shift is None:
                raise InputError("a zero multiplier needs an explicit degree shift")
            blocks = {d: np.zeros((source.dim(d), target.dim(d + shift)), dtype=np.int64) for d in range(source.M)}
            return cls(source, target, shift, blocks)
        e = f.degree
        if e is None:
            raise InputError(f"{f} is not homogeneous")
        blocks = {}
        for d in range(source.M):
            if d + e >= target.M:
                blocks[d] = np.zeros((source.dim(d), 0), dtype=np.int64)
                continue
            T = alg.mult_matrix(f, d)
            lifted = source.lift(np.eye(source.dim(d), dtype=np.int64), d)
            blocks[d] = target.reduce(exactla.matmul(lifted, T, alg.p), d + e)
        if check:
            for d in range(max(0, target.M - e)):
                q_src = source.ideal.slices[d] if d < source.M else Subspace.full(alg.dim(d), alg.p)
                if q_src.dim and target.reduce(exactla.matmul(q_src.basis, alg.mult_matrix(f, d), alg.p), d + e).any():
                    raise ContainmentError(f"multiplication by {f} does not map the source ideal into the target ideal")
        return cls(source, target, e, blocks)

    def image(self, subspaces: dict[int, Subspace]) -> dict[int, Subspace]:
        p = self.source.alg.p
        out = {d: Subspace.zero(self.target.dim(d), p) for d in range(self.target.M)}
        for d, s in subspaces.items():
            t = d + self.shift
            if s.dim and t < self.target.M:
                out[t] = out[t].join(s.image(self.blocks[d]))
        return out

    def restrict(self, subspaces: dict[int, Subspace]) -> dict[int, np.ndarray]:
        """Images of the given basis vectors, degree by degree (not just their span)."""
        p = self.source.alg.p
        return {d: exactla.matmul(s.basis, self.blocks[d], p) for d, s in subspaces.items() if s.dim}

    def compose(self, after: "GradedMap") -> "GradedMap":
        """``after`` following ``self``."""
        p = self.source.alg.p
        blocks = {}
        for d, b in self.blocks.items():
            t = d + self.shift
            if t < after.source.M:
                blocks[d] = exactla.matmul(b, after.blocks[t], p)
            else:
                blocks[d] = np.zeros((b.shape[0], after.target.dim(d + self.shift + after.shift)), dtype=np.int64)
        return GradedMap(self.source, after.target, self.shift + after.shift, blocks)

    @property
    def rank(self) -> int:
        return sum(exactla.rank(b, self.source.alg.p) for b in self.blocks.values() if b.size)

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if self.source.dims != other.source.dims or self.target.dims != other.target.dims:
            return False
        zero_self = all(not b.any() for b in self.blocks.values())
        zero_other = all(not b.any() for b in other.blocks.values())
        if zero_self and zero_other:
            return True
        return self.shift == other.shift and all(np.array_equal(self.blocks[d], other.blocks[d]) for d in self.blocks)


def product(ring: RingModel, elements) -> RingElement:
    out = ring.one()
    for f in elements:
        out = out * f
    return out


def stage_generators(sop: ParameterSystem, i: int) -> list[RingElement]:
    return [x**i for x in sop.elements]


def _stage_degree_bound(sop: ParameterSystem, i: int) -> int:
    """m^B lies in (x_1^i..x_d^i) for B = M * (d(i-1) + 1), by pigeonhole on q^{d(i-1)+1}."""
    d = len(sop.elements)
    return sop.artinian_degree * (d * (i - 1) + 1)


def algebra_for(ring: RingModel, gens, bound: int, at_least: int = 0) -> tuple[TruncatedAlgebra, int]:
    """A truncation in which (gens) shows its Artinian degree M, with N >= M + 2.

    Escalates by 50% per round up to the a priori ``bound`` on M.
    """
    N = max(ring.default_truncation(), at_least)
    while True:
        alg = ring.algebra(N)
        M, _ = artinian_degree(alg, gens, N - 2)
        if M is not None:
            return alg, M
        if N >= bound + 2:
            raise InvariantViolation(f"ideal not m-primary below its a priori degree bound {bound}")
        N = min(math.ceil(N * 1.5), bound + 2)


@dataclass
class DirectSystemReport:
    sop: ParameterSystem
    i_max: int
    reference_stage: int
    window: int
    socle_dims: tuple[int, ...]
    image_dims: tuple[int, ...]
    stable_socle_dim: int
    surjectivity_index: int
    certification: str
    truncation: int
    artinian_degrees: tuple[int, ...] = ()
    socle_degrees: tuple[dict, ...] = field(default=(), repr=False)

    @property
    def certified(self) -> bool:
        return self.certification == "certified"

    def stage_socle_kernel_dim(self, i: int = 1) -> int:
        """dim of the part of Soc(R/q^[i]) that dies in the limit."""
        return self.socle_dims[i - 1] - self.image_dims[i - 1]


def _d1_push_steps(ring: RingModel, sop: ParameterSystem) -> int:
    """Pushes after which nothing more dies in dimension 1: ceil(g / deg x)."""
    from .dim1 import torsion_gap

    return math.ceil(torsion_gap(ring) / sop.degrees[0])


def power_quotient_system(ring: RingModel, sop, i_max: int | None = None, window: int = DEFAULT_WINDOW) -> DirectSystemReport:
    """Socle images of R/(x^i) in the limit, for stages i = 1..i_max.

    Images are compared at a reference stage ``i_max + w``. In dimension 1
    that is exact as soon as w * deg x >= g, since x^n kills Gamma_m(R) from
    then on and the kernel to the reference stage equals the kernel to the
    limit; and stage 1 + ceil(g / deg x) already surjects. In higher
    dimension the window only gives empirical evidence.
    """
    sop = require_certified(ring, sop)
    if window < 1:
        raise InputError("window must be at least 1")
    if ring.dim == 1:
        k = _d1_push_steps(ring, sop)
        w = max(window, k)
        expected = 1 + k
    else:
        k = None
        w = window
        expected = 2
    auto = i_max is None
    if auto:
        # in dimension 1 stage 1 + k is provably surjective, so no extra margin is needed
        i_max = expected if k is not None else 2 * expected + w
    if i_max < 1:
        raise InputError("i_max must be at least 1")
    for attempt in range(2):
        report = _run_system(ring, sop, i_max, w, k)
        if report.certified or report.surjectivity_index <= i_max - w:
            return report
        if attempt == 0 and auto:
            i_max *= 2
        else:
            break
    raise WindowError(
        f"socle images did not stabilize for {w} stages before i_max={i_max} "
        f"(index {report.surjectivity_index}); raise --imax"
    )


def _run_system(ring, sop, i_max, w, k) -> DirectSystemReport:
    T = i_max + w
    top_gens = stage_generators(sop, T)
    alg, M_T = algebra_for(ring, top_gens, _stage_degree_bound(sop, T), at_least=sop.artinian_degree + 2)
    stages = []
    for i in range(1, T + 1):
        gens = stage_generators(sop, i)
        M_i, _ = artinian_degree(alg, gens, alg.N - 2)
        if M_i is None:
            raise InvariantViolation(f"stage {i} not Artinian although stage {T} is")
        stages.append(ArtinianQuotient(alg, gens, M_i))
    socles = [q.socle() for q in stages]
    f = product(ring, sop.elements)
    top = stages[-1]
    images = []
    for i in range(1, i_max + 1):
        push = GradedMap.multiplication(stages[i - 1], top, f ** (T - i), shift=(T - i) * sum(sop.degrees), check=False)
        images.append(push.image(socles[i - 1]))
    stable = images[-1]
    image_dims = tuple(sum(s.dim for s in im.values()) for im in images)
    if any(a > b for a, b in zip(image_dims, image_dims[1:])):
        raise InvariantViolation(f"socle image dimensions decreased along the direct system: {image_dims}")
    index = next(i for i, im in enumerate(images, start=1) if im == stable)
    certified = k is not None and w >= k and i_max >= 1 + k
    return DirectSystemReport(
        sop=sop,
        i_max=i_max,
        reference_stage=T,
        window=w,
        socle_dims=tuple(sum(s.dim for s in soc.values()) for soc in socles),
        image_dims=image_dims,
        stable_socle_dim=image_dims[-1],
        surjectivity_index=index,
        certification="certified" if certified else f"empirical(window {w})",
        truncation=alg.N,
        artinian_degrees=tuple(q.M for q in stages),
        socle_degrees=tuple({d: s.dim for d, s in soc.items() if s.dim} for soc in socles),
    )


@dataclass
class DetTransition:
    outer: ArtinianQuotient
    inner: ArtinianQuotient
    matrix: tuple[tuple[RingElement, ...], ...]
    det: RingElement
    map: GradedMap


def _det(ring: RingModel, A) -> RingElement:
    d = len(A)
    total = ring.zero()
    for perm in itertools.permutations(range(d)):
        sign = 1
        for a in range(d):
            for b in range(a + 1, d):
                if perm[a] > perm[b]:
                    sign = -sign
        term = ring.one()
        for r, c in enumerate(perm):
            term = term * A[r][c]
        total = total + term.scale(sign)
    return total


def coefficient_matrix(alg: TruncatedAlgebra, outer, inner, rng: np.random.Generator | None = None):
    """A with inner_t = sum_j A[t][j] * outer_j, solved slice by slice.

    With ``rng`` a random kernel element is added to each row, giving an
    independent solution of the same system.
    """
    ring = alg.ring
    A = []
    for y in inner:
        D = y.degree
        slots = []
        blocks = []
        for x in outer:
            e = D - x.degree
            if e < 0:
                slots.append(None)
                continue
            slots.append((e, alg.dim(e)))
            blocks.append(alg.mult_matrix(x, e))
        if not blocks:
            raise ContainmentError(f"{y} has lower degree than every outer generator")
        stacked = np.vstack(blocks)
        sol = exactla.solve(stacked, alg.vector(y, D), alg.p)
        if sol is None:
            raise ContainmentError(f"{y} is not in the ideal generated by the outer system")
        if rng is not None:
            ker = exactla.kernel(stacked.T, alg.p)
            if ker.dim:
                c = rng.integers(0, alg.p, size=ker.dim)
                sol = (sol + exactla.matmul(c.reshape(1, -1), ker.basis, alg.p)[0]) % alg.p
        row = []
        pos = 0
        for slot in slots:
            if slot is None:
                row.append(ring.zero())
                continue
            e, n = slot
            row.append(alg.element(sol[pos : pos + n], e))
            pos += n
        A.append(tuple(row))
    return tuple(A)


def det_transition(ring: RingModel, outer, inner, rng: np.random.Generator | None = None, check: bool = True) -> DetTransition:
    """Multiplication by det A from R/(outer) to R/(inner), where inner = A * outer.

    A is not unique when the outer system has nontrivial syzygies. In a
    Cohen-Macaulay ring every choice gives the same map; otherwise two choices
    can differ by a map whose image dies in the limit, e.g. y^4 = y^2 * y^2 =
    (y^2 + x^2) * y^2 in k[x,y]/(x^3, x y^2).
    """
    outer = require_certified(ring, outer)
    inner = require_certified(ring, inner)
    top = max(outer.artinian_degree, inner.artinian_degree, *(y.degree for y in inner.elements)) + 2
    alg = ring.algebra(max(ring.default_truncation(), top))
    A = coefficient_matrix(alg, outer.elements, inner.elements, rng)
    det = _det(ring, A)
    src = ArtinianQuotient(alg, outer.elements, outer.artinian_degree)
    tgt = ArtinianQuotient(alg, inner.elements, inner.artinian_degree)
    shift = sum(inner.degrees) - sum(outer.degrees)
    gmap = GradedMap.multiplication(src, tgt, det, shift=shift, check=check)
    return DetTransition(src, tgt, A, det, gmap)


@dataclass
class LimitClosure:
    sop: ParameterSystem
    n_max: int
    horizon: int | None
    slices: list[Subspace]
    chain_dims: tuple[int, ...]
    stabilized: bool
    certified: bool
    quotient_dim: int
    socle_dim: int
    truncation: int
    alg: TruncatedAlgebra = field(repr=False)

    def contains(self, f) -> bool:
        f = self.alg.ring.element(f)
        for d in f.degrees:
            if d < len(self.slices) and not self.slices[d].member(self.alg.vector(f, d)):
                return False
        return True

    def basis(self) -> list[RingElement]:
        """Normal-form basis of closure / (sop) in degrees below the Artinian degree."""
        quot = ArtinianQuotient(self.alg, self.sop.elements, self.sop.artinian_degree)
        out = []
        for d, s in enumerate(self.slices):
            red = exactla.rref(quot.reduce(s.basis, d), self.alg.p, quot.dim(d))
            out.extend(quot.element(row, d) for row in red.basis)
        return out


def limit_closure(ring: RingModel, sop, n_max: int | None = None) -> LimitClosure:
    """Union of the colons ((x^{n+1}) : (x_1...x_d)^n), computed for n = 0..n_max.

    Certified in dimension 1 once n_max * deg x >= g; otherwise stabilization
    means the last two terms of the chain agree.
    """
    sop = require_certified(ring, sop)
    k = _d1_push_steps(ring, sop) if ring.dim == 1 else None
    if n_max is None:
        n_max = max(k + 1, 2) if k is not None else 4
    M = sop.artinian_degree
    D = sum(sop.degrees)
    need = M + n_max * D + 2
    top_gens = stage_generators(sop, n_max + 1)
    alg, _ = algebra_for(ring, top_gens, max(need, _stage_degree_bound(sop, n_max + 1)), at_least=need)
    q = ideal_subspace(alg, sop.elements, M)
    f = product(ring, sop.elements)
    chain = []
    for n in range(n_max + 1):
        upper = ideal_subspace(alg, stage_generators(sop, n + 1), M - 1 + n * D)
        fn = f**n
        slices = []
        for t in range(M):
            if fn.is_zero:
                slices.append(Subspace.full(alg.dim(t), alg.p))
            else:
                slices.append(exactla.preimage(alg.mult_matrix(fn, t), upper.slices[t + n * D]))
        chain.append(slices)
    for prev, nxt in zip(chain, chain[1:]):
        if not all(b.contains(a) for a, b in zip(prev, nxt)):
            raise InvariantViolation("limit-closure chain is not increasing")
    final = chain[-1]
    horizon = next(n for n, sl in enumerate(chain) if sl == final)
    stabilized = len(chain) >= 2 and chain[-2] == final
    certified = k is not None and n_max >= k
    quot = ArtinianQuotient(alg, sop.elements, M)
    socle_dim = 0
    for t in range(M):
        soc_t = final[t].meet(quot.colon_maximal(t))
        socle_dim += soc_t.dim - q.slices[t].dim
    return LimitClosure(
        sop=sop,
        n_max=n_max,
        horizon=horizon if (stabilized or certified) else None,
        slices=final + [Subspace.full(alg.dim(M), alg.p)],
        chain_dims=tuple(sum(s.dim for s in sl) for sl in chain),
        stabilized=stabilized or certified,
        certified=certified,
        quotient_dim=sum(final[t].dim - q.slices[t].dim for t in range(M)),
        socle_dim=socle_dim,
        truncation=alg.N,
        alg=alg,
    )


@dataclass
class PsCheck:
    s: int
    surjective_from_s: bool
    least_index: int
    failing_stages: tuple[int, ...]
    report: DirectSystemReport


def verify_ps_consequence(ring: RingModel, sop, s: int, i_max: int | None = None, window: int = DEFAULT_WINDOW) -> PsCheck:
    """Check that every stage i >= s surjects onto the stable socle image.

    The caller asserts that ``sop`` is p_s-standard; that hypothesis is not
    verified here.
    """
    if s < 2:
        raise InputError("s must be at least 2")
    sop = require_certified(ring, sop)
    if i_max is not None and i_max < s:
        raise InputError(f"i_max={i_max} must be at least s={s}")
    report = power_quotient_system(ring, sop, i_max, window)
    if i_max is None and report.i_max < s:
        report = power_quotient_system(ring, sop, s, window)
    if report.i_max < s:
        raise InputError(f"the direct system was only built to stage {report.i_max} < s={s}")
    failing = tuple(i for i in range(s, report.i_max + 1) if report.image_dims[i - 1] != report.stable_socle_dim)
    return PsCheck(s, not failing, report.surjectivity_index, failing, report)
