"""Irreducibility of parameter ideals, Gorenstein detection in dimension 1,
and randomized bracketing of the irreducibility threshold ell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .dim1 import Dim1Invariants, dim1_bound, ring_seed
from .errors import UnsupportedInput
from .exactla import DEFAULT_PRIME
from .idealcalc import gamma_torsion, quotient_socle
from .limits import power_quotient_system
from .localring import RingElement, RingModel, RingSpec, certify_sop, load_ring, monomial_str, require_certified


def is_irreducible(ring: RingModel, sop) -> bool:
    """A parameter ideal is irreducible iff its quotient has a one-dimensional socle."""
    sop = require_certified(ring, sop)
    return quotient_socle(ring.algebra(max(ring.default_truncation(), sop.artinian_degree + 2)), sop).dim == 1


@dataclass(frozen=True)
class GorensteinVerdict:
    gorenstein: bool
    depth_ok: bool
    type: int | None
    witness: RingElement | None


def gorenstein_dim1(ring: RingModel, attempts: int = 32, seed: int = 0) -> GorensteinVerdict:
    """Depth 1 (Gamma_m(R) = 0) and type 1 (socle of R/(x) is one-dimensional)."""
    if ring.dim != 1:
        raise UnsupportedInput(f"Gorenstein detection is implemented for dimension 1, ring has dimension {ring.dim}")
    gdim, _ = gamma_torsion(ring)
    if gdim:
        return GorensteinVerdict(False, False, None, None)
    from .dim1 import reduction_number

    x = reduction_number(ring, attempts, seed).witness
    sop = require_certified(ring, [x])
    t = quotient_socle(ring.algebra(max(ring.default_truncation(), sop.artinian_degree + 2)), sop).dim
    return GorensteinVerdict(t == 1, True, t, x)


@dataclass
class ProbeReport:
    ring: str
    L: int
    samples: int
    seed: int
    deterministic_tried: int = 0
    sop_failures: int = 0
    tested: int = 0
    irreducible_found: list[tuple[str, ...]] = field(default_factory=list)
    ell_lower_bound: int | None = None
    ell_upper_bound: int | None = None
    gorenstein: bool | None = None

    @property
    def all_reducible(self) -> bool:
        return not self.irreducible_found


def deterministic_candidates(ring: RingModel, L: int, witness: RingElement | None = None) -> list[tuple[RingElement, ...]]:
    """Named candidates in m^L, tried before random ones: the reduction witness
    to the L-th power, then pure powers of variables."""
    out: list[tuple[RingElement, ...]] = []
    if ring.dim == 0:
        return [()]
    if witness is not None and witness.degree == 1:
        out.append((witness**L,))
    powers = [x**L for x in ring.variables()]
    for combo in itertools.combinations(powers, ring.dim):
        if all(not f.is_zero for f in combo):
            out.append(combo)
    seen = set()
    unique = []
    for cand in out:
        key = tuple(f.terms for f in cand)
        if key not in seen:
            seen.add(key)
            unique.append(cand)
    return unique


def random_candidate(ring: RingModel, L: int, rng: np.random.Generator) -> tuple[RingElement, ...]:
    monos = ring.standard_monomials(L)
    gens = []
    for _ in range(ring.dim):
        coeffs = rng.integers(0, ring.p, size=len(monos))
        gens.append(RingElement(ring, [(m, int(c)) for m, c in zip(monos, coeffs)]))
    return tuple(gens)


def probe_ell(ring: RingModel, L: int, samples: int = 50, seed: int = 0, invariants: Dim1Invariants | None = None) -> ProbeReport:
    """Look for irreducible parameter ideals generated in degree L.

    Finding one in a non-Gorenstein ring shows ell > L; finding none is only
    empirical evidence. In dimension 1 the upper bound max{c, g} + 1 is
    attached.
    """
    if L < 1:
        raise UnsupportedInput("L must be at least 1")
    report = ProbeReport(ring=repr(ring), L=L, samples=samples, seed=seed)
    witness = None
    if ring.dim == 1:
        invariants = invariants or dim1_bound(ring, seed=seed)
        witness = invariants.c_witness
        report.ell_upper_bound = invariants.bound_n
        report.gorenstein = gorenstein_dim1(ring, seed=seed).gorenstein
    det = deterministic_candidates(ring, L, witness)
    report.deterministic_tried = len(det)

    def trial(cand):
        if any(f.is_zero for f in cand):
            report.sop_failures += 1
            return
        sop = certify_sop(ring, cand)
        if not sop.certified:
            report.sop_failures += 1
            return
        report.tested += 1
        if is_irreducible(ring, sop):
            report.irreducible_found.append(tuple(str(f) for f in cand))

    for cand in det:
        trial(cand)
    for k in range(samples):
        rng = np.random.default_rng(ring_seed(ring, seed, L, k))
        trial(random_candidate(ring, L, rng))
    if report.irreducible_found and report.gorenstein is False:
        report.ell_lower_bound = L
    return report


@dataclass
class FamilyRow:
    a: int
    c: int
    c_certainty: str
    witness: str
    g: int
    n: int
    gamma_dim: int
    socle_basis: tuple[str, ...]
    ya_irreducible: bool
    probe_L: int
    probe_all_reducible: bool
    probe_samples: int
    ell_lower_bound: int | None
    index: int
    index_certification: str
    stable_socle_dim: int

    def expected(self) -> dict:
        """Values the family is known to take for this a."""
        a = self.a
        exp = {
            "c": a,
            "g": 2 * a,
            "n": 2 * a + 1,
            "gamma_dim": a * a,
            "socle_basis": (monomial_str((a, a - 1), ("x", "y")),),
            "ya_irreducible": True,
            "probe_all_reducible": True,
            "ell_lower_bound": a,
            "stable_socle_dim": 1,
        }
        if a == 1:
            exp["index"] = 2
        return exp

    def mismatches(self) -> dict:
        return {k: (getattr(self, k), v) for k, v in self.expected().items() if getattr(self, k) != v}


def family_ring(a: int, p: int = DEFAULT_PRIME) -> RingModel:
    """k[x, y] / (x^{a+1}, x y^a)."""
    if a < 1:
        raise UnsupportedInput("a must be at least 1")
    return load_ring(RingSpec.from_strings(("x", "y"), [f"x^{a + 1}", f"x*y^{a}"], p))


def family_xy(a_range, p: int = DEFAULT_PRIME, samples: int = 200, seed: int = 0) -> list[FamilyRow]:
    rows = []
    for a in a_range:
        if a > 6:
            raise UnsupportedInput(f"a={a} is beyond desk scale (a <= 6)")
        ring = family_ring(a, p)
        inv = dim1_bound(ring, seed=seed)
        ya = require_certified(ring, [f"y^{a}"])
        soc = quotient_socle(ring.algebra(max(ring.default_truncation(), ya.artinian_degree + 2)), ya)
        low = probe_ell(ring, a, samples=0, seed=seed, invariants=inv)
        high = probe_ell(ring, 2 * a, samples=samples, seed=seed, invariants=inv)
        sys = power_quotient_system(ring, ["y"])
        rows.append(
            FamilyRow(
                a=a,
                c=inv.c,
                c_certainty=inv.c_certainty,
                witness=str(inv.c_witness),
                g=inv.g,
                n=inv.bound_n,
                gamma_dim=inv.gamma_dim,
                socle_basis=tuple(str(b) for b in soc.basis),
                ya_irreducible=soc.dim == 1,
                probe_L=2 * a,
                probe_all_reducible=high.all_reducible,
                probe_samples=samples,
                ell_lower_bound=low.ell_lower_bound,
                index=sys.surjectivity_index,
                index_certification=sys.certification,
                stable_socle_dim=sys.stable_socle_dim,
            )
        )
    return rows


FAMILY_COLUMNS = ("a", "c", "g", "n", "gamma_dim", "index")


def format_family_table(rows, columns=FAMILY_COLUMNS) -> str:
    table = [list(columns)] + [[str(getattr(r, c)) for c in columns] for r in rows]
    widths = [max(len(line[j]) for line in table) for j in range(len(columns))]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in table) + "\n"
