"""Monomial quotient rings k[x_1..x_n]/I, their elements and truncated models.

Everything here is graded: ``I`` is monomial, so the quotient is standard
graded and the degree-d slice of the truncated model ``A_N`` agrees with the
ring itself for every d < N.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import exactla
from .errors import InputError, InvariantViolation, UnsupportedInput, WindowError

Monomial = tuple[int, ...]

# total standard-basis coordinates a single TruncatedAlgebra may hold
MEMORY_BUDGET = 400_000

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_FACTOR_RE = re.compile(rf"^({_NAME})(?:\^(\d+))?$")


def minimalize(gens) -> tuple[Monomial, ...]:
    """Drop generators divisible by another one; sort the survivors."""
    out: list[Monomial] = []
    for g in sorted(set(map(tuple, gens)), key=lambda m: (sum(m), m)):
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int):
    """All exponent vectors of length n and total degree d, lex-descending."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def monomial_str(m: Monomial, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, names) -> Monomial:
    """Parse ``name('^'digits)?('*'name('^'digits)?)*``; ``"1"`` is the unit."""
    text = text.strip()
    index = {v: i for i, v in enumerate(names)}
    exps = [0] * len(names)
    if text == "1":
        return tuple(exps)
    if not text:
        raise InputError("empty monomial")
    for factor in text.split("*"):
        m = _FACTOR_RE.match(factor.strip())
        if not m:
            raise InputError(f"malformed monomial {text!r}")
        name, power = m.group(1), m.group(2)
        if name not in index:
            raise InputError(f"unknown variable {name!r} in {text!r}")
        exps[index[name]] += int(power) if power is not None else 1
    return tuple(exps)


@dataclass(frozen=True)
class RingSpec:
    """Presentation k[vars]/(monomials), k = F_char.

    Generators are minimalized and sorted on construction.
    """

    vars: tuple[str, ...]
    char: int = exactla.DEFAULT_PRIME
    ideal_gens: tuple[Monomial, ...] = ()

    def __post_init__(self):
        names = tuple(self.vars)
        if not names:
            raise InputError("a ring needs at least one variable")
        for v in names:
            if not re.fullmatch(_NAME, v):
                raise InputError(f"invalid variable name {v!r}")
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {names}")
        p = exactla.check_prime(self.char)
        gens = []
        for g in self.ideal_gens:
            g = tuple(int(e) for e in g)
            if len(g) != len(names):
                raise InputError(f"generator {g} has {len(g)} exponents, expected {len(names)}")
            if any(e < 0 for e in g):
                raise InputError(f"negative exponent in generator {g}")
            if sum(g) == 0:
                raise InputError("the unit monomial generates the whole ring")
            gens.append(g)
        object.__setattr__(self, "vars", names)
        object.__setattr__(self, "char", p)
        object.__setattr__(self, "ideal_gens", minimalize(gens))

    @classmethod
    def from_strings(cls, vars, ideal, char: int = exactla.DEFAULT_PRIME) -> "RingSpec":
        vars = tuple(vars)
        return cls(vars, char, tuple(parse_monomial(s, vars) for s in ideal))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def ideal_strings(self) -> list[str]:
        return [monomial_str(g, self.vars) for g in self.ideal_gens]


class RingElement:
    """An element of R, stored as its standard monomials with nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "RingModel", terms):
        p = ring.p
        acc: dict[Monomial, int] = {}
        for mono, c in terms.items() if isinstance(terms, dict) else terms:
            mono = tuple(mono)
            if ring.in_ideal(mono):
                continue
            acc[mono] = (acc.get(mono, 0) + int(c)) % p
        self.ring = ring
        self.terms = tuple(sorted((m, c) for m, c in acc.items() if c))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> set[int]:
        return {sum(m) for m, _ in self.terms}

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element, else None."""
        ds = self.degrees
        return ds.pop() if len(ds) == 1 else None

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring.spec == other.ring.spec and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.ring, list(self.terms) + list(other.terms))

    def __neg__(self) -> "RingElement":
        return self.scale(-1)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, c: int) -> "RingElement":
        return RingElement(self.ring, [(m, c * a) for m, a in self.terms])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return RingElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RingElement":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.spec.vars
        parts = []
        for m, c in sorted(self.terms, key=lambda t: (-sum(t[0]), tuple(-e for e in t[0]))):
            mono = monomial_str(m, names)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"RingElement({self})"


class RingModel:
    """A validated RingSpec with its Krull dimension and cached truncations."""

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self.p = spec.char
        self.n = spec.nvars
        self.min_cover, self.dim = _krull_dimension(spec)
        self._algebras: dict[int, TruncatedAlgebra] = {}

    def __repr__(self):
        ideal = ", ".join(self.spec.ideal_strings()) or "0"
        return f"RingModel(F_{self.p}[{', '.join(self.spec.vars)}]/({ideal}), dim={self.dim})"

    def in_ideal(self, mono: Monomial) -> bool:
        return any(divides(g, mono) for g in self.spec.ideal_gens)

    @cached_property
    def max_exponents(self) -> tuple[int, ...]:
        gens = self.spec.ideal_gens
        return tuple(max((g[t] for g in gens), default=0) for t in range(self.n))

    @property
    def ideal_degree_sum(self) -> int:
        """Sum over variables of the largest exponent in a generator (D_I)."""
        return sum(self.max_exponents)

    def default_truncation(self, requested: int | None = None) -> int:
        return max(2 * self.ideal_degree_sum + 4, requested or 0)

    def algebra(self, N: int | None = None) -> "TruncatedAlgebra":
        N = self.default_truncation() if N is None else N
        if N not in self._algebras:
            self._algebras[N] = TruncatedAlgebra(self, N)
        return self._algebras[N]

    def standard_monomials(self, d: int) -> list[Monomial]:
        return [m for m in monomials_of_degree(self.n, d) if not self.in_ideal(m)]

    def hilbert(self, d: int) -> int:
        return len(self.standard_monomials(d))

    # elements

    def one(self) -> RingElement:
        return RingElement(self, [((0,) * self.n, 1)])

    def zero(self) -> RingElement:
        return RingElement(self, [])

    def monomial(self, mono: Monomial, coeff: int = 1) -> RingElement:
        return RingElement(self, [(tuple(mono), coeff)])

    def variables(self) -> list[RingElement]:
        return [self.monomial(tuple(int(i == t) for i in range(self.n))) for t in range(self.n)]

    def element(self, text) -> RingElement:
        """Parse ``"x+y"``, ``"3*x^2 - y*z"``, ``"y^2"``; a RingElement passes through."""
        if isinstance(text, RingElement):
            return text
        return parse_element(self, text)


def _krull_dimension(spec: RingSpec) -> tuple[tuple[int, ...], int]:
    """n minus the smallest set of variables meeting every generator's support."""
    supports = [frozenset(t for t, e in enumerate(g) if e) for g in spec.ideal_gens]
    n = spec.nvars
    for size in range(n + 1):
        for cover in itertools.combinations(range(n), size):
            cs = set(cover)
            if all(s & cs for s in supports):
                return cover, n - size
    raise InvariantViolation("no vertex cover found")  # all variables always cover


def load_ring(spec: RingSpec) -> RingModel:
    return RingModel(spec)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_element(ring: RingModel, text: str) -> RingElement:
    text = str(text).strip()
    if not text:
        raise InputError("empty polynomial")
    names = ring.spec.vars
    terms = []
    pos = 0
    for m in _TERM_RE.finditer(text):
        if m.start() != pos:
            raise InputError(f"malformed polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        coeff = 1
        factors = [f.strip() for f in body.split("*")]
        if factors and factors[0].isdigit():
            coeff = int(factors.pop(0))
        mono_text = "*".join(factors) if factors else "1"
        terms.append((parse_monomial(mono_text, names), sign * coeff))
    if pos != len(text):
        raise InputError(f"malformed polynomial {text!r}")
    return RingElement(ring, terms)


class TruncatedAlgebra:
    """A_N = k[x]/(I + m^N) with a monomial basis per degree.

    Row vectors over the degree-d basis represent homogeneous elements; maps
    between slices are matrices acting on the right.
    """

    def __init__(self, ring: RingModel, N: int):
        if N < 2:
            raise InputError("truncation degree must be at least 2")
        self.ring = ring
        self.N = int(N)
        self.p = ring.p
        basis = []
        total = 0
        for d in range(self.N):
            slice_d = ring.standard_monomials(d)
            total += len(slice_d)
            if total > MEMORY_BUDGET:
                raise WindowError(f"truncation N={N} exceeds the memory budget of {MEMORY_BUDGET} coordinates")
            basis.append(slice_d)
        self.basis: list[list[Monomial]] = basis
        self.index: list[dict[Monomial, int]] = [{m: i for i, m in enumerate(b)} for b in basis]
        self._mono_maps: dict[tuple[Monomial, int], tuple[np.ndarray, np.ndarray]] = {}

    def __repr__(self):
        return f"TruncatedAlgebra(N={self.N}, dims={self.hilbert()})"

    @property
    def spec(self) -> RingSpec:
        return self.ring.spec

    def hilbert(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis)

    def dim(self, d: int) -> int:
        self.check_degree(d)
        return len(self.basis[d]) if d >= 0 else 0

    def check_degree(self, d: int):
        if d >= self.N:
            raise WindowError(f"degree {d} is outside the truncation window N={self.N}")

    def is_standard(self, mono: Monomial) -> bool:
        return sum(mono) < self.N and not self.ring.in_ideal(mono)

    # coordinates

    def vector(self, f: RingElement, d: int) -> np.ndarray:
        """Coordinates of the degree-d component of f."""
        v = np.zeros(self.dim(d), dtype=np.int64)
        idx = self.index[d]
        for m, c in f.terms:
            if sum(m) == d:
                v[idx[m]] = c
        return v

    def coordinates(self, f: RingElement) -> np.ndarray:
        """Full coefficient vector over the whole standard basis of A_N."""
        return np.concatenate([self.vector(f, d) for d in range(self.N)])

    def element(self, vec, d: int) -> RingElement:
        return RingElement(self.ring, [(m, int(c)) for m, c in zip(self.basis[d], vec) if c])

    # multiplication

    def monomial_map(self, mono: Monomial, d: int) -> tuple[np.ndarray, np.ndarray]:
        """Index pairs (src, tgt) with basis[d][src] * mono = basis[d + deg][tgt]."""
        key = (mono, d)
        if key not in self._mono_maps:
            e = sum(mono)
            self.check_degree(d + e)
            tgt_index = self.index[d + e]
            src, tgt = [], []
            for i, u in enumerate(self.basis[d]):
                j = tgt_index.get(tuple(a + b for a, b in zip(u, mono)))
                if j is not None:
                    src.append(i)
                    tgt.append(j)
            self._mono_maps[key] = (np.array(src, dtype=np.int64), np.array(tgt, dtype=np.int64))
        return self._mono_maps[key]

    def mult_matrix(self, f: RingElement, d: int) -> np.ndarray:
        """Matrix of multiplication by homogeneous f from slice d to slice d + deg f."""
        e = f.degree
        if e is None:
            if f.is_zero:
                raise UnsupportedInput("multiplication by zero has no degree; pass a nonzero element")
            raise UnsupportedInput(f"element {f} is not homogeneous")
        out = np.zeros((self.dim(d), self.dim(d + e)), dtype=np.int64)
        for m, c in f.terms:
            src, tgt = self.monomial_map(m, d)
            out[src, tgt] = (out[src, tgt] + c) % self.p
        return out

    def multiply(self, f: RingElement, g: RingElement) -> tuple[RingElement, bool]:
        """Product in A_N; ``overflowed`` is True when a cross term reached degree N."""
        overflowed = False
        out: dict[Monomial, int] = {}
        for m1, c1 in f.terms:
            for m2, c2 in g.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                if sum(m) >= self.N:
                    overflowed = True
                    continue
                out[m] = out.get(m, 0) + c1 * c2
        return RingElement(self.ring, out), overflowed


def truncate(ring: RingModel, N: int) -> TruncatedAlgebra:
    return ring.algebra(N)


def multiply(alg: TruncatedAlgebra, f: RingElement, g: RingElement) -> tuple[RingElement, bool]:
    return alg.multiply(f, g)


@dataclass(frozen=True)
class ParameterSystem:
    """Homogeneous candidate system of parameters with its Artinian certificate.

    ``artinian_degree`` is the least M with m^M inside the generated ideal;
    it is None exactly when ``certified`` is False.
    """

    elements: tuple[RingElement, ...]
    artinian_degree: int | None
    certified: bool
    truncation: int
    hilbert_quotient: tuple[int, ...] = field(default=(), compare=False)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.elements)

    @property
    def ring(self) -> RingModel:
        return self.elements[0].ring

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.elements) + ")"


def _check_homogeneous(elements) -> None:
    for f in elements:
        if f.is_zero:
            raise UnsupportedInput("zero is never a parameter")
        if not f.is_homogeneous:
            raise UnsupportedInput(f"{f} is not homogeneous; only homogeneous parameter systems are supported")
        if f.degree < 1:
            raise UnsupportedInput(f"{f} is a unit, not a parameter")


def certify_sop(ring: RingModel, elements, truncation: int | None = None) -> ParameterSystem:
    """Decide whether ``elements`` generate an m-primary ideal.

    Returns a ParameterSystem with ``certified=False`` (a verdict, not an
    error) when no Artinian degree shows up within the window, even after one
    escalation of the truncation by 50%.
    """
    from .idealcalc import artinian_degree

    elements = tuple(ring.element(f) for f in elements)
    _check_homogeneous(elements)
    if len(elements) != ring.dim:
        raise UnsupportedInput(f"expected {ring.dim} parameters (the Krull dimension), got {len(elements)}")
    N = ring.default_truncation(truncation)
    maxdeg = max((f.degree for f in elements), default=0)
    for attempt in range(2):
        alg = ring.algebra(N)
        M, hq = artinian_degree(alg, elements, limit=N - 1 - maxdeg)
        if M is not None:
            return ParameterSystem(elements, M, True, N, hq)
        if attempt == 0:
            N = math.ceil(N * 1.5)
    return ParameterSystem(elements, None, False, N, hq)


def require_certified(ring: RingModel, sop) -> ParameterSystem:
    """Accept a ParameterSystem or a list of elements/strings; raise unless certified."""
    from .errors import NotCertified

    if not isinstance(sop, ParameterSystem):
        sop = certify_sop(ring, sop)
    if not sop.certified:
        raise NotCertified(f"{sop} is not a system of parameters (no Artinian degree within N={sop.truncation})")
    return sop
