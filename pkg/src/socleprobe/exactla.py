"""Exact linear algebra over a prime field F_p.

Vectors are rows. A matrix ``M`` of shape ``(m, n)`` acts on row vectors of
length ``m`` by ``v @ M``; subspaces are stored as canonical reduced row
echelon bases, so two equal subspaces compare bitwise equal.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, InputError

DEFAULT_PRIME = 32003
# keeps p**2 * (inner dimension) inside int64 for the matrix sizes we meet
MAX_PRIME = 2**24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise InputError(f"characteristic must be an integer, got {p!r}")
    p = int(p)
    if not is_prime(p):
        raise InputError(f"characteristic {p} is not prime")
    if p > MAX_PRIME:
        raise InputError(f"characteristic {p} exceeds supported maximum {MAX_PRIME}")
    return p


def as_matrix(rows, ncols: int, p: int) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64)
    if m.size == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.atleast_2d(m) % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product mod p, chunked over the inner dimension to avoid int64 overflow."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[1]
    step = max(1, (2**62) // ((p - 1) ** 2 + 1))
    if inner <= step:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, inner, step):
        out = (out + a[:, s : s + step] @ b[s : s + step]) % p
    return out


def _eliminate(m: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    m = m.copy()
    rows, cols = m.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], tuple(pivots)


class Subspace:
    """A subspace of F_p^n held as its canonical RREF basis."""

    __slots__ = ("p", "ambient_dim", "basis", "pivots")

    def __init__(self, basis: np.ndarray, pivots: tuple[int, ...], ambient_dim: int, p: int):
        basis = np.asarray(basis, dtype=np.int64).reshape(len(pivots), ambient_dim)
        basis.setflags(write=False)
        self.basis = basis
        self.pivots = tuple(int(c) for c in pivots)
        self.ambient_dim = int(ambient_dim)
        self.p = int(p)

    @classmethod
    def span(cls, rows, ambient_dim: int, p: int) -> "Subspace":
        return rref(as_matrix(rows, ambient_dim, p), p, ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(np.zeros((0, ambient_dim), dtype=np.int64), (), ambient_dim, p)

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(np.eye(ambient_dim, dtype=np.int64), tuple(range(ambient_dim)), ambient_dim, p)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def is_zero(self) -> bool:
        return not self.pivots

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.pivots, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise DimensionMismatch(
                f"ambient mismatch: F_{self.p}^{self.ambient_dim} vs F_{other.p}^{other.ambient_dim}"
            )

    @property
    def free_columns(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in piv)

    def reduce(self, vectors) -> np.ndarray:
        """Normal forms of row vectors modulo this subspace (pivot entries zeroed)."""
        v = as_matrix(vectors, self.ambient_dim, self.p)
        if self.pivots and v.shape[0]:
            v = (v - matmul(v[:, list(self.pivots)], self.basis, self.p)) % self.p
        return v

    def quotient_map(self) -> np.ndarray:
        """Matrix sending a vector to its coordinates in F_p^n / self.

        Coordinates are the free-column entries of the normal form.
        """
        free = self.free_columns
        q = np.zeros((self.ambient_dim, len(free)), dtype=np.int64)
        for j, c in enumerate(free):
            q[c, j] = 1
        if self.pivots and free:
            q[list(self.pivots), :] = (-self.basis[:, list(free)]) % self.p
        return q

    def member(self, vector) -> bool:
        v = np.asarray(vector, dtype=np.int64).reshape(1, self.ambient_dim)
        return not self.reduce(v).any()

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return not self.reduce(other.basis).any()

    def join(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return rref(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def meet(self, other: "Subspace") -> "Subspace":
        """Intersection, from the left kernel of the stacked bases."""
        self._check(other)
        if self.is_zero or other.is_zero:
            return Subspace.zero(self.ambient_dim, self.p)
        stacked = np.vstack([self.basis, other.basis])
        rel = kernel(stacked.T, self.p)
        coeffs = rel.basis[:, : self.dim]
        return rref(matmul(coeffs, self.basis, self.p), self.p, self.ambient_dim)

    def image(self, matrix: np.ndarray) -> "Subspace":
        matrix = np.asarray(matrix, dtype=np.int64)
        if matrix.shape[0] != self.ambient_dim:
            raise DimensionMismatch(f"map expects {matrix.shape[0]} coordinates, subspace has {self.ambient_dim}")
        return rref(matmul(self.basis, matrix, self.p), self.p, matrix.shape[1])


def rref(matrix, p: int, ncols: int | None = None) -> Subspace:
    """Canonical row space of ``matrix`` over F_p."""
    m = np.asarray(matrix, dtype=np.int64)
    if ncols is None:
        ncols = m.shape[1] if m.ndim == 2 else 0
    if ncols == 0 or m.size == 0:
        return Subspace.zero(ncols, p)
    m = m.reshape(-1, ncols) % p
    basis, pivots = _eliminate(m, p)
    return Subspace(basis, pivots, ncols, p)


def rank(matrix, p: int) -> int:
    return rref(matrix, p).dim


def kernel(matrix, p: int) -> Subspace:
    """Null space {x : matrix @ x = 0} as a subspace of F_p^cols."""
    m = np.asarray(matrix, dtype=np.int64)
    cols = m.shape[1]
    r = rref(m, p, cols)
    free = r.free_columns
    vecs = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        vecs[k, f] = 1
        if r.pivots:
            vecs[k, list(r.pivots)] = (-r.basis[:, f]) % p
    out = rref(vecs, p, cols)
    if out.dim + r.dim != cols:
        raise AssertionError("rank-nullity failed")
    return out


def preimage(matrix: np.ndarray, target: Subspace) -> Subspace:
    """{v : v @ matrix lies in target}."""
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.shape[1] != target.ambient_dim:
        raise DimensionMismatch("map codomain does not match target subspace")
    proj = matmul(matrix, target.quotient_map(), target.p)
    return kernel(proj.T, target.p)


def joint_preimage(matrices, targets, domain_dim: int, p: int) -> Subspace:
    """Intersection of preimages, computed as one kernel."""
    blocks = [matmul(np.asarray(m, dtype=np.int64), t.quotient_map(), p) for m, t in zip(matrices, targets)]
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return Subspace.full(domain_dim, p)
    return kernel(np.hstack(blocks).T, p)


def solve(matrix, rhs, p: int) -> np.ndarray | None:
    """One solution x of x @ matrix = rhs, or None when inconsistent.

    Free coordinates are set to zero, so the answer is deterministic.
    """
    m = np.asarray(matrix, dtype=np.int64) % p
    rhs = np.asarray(rhs, dtype=np.int64).reshape(-1) % p
    rows, cols = m.shape
    aug = np.hstack([m.T, rhs.reshape(-1, 1)])
    r = rref(aug, p, rows + 1)
    if r.pivots and r.pivots[-1] == rows:
        return None
    x = np.zeros(rows, dtype=np.int64)
    for k, c in enumerate(r.pivots):
        x[c] = r.basis[k, rows]
    return x


def lattice(a: Subspace, b: Subspace, op: str, vector=None):
    """Dispatch ``meet``, ``join``, ``contains`` or ``member`` (of ``vector`` in both)."""
    a._check(b)
    if op == "meet":
        return a.meet(b)
    if op == "join":
        return a.join(b)
    if op == "contains":
        return a.contains(b)
    if op == "member":
        return a.member(vector) and b.member(vector)
    raise InputError(f"unknown lattice op {op!r}")
