"""Exact dense linear algebra over prime fields GF(p).

Matrices and vectors are plain ``numpy.int64`` arrays holding residues in
``[0, p)``.  Every routine is exact; there are no tolerances anywhere.

Besides the single-matrix routines (:func:`rref`, :func:`nullspace`, ...)
this module has batched kernels that row-reduce a whole stack of small
matrices at once.  Those are what make enumeration over every projective
point of a 14-dimensional algebra affordable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, DivisionByZero, EnumerationCapExceeded, NonPrimeModulus

MAX_MODULUS = 1 << 16
_FLOAT_EXACT = 1 << 53


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


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """``table[a]`` is the inverse of ``a`` mod p; ``table[0]`` is 0 and never used."""
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    table.flags.writeable = False
    return table


@dataclass(frozen=True)
class PrimeField:
    """The field of residues mod a prime ``p <= 2**16``."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise NonPrimeModulus(self.p)
        if not (2 <= self.p <= MAX_MODULUS and is_prime(int(self.p))):
            raise NonPrimeModulus(self.p)
        object.__setattr__(self, "p", int(self.p))

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        return pow(int(a), -1, self.p)

    def reduce(self, x) -> np.ndarray:
        return np.mod(np.asarray(x, dtype=np.int64), self.p)

    def __str__(self) -> str:
        return f"GF({self.p})"


def as_field(field: PrimeField | int) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(field)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact ``a @ b mod p`` for residue arrays.

    Uses BLAS in float64 whenever every partial sum is below 2**53, which
    covers all practical shapes for p <= 2**16.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        out = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.mod(out, p).astype(np.int64)
    return np.mod(np.matmul(a, b), p)


class RREF(NamedTuple):
    rank: int
    reduced: np.ndarray
    pivots: list[int]


def _rref_inplace(a: np.ndarray, p: int) -> list[int]:
    rows, cols = a.shape
    inv = inverse_table(p)
    pivots: list[int] = []
    r = 0
    for j in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, j])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        lead = a[r, j]
        if lead != 1:
            a[r] = a[r] * inv[lead] % p
        col = a[:, j].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(j)
        r += 1
    return pivots


def rref(m, p: int) -> RREF:
    """Reduced row-echelon form of ``m`` over GF(p).

    ``reduced`` has the shape of ``m``; zero rows sit at the bottom.
    """
    a = np.mod(np.array(m, dtype=np.int64, ndmin=2), p)
    pivots = _rref_inplace(a, p)
    return RREF(len(pivots), a, pivots)


def rank(m, p: int) -> int:
    return rref(m, p).rank


def _nullspace_rows(reduced: np.ndarray, pivots: Sequence[int], cols: int, p: int) -> np.ndarray:
    free = [j for j in range(cols) if j not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for r, pc in enumerate(pivots):
            out[t, pc] = (-reduced[r, f]) % p
    return out


def nullspace(m, p: int) -> "Subspace":
    """``{v : m v = 0}`` as a canonical subspace of GF(p)^cols."""
    m = np.array(m, dtype=np.int64, ndmin=2)
    cols = m.shape[1]
    res = rref(m, p)
    return Subspace.span(p, cols, _nullspace_rows(res.reduced, res.pivots, cols, p))


def left_nullspace(m, p: int) -> "Subspace":
    """``{c : c m = 0}``.

    Its rows certify image membership: ``v`` lies in the column space of
    ``m`` exactly when every row annihilates ``v``.
    """
    m = np.array(m, dtype=np.int64, ndmin=2)
    return nullspace(m.T, p)


def column_space(m, p: int) -> "Subspace":
    m = np.array(m, dtype=np.int64, ndmin=2)
    return Subspace.span(p, m.shape[0], m.T)


def row_space(m, p: int) -> "Subspace":
    m = np.array(m, dtype=np.int64, ndmin=2)
    return Subspace.span(p, m.shape[1], m)


def inverse(m, p: int) -> np.ndarray:
    m = np.array(m, dtype=np.int64, ndmin=2)
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionMismatch(f"cannot invert a {m.shape} matrix")
    res = rref(np.hstack([m % p, np.eye(n, dtype=np.int64)]), p)
    if res.pivots[:n] != list(range(n)) or res.rank < n:
        raise DivisionByZero("matrix is singular")
    return res.reduced[:, n:].copy()


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^n stored by its reduced row-echelon basis.

    The basis is canonical, so equality is an exact array comparison.
    Build instances with :meth:`span`, :meth:`zero` or :meth:`full`.
    """

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, p: int, n: int, vectors) -> "Subspace":
        vecs = np.array(vectors, dtype=np.int64).reshape(-1, n) if n else np.zeros((0, 0), np.int64)
        if vecs.shape[0] == 0 or n == 0:
            return cls.zero(p, n)
        res = rref(vecs, p)
        basis = res.reduced[: res.rank].copy()
        basis.flags.writeable = False
        return cls(p, n, basis, tuple(res.pivots))

    @classmethod
    def _from_rref(cls, p: int, n: int, basis: np.ndarray, pivots) -> "Subspace":
        basis = np.array(basis, dtype=np.int64).reshape(len(pivots), n)
        basis.flags.writeable = False
        return cls(p, n, basis, tuple(int(x) for x in pivots))

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls._from_rref(p, n, np.zeros((0, n), dtype=np.int64), ())

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls._from_rref(p, n, np.eye(n, dtype=np.int64), range(n))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, n: int) -> None:
        if n != self.ambient_dim:
            raise DimensionMismatch(f"ambient dimension {self.ambient_dim} vs {n}")

    def residual(self, vectors) -> np.ndarray:
        """Reduce rows against the basis; zero rows are exactly the members."""
        v = np.mod(np.array(vectors, dtype=np.int64, ndmin=2), self.p)
        self._check(v.shape[1])
        if self.dim == 0:
            return v
        coeff = v[:, list(self.pivots)]
        return np.mod(v - matmul_mod(coeff, self.basis, self.p), self.p)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if v.ndim != 1:
            raise DimensionMismatch("contains expects a single vector")
        return not self.residual(v).any()

    def contains_rows(self, vectors) -> np.ndarray:
        return ~self.residual(vectors).any(axis=1)

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of a member with respect to :attr:`basis`."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return np.mod(np.asarray(v, dtype=np.int64)[list(self.pivots)], self.p)

    def __le__(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(f"ambient dimension {self.ambient_dim} vs {other.ambient_dim}")
        return self.dim <= other.dim and bool(other.contains_rows(self.basis).all())

    def __add__(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(f"ambient dimension {self.ambient_dim} vs {other.ambient_dim}")
        return Subspace.span(self.p, self.ambient_dim, np.vstack([self.basis, other.basis]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def intersection(self, other: "Subspace") -> "Subspace":
        # x in S and T  <=>  x annihilated by both certificate sets
        cert = np.vstack([self.annihilator().basis, other.annihilator().basis])
        return nullspace(cert, self.p) if cert.size else Subspace.full(self.p, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """``{c : c . v = 0 for all v}``."""
        if self.dim == 0:
            return Subspace.full(self.p, self.ambient_dim)
        return nullspace(self.basis, self.p)

    def __repr__(self) -> str:
        return f"Subspace(GF({self.p})^{self.ambient_dim}, dim={self.dim})"


def subspace_contains(s: Subspace, v) -> bool:
    return s.contains(v)


def subspace_equal(s: Subspace, t: Subspace) -> bool:
    if s.ambient_dim != t.ambient_dim:
        raise DimensionMismatch(f"ambient dimension {s.ambient_dim} vs {t.ambient_dim}")
    return s == t


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    return s + t


def subspace_leq(s: Subspace, t: Subspace) -> bool:
    return s <= t


class SpanBuilder:
    """Incrementally accumulated span, kept in reduced row-echelon form.

    New rows are first reduced against the current basis with one matrix
    product; only the survivors get row-reduced, so feeding in long streams
    of mostly dependent rows stays cheap.
    """

    def __init__(self, p: int, ambient_dim: int) -> None:
        self.p = p
        self.ambient_dim = ambient_dim
        self._basis = np.zeros((0, ambient_dim), dtype=np.int64)
        self._pivots = np.zeros(0, dtype=np.int64)

    @property
    def rank(self) -> int:
        return self._basis.shape[0]

    def current_rank(self) -> int:
        return self.rank

    def add_vector(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.ambient_dim,):
            raise DimensionMismatch(f"expected a vector of length {self.ambient_dim}, got shape {v.shape}")
        return self.add_rows(v[None, :]) > 0

    def add_rows(self, rows) -> int:
        """Add every row; returns how much the rank grew."""
        rows = np.array(rows, dtype=np.int64, ndmin=2)
        if rows.shape[1] != self.ambient_dim:
            raise DimensionMismatch(f"expected rows of length {self.ambient_dim}, got {rows.shape[1]}")
        before = self.rank
        start = 0
        while start < rows.shape[0] and self.rank < self.ambient_dim:
            chunk = max(512, 2 * (self.ambient_dim - self.rank))
            self._absorb(np.mod(rows[start : start + chunk], self.p))
            start += chunk
        return self.rank - before

    def _absorb(self, rows: np.ndarray) -> None:
        p = self.p
        if self.rank:
            rows = np.mod(rows - matmul_mod(rows[:, self._pivots], self._basis, p), p)
        rows = rows[rows.any(axis=1)]
        if rows.shape[0] == 0:
            return
        new_pivots = _rref_inplace(rows, p)
        new = rows[: len(new_pivots)]
        old = self._basis
        if old.shape[0]:
            old = np.mod(old - matmul_mod(old[:, new_pivots], new, p), p)
        basis = np.vstack([old, new])
        pivots = np.concatenate([self._pivots, np.asarray(new_pivots, dtype=np.int64)])
        order = np.argsort(pivots, kind="stable")
        self._basis = basis[order]
        self._pivots = pivots[order]

    def merge(self, other: "SpanBuilder") -> None:
        if other.ambient_dim != self.ambient_dim or other.p != self.p:
            raise DimensionMismatch("cannot merge span builders over different spaces")
        self.add_rows(other._basis)

    def as_subspace(self) -> Subspace:
        return Subspace._from_rref(self.p, self.ambient_dim, self._basis.copy(), self._pivots)


# --- batched kernels -------------------------------------------------------


def _small_dtype(p: int):
    # must hold a - f * g for residues a, f, g without overflow
    if (p - 1) ** 2 + p < 1 << 15:
        return np.int16
    if (p - 1) ** 2 + p < 1 << 31:
        return np.int32
    return np.int64


def batched_rref(stack, p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row-reduce every matrix of a ``(B, rows, cols)`` stack independently.

    Returns ``(reduced, ranks, pivot_cols)`` where ``pivot_cols[b, r]`` is the
    pivot column of row ``r`` of matrix ``b`` or -1 for zero rows.
    """
    dtype = _small_dtype(p)
    a = np.mod(np.asarray(stack, dtype=np.int64), p).astype(dtype)
    nb, rows, cols = a.shape
    inv = inverse_table(p).astype(dtype)
    ranks = np.zeros(nb, dtype=np.int64)
    pivot_cols = np.full((nb, rows), -1, dtype=np.int64)
    row_ids = np.arange(rows)
    for j in range(cols):
        cand = (a[:, :, j] != 0) & (row_ids[None, :] >= ranks[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        bs = np.flatnonzero(has)
        src = np.argmax(cand[bs], axis=1)
        dst = ranks[bs]
        swap_src = a[bs, src].copy()
        a[bs, src] = a[bs, dst]
        lead = swap_src[:, j]
        pivot_rows = swap_src * inv[lead][:, None] % p
        a[bs, dst] = pivot_rows
        if bs.size == nb:
            factors = a[:, :, j].copy()
            factors[bs, dst] = 0
            a -= factors[:, :, None] * pivot_rows[:, None, :]
            np.mod(a, p, out=a)
        else:
            factors = a[bs, :, j].copy()
            factors[np.arange(bs.size), dst] = 0
            a[bs] = np.mod(a[bs] - factors[:, :, None] * pivot_rows[:, None, :], p)
        pivot_cols[bs, dst] = j
        ranks[bs] += 1
    return a.astype(np.int64), ranks, pivot_cols


def batched_nullspace(stack, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Kernel bases of every matrix in a stack.

    Returns ``(vectors, owners)``: row ``t`` of ``vectors`` lies in the
    kernel of ``stack[owners[t]]`` and, per owner, the rows form a basis.
    """
    stack = np.asarray(stack, dtype=np.int64)
    nb, rows, cols = stack.shape
    reduced, ranks, pivot_cols = batched_rref(stack, p)
    is_pivot = np.zeros((nb, cols), dtype=bool)
    bi, ri = np.nonzero(pivot_cols >= 0)
    is_pivot[bi, pivot_cols[bi, ri]] = True
    # candidate[b, f] is the kernel vector with free coordinate f set to 1
    cand = np.zeros((nb, cols, cols), dtype=np.int64)
    cand[:, np.arange(cols), np.arange(cols)] = 1
    pc = pivot_cols[bi, ri]
    cand[bi, :, pc] = np.mod(-reduced[bi, ri, :], p)
    cand[bi, pc, pc] = 1
    owners, free = np.nonzero(~is_pivot)
    return cand[owners, free], owners


def batched_in_column_space(stack, vectors, p: int) -> np.ndarray:
    """``out[b]`` is whether ``vectors[b]`` lies in the column space of ``stack[b]``."""
    stack = np.asarray(stack, dtype=np.int64)
    vectors = np.asarray(vectors, dtype=np.int64)
    aug = np.concatenate([stack, vectors[:, :, None]], axis=2)
    _, _, pivot_cols = batched_rref(aug, p)
    return ~(pivot_cols == stack.shape[2]).any(axis=1)


# --- enumeration -----------------------------------------------------------


def _digits(values: np.ndarray, p: int, width: int) -> np.ndarray:
    powers = p ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (values[:, None] // powers[None, :]) % p


def check_cap(p: int, d: int, cap: int, what: str = "elements") -> None:
    if p**d > cap:
        raise EnumerationCapExceeded(p, d, cap, what)


def projective_count(p: int, d: int) -> int:
    return (p**d - 1) // (p - 1)


def projective_points(p: int, d: int, cap: int, chunk: int = 4096) -> Iterator[np.ndarray]:
    """Yield every normalized nonzero vector of GF(p)^d in lexicographic order.

    One vector per line through the origin; the first nonzero coordinate is
    1.  Output arrives in ``(k, d)`` chunks.  Raises when ``p**d > cap``.
    """
    check_cap(p, d, cap)
    for lead in range(d - 1, -1, -1):
        tail = d - 1 - lead
        total = p**tail
        for start in range(0, total, chunk):
            values = np.arange(start, min(total, start + chunk), dtype=np.int64)
            block = np.zeros((values.size, d), dtype=np.int64)
            block[:, lead] = 1
            if tail:
                block[:, lead + 1 :] = _digits(values, p, tail)
            yield block


def nonzero_points(p: int, d: int, cap: int, chunk: int = 4096) -> Iterator[np.ndarray]:
    """Every nonzero vector of GF(p)^d, lexicographic, in chunks."""
    check_cap(p, d, cap)
    total = p**d
    for start in range(1, total, chunk):
        values = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield _digits(values, p, d)


def all_points(p: int, d: int, cap: int, chunk: int = 4096) -> Iterator[np.ndarray]:
    check_cap(p, d, cap)
    total = p**d
    for start in range(0, total, chunk):
        values = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield _digits(values, p, d)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def subspace_count(p: int, n: int) -> int:
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def enumerate_subspaces(p: int, n: int, cap: int) -> Iterator[Subspace]:
    """Every subspace of GF(p)^n, generated directly in canonical form."""
    total = subspace_count(p, n)
    if total > cap:
        raise EnumerationCapExceeded(p, n, cap, "subspaces")
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            pivot_set = set(pivots)
            slots = [(r, j) for r, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivot_set]
            for fill in itertools.product(range(p), repeat=len(slots)):
                basis = np.zeros((k, n), dtype=np.int64)
                for r, pc in enumerate(pivots):
                    basis[r, pc] = 1
                for (r, j), val in zip(slots, fill):
                    basis[r, j] = val
                yield Subspace._from_rref(p, n, basis, pivots)
