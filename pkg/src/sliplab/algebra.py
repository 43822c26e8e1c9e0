"""Finite-dimensional unital associative algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import gf
from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    NonAssociative,
    NontrivialRequired,
    NotIdempotent,
    NotLeftSemicentral,
    UnitAxiomViolated,
)
from .gf import PrimeField, Subspace

DEFAULT_CAP = 1 << 20


@dataclass(frozen=True, eq=False)
class Algebra:
    """Algebra over GF(p) with basis ``e_0..e_{d-1}``.

    ``structure[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j`` and
    ``unit`` holds the coordinates of 1.  Construction only checks shapes;
    call :func:`validate` for the axioms.
    """

    field: PrimeField
    structure: np.ndarray
    unit: np.ndarray
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        p = self.field.p
        c = np.mod(np.asarray(self.structure, dtype=np.int64), p)
        u = np.mod(np.asarray(self.unit, dtype=np.int64), p)
        if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[1] != c.shape[2] or c.shape[0] < 1:
            raise DimensionMismatch(f"structure tensor must be (d, d, d) with d >= 1, got {c.shape}")
        if u.shape != (c.shape[0],):
            raise DimensionMismatch(f"unit must have length {c.shape[0]}, got {u.shape}")
        c.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "structure", c)
        object.__setattr__(self, "unit", u)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    def same_as(self, other: "Algebra") -> bool:
        """Entry-identical structure constants and unit."""
        return (
            self.p == other.p
            and np.array_equal(self.structure, other.structure)
            and np.array_equal(self.unit, other.unit)
        )

    def element(self, coords) -> "Element":
        return Element(self, coords)

    def one(self) -> "Element":
        return Element(self, self.unit)

    def zero(self) -> "Element":
        return Element(self, np.zeros(self.dim, dtype=np.int64))

    def basis_element(self, i: int) -> "Element":
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return Element(self, v)

    def basis(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    # coordinates-level products

    def mul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.mod(np.einsum("i,j,ijk->k", x, y, self.structure), self.p)

    def mul_many(self, xs, ys) -> np.ndarray:
        """Row-wise products of two ``(n, d)`` coordinate arrays."""
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        left = np.mod(np.einsum("bi,ijk->bjk", xs, self.structure), self.p)
        return np.mod(np.einsum("bjk,bj->bk", left, ys), self.p)

    def left_mul_matrix(self, x) -> np.ndarray:
        """Matrix of ``v -> x v``."""
        x = _coords(self, x)
        return np.mod(np.einsum("i,ijk->kj", x, self.structure), self.p)

    def right_mul_matrix(self, x) -> np.ndarray:
        """Matrix of ``v -> v x``; its column space is the left ideal ``A x``."""
        x = _coords(self, x)
        return np.mod(np.einsum("j,ijk->ki", x, self.structure), self.p)

    def left_mul_stack(self) -> np.ndarray:
        """``stack[i]`` is the matrix of left multiplication by ``e_i``."""
        return np.ascontiguousarray(np.transpose(self.structure, (0, 2, 1)))

    def right_mul_stack(self) -> np.ndarray:
        """``stack[j]`` is the matrix of right multiplication by ``e_j``."""
        return np.ascontiguousarray(np.transpose(self.structure, (1, 2, 0)))

    def left_ideal(self, x) -> Subspace:
        return gf.column_space(self.right_mul_matrix(x), self.p)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Algebra{label} over GF({self.p}), dim {self.dim}>"


def _coords(algebra: Algebra, x) -> np.ndarray:
    if isinstance(x, Element):
        if x.algebra is not algebra and not x.algebra.same_as(algebra):
            raise AlgebraMismatch("element belongs to a different algebra")
        return x.coords
    v = np.mod(np.asarray(x, dtype=np.int64), algebra.p)
    if v.shape != (algebra.dim,):
        raise DimensionMismatch(f"expected {algebra.dim} coordinates, got shape {v.shape}")
    return v


class Element:
    """An element of an :class:`Algebra`; supports ``+ - *`` and scalar ``int * x``."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords) -> None:
        v = np.mod(np.asarray(coords, dtype=np.int64), algebra.p)
        if v.shape != (algebra.dim,):
            raise DimensionMismatch(f"expected {algebra.dim} coordinates, got shape {v.shape}")
        v.flags.writeable = False
        self.algebra = algebra
        self.coords = v

    def _other(self, other: "Element") -> np.ndarray:
        if not isinstance(other, Element):
            return NotImplemented
        if other.algebra is not self.algebra and not other.algebra.same_as(self.algebra):
            raise AlgebraMismatch("elements belong to different algebras")
        return other.coords

    def __add__(self, other: "Element") -> "Element":
        return Element(self.algebra, self.coords + self._other(other))

    def __sub__(self, other: "Element") -> "Element":
        return Element(self.algebra, self.coords - self._other(other))

    def __neg__(self) -> "Element":
        return Element(self.algebra, -self.coords)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return Element(self.algebra, self.coords * int(other))
        return Element(self.algebra, self.algebra.mul(self.coords, self._other(other)))

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, np.integer)):
            return Element(self.algebra, self.coords * int(scalar))
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra.p == other.algebra.p and np.array_equal(self.coords, other.coords)

    def __hash__(self) -> int:
        return hash(self.coords.tobytes())

    def is_zero(self) -> bool:
        return not self.coords.any()

    def is_idempotent(self) -> bool:
        return self * self == self

    def __repr__(self) -> str:
        return f"Element({self.coords.tolist()})"


def multiply(a: Element, b: Element) -> Element:
    return a * b


def left_mul_matrix(a: Element) -> np.ndarray:
    return a.algebra.left_mul_matrix(a)


def right_mul_matrix(a: Element) -> np.ndarray:
    return a.algebra.right_mul_matrix(a)


def validate(a: Algebra) -> None:
    """Raise unless ``a`` is associative and ``unit`` is a two-sided identity.

    Checking basis triples suffices by trilinearity.  The first failing
    triple (lexicographic) is reported.
    """
    c = a.structure
    p = a.p
    left = np.mod(np.einsum("ijm,mkn->ijkn", c, c), p)
    right = np.mod(np.einsum("jkm,imn->ijkn", c, c), p)
    bad = np.argwhere((left != right).any(axis=3))
    if bad.size:
        raise NonAssociative(*(int(t) for t in bad[0]))
    eye = np.eye(a.dim, dtype=np.int64)
    as_left = np.mod(np.einsum("i,ijk->jk", a.unit, c), p)
    as_right = np.mod(np.einsum("j,ijk->ik", a.unit, c), p)
    bad_rows = np.flatnonzero((as_left != eye).any(axis=1) | (as_right != eye).any(axis=1))
    if bad_rows.size:
        raise UnitAxiomViolated(int(bad_rows[0]))


def projective_representatives(a: Algebra, cap: int = DEFAULT_CAP) -> Iterator[np.ndarray]:
    """One normalized representative per scalar line of nonzero elements.

    Enough for principal left ideals since ``A (lambda x) = A x``.
    """
    for block in gf.projective_points(a.p, a.dim, cap):
        yield from block


@dataclass(frozen=True)
class IdempotentReport:
    idempotents: list[Element]
    left_semicentral: list[Element]
    truncated: bool


def is_left_semicentral(a: Algebra, e: Element | np.ndarray) -> bool:
    """Whether ``A e == e A e`` as subspaces (``e`` is assumed idempotent)."""
    e = _coords(a, e)
    ae = gf.column_space(a.right_mul_matrix(e), a.p)
    eae = gf.column_space(gf.matmul_mod(a.left_mul_matrix(e), a.right_mul_matrix(e), a.p), a.p)
    return ae == eae


def idempotents(a: Algebra, cap: int = DEFAULT_CAP) -> IdempotentReport:
    """All idempotents in lexicographic coordinate order, flagged for semicentrality.

    When ``p**d`` exceeds the cap nothing is enumerated and the report is
    marked truncated.
    """
    if a.p**a.dim > cap:
        return IdempotentReport([], [], True)
    found: list[np.ndarray] = []
    for block in gf.all_points(a.p, a.dim, cap, chunk=1 << 14):
        sq = a.mul_many(block, block)
        found.extend(block[(sq == block).all(axis=1)])
    idems = [Element(a, v) for v in found]
    semi = [e for e in idems if is_left_semicentral(a, e)]
    return IdempotentReport(idems, semi, False)


def corner_space(a: Algebra, left: np.ndarray, right: np.ndarray) -> Subspace:
    """``span{x e_i y}`` for coordinates ``x``, ``y``."""
    m = gf.matmul_mod(a.left_mul_matrix(left), a.right_mul_matrix(right), a.p)
    return gf.column_space(m, a.p)


def _restrict_structure(a: Algebra, space: Subspace) -> np.ndarray:
    """Structure constants of a multiplicatively closed subspace in its RREF basis."""
    b = space.basis
    k = space.dim
    prods = a.mul_many(np.repeat(b, k, axis=0), np.tile(b, (k, 1)))
    if not space.contains_rows(prods).all():
        raise ValueError("subspace is not closed under multiplication")
    return prods[:, list(space.pivots)].reshape(k, k, k)


def corner_algebra(a: Algebra, e: Element | np.ndarray) -> tuple[Algebra, np.ndarray]:
    """The Peirce corner ``eAe`` with unit ``e``.

    Returns ``(corner, embed)`` where ``embed`` (d x k) maps corner
    coordinates to coordinates in ``a``.
    """
    e = _coords(a, e)
    if not e.any() or not np.array_equal(a.mul(e, e), e):
        raise NotIdempotent("corner_algebra needs a nonzero idempotent")
    space = corner_space(a, e, e)
    structure = _restrict_structure(a, space)
    corner = Algebra(a.field, structure, space.coordinates(e), name=f"corner of {a.name}" if a.name else "")
    return corner, space.basis.T.copy()


@dataclass(frozen=True, eq=False)
class PeirceSplit:
    """``A = eAe + eA(1-e) + (1-e)A(1-e)`` for a left semicentral idempotent ``e``.

    ``change_of_basis`` has the three embeddings as column blocks; it maps
    split coordinates ``(a, m, b)`` to coordinates of the original algebra.
    """

    source: Algebra
    e: np.ndarray
    corner_a: Algebra
    bimodule: "Bimodule"  # noqa: F821
    corner_b: Algebra
    embed_a: np.ndarray
    embed_m: np.ndarray
    embed_b: np.ndarray

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.corner_a.dim, self.bimodule.mdim, self.corner_b.dim

    @property
    def change_of_basis(self) -> np.ndarray:
        return np.hstack([self.embed_a, self.embed_m, self.embed_b])

    def to_split(self, v) -> np.ndarray:
        """Coordinates of ``v`` (in the source algebra) in split coordinates."""
        key = ("peirce_inverse", self.e.tobytes())
        inv = self.source._cache.get(key)
        if inv is None:
            inv = gf.inverse(self.change_of_basis, self.source.p)
            self.source._cache[key] = inv
        return gf.matmul_mod(inv, np.asarray(v, dtype=np.int64), self.source.p)


def peirce_split(a: Algebra, e: Element | np.ndarray) -> PeirceSplit:
    """Split ``a`` along a nontrivial left semicentral idempotent."""
    from .modules import Bimodule

    e = _coords(a, e)
    key = ("peirce", e.tobytes())
    if key in a._cache:
        return a._cache[key]
    p = a.p
    if not np.array_equal(a.mul(e, e), e):
        raise NotIdempotent("peirce_split needs an idempotent")
    f = np.mod(a.unit - e, p)
    if not e.any() or not f.any():
        raise NontrivialRequired("peirce_split needs e different from 0 and 1")
    if not is_left_semicentral(a, e):
        raise NotLeftSemicentral("A e differs from e A e")
    if corner_space(a, f, e).dim:
        raise NotLeftSemicentral("(1-e) A e is nonzero")

    corner_a, embed_a = corner_algebra(a, e)
    corner_b, embed_b = corner_algebra(a, f)
    mspace = corner_space(a, e, f)
    mdim = mspace.dim
    embed_m = mspace.basis.T.copy()
    piv = list(mspace.pivots)

    da, db = corner_a.dim, corner_b.dim
    ea, eb = embed_a.T, embed_b.T
    mb = mspace.basis
    if mdim:
        lact = a.mul_many(np.repeat(ea, mdim, axis=0), np.tile(mb, (da, 1)))[:, piv].reshape(da, mdim, mdim)
        ract = a.mul_many(np.repeat(mb, db, axis=0), np.tile(eb, (mdim, 1)))[:, piv].reshape(mdim, db, mdim)
    else:
        lact = np.zeros((da, 0, 0), dtype=np.int64)
        ract = np.zeros((0, db, 0), dtype=np.int64)
    bimodule = Bimodule(corner_a, corner_b, mdim, lact, ract)
    split = PeirceSplit(a, e, corner_a, bimodule, corner_b, embed_a, embed_m, embed_b)
    a._cache[key] = split
    return split


def closure(a: Algebra, gens: Sequence) -> Subspace:
    """Smallest subspace containing 1 and ``gens`` that is closed under products."""
    vecs = [a.unit] + [_coords(a, g) for g in gens]
    builder = gf.SpanBuilder(a.p, a.dim)
    builder.add_rows(np.array(vecs))
    while True:
        basis = builder.as_subspace().basis
        k = basis.shape[0]
        prods = a.mul_many(np.repeat(basis, k, axis=0), np.tile(basis, (k, 1)))
        if builder.add_rows(prods) == 0:
            return builder.as_subspace()


def subalgebra_generated_by(a: Algebra, gens: Sequence) -> Subspace:
    return closure(a, gens)


def is_idempotent_generated(a: Algebra, cap: int = DEFAULT_CAP) -> bool:
    gf.check_cap(a.p, a.dim, cap)
    report = idempotents(a, cap)
    return closure(a, report.idempotents).dim == a.dim


def two_sided_ideal(a: Algebra, v: Element | np.ndarray) -> Subspace:
    """``span{e_i v e_j}``; the ideal generated by ``v`` in a unital algebra."""
    v = _coords(a, v)
    rv = a.right_mul_matrix(v)  # columns: e_i v
    cols = [gf.matmul_mod(a.right_mul_matrix(a.basis_element(j).coords), rv, a.p) for j in range(a.dim)]
    ideal = gf.column_space(np.hstack(cols), a.p)
    for stack in (a.left_mul_stack(), a.right_mul_stack()):
        moved = np.mod(np.einsum("ikl,jl->ijk", stack, ideal.basis), a.p).reshape(-1, a.dim)
        assert ideal.contains_rows(moved).all()
    return ideal


def is_left_ideal(a: Algebra, space: Subspace) -> bool:
    if space.dim == 0:
        return True
    moved = np.mod(np.einsum("ikl,jl->ijk", a.left_mul_stack(), space.basis), a.p).reshape(-1, a.dim)
    return bool(space.contains_rows(moved).all())


def enumerate_left_ideals(a: Algebra, cap: int = 1 << 16) -> list[Subspace]:
    """Every left ideal, by filtering all subspaces of GF(p)^d (oracle scale only)."""
    return [s for s in gf.enumerate_subspaces(a.p, a.dim, cap) if is_left_ideal(a, s)]
