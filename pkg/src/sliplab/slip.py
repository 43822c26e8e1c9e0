"""Left multipliers, LIP maps and the SLIP decision.

A linear map ``psi: B -> X`` into a right ``B``-module is a local left
multiplier when ``psi(v)`` lies in ``X v`` for every ``v``.  For ``X = A``
this is exactly the LIP condition, because in a unital algebra the left
ideal generated by ``v`` is ``A v``.

Membership ``psi(v) in X v`` is linear in ``psi``: with ``C_v`` the left
nullspace of the action matrix of ``v``, it says ``c . psi(v) = 0`` for every
row ``c`` of ``C_v``.  Each such certificate is one linear constraint on
the unknown matrix (the row ``outer(c, v)`` in row-major vectorization), so
the set of local multipliers is the nullspace of all constraints gathered
over the projective points of ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import gf
from .algebra import DEFAULT_CAP, Algebra, Element, enumerate_left_ideals, peirce_split
from .errors import BlockStructureViolated, DimensionMismatch, NotLIP
from .gf import SpanBuilder, Subspace
from .modules import RightModule, regular_module

_FIRST_BATCH = 64
_MAX_BATCH = 4096


@dataclass(frozen=True, eq=False)
class LinearMap:
    """``psi(v) = matrix @ v`` in coordinates."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.int64, ndmin=2)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v, p: int) -> np.ndarray:
        return gf.matmul_mod(self.matrix, np.asarray(v, dtype=np.int64), p)

    def vectorized(self) -> np.ndarray:
        return self.matrix.reshape(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.matrix.shape, self.matrix.tobytes()))


@dataclass(frozen=True, eq=False)
class MapSpace:
    """A subspace of linear maps ``GF(p)^domain -> GF(p)^codomain``.

    Maps are vectorized row-major over (codomain index, domain index).
    """

    domain_dim: int
    codomain_dim: int
    space: Subspace
    points_processed: int = 0
    early_stop: bool = False

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def p(self) -> int:
        return self.space.p

    def maps(self) -> list[LinearMap]:
        return [LinearMap(row.reshape(self.codomain_dim, self.domain_dim)) for row in self.space.basis]

    def contains(self, psi: LinearMap | np.ndarray) -> bool:
        m = psi.matrix if isinstance(psi, LinearMap) else np.asarray(psi, dtype=np.int64)
        if m.shape != (self.codomain_dim, self.domain_dim):
            raise DimensionMismatch(f"map of shape {m.shape} in a space of {self.codomain_dim}x{self.domain_dim} maps")
        return self.space.contains(m.reshape(-1))

    def __le__(self, other: "MapSpace") -> bool:
        return self.space <= other.space

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MapSpace):
            return NotImplemented
        return self.space == other.space

    def __hash__(self) -> int:
        return hash(self.space)


def _batches(p: int, d: int, cap: int, projective: bool) -> Iterator[np.ndarray]:
    """Points in lexicographic order, in batches that double up to a ceiling.

    Small first batches let early termination kick in cheaply.
    """
    source = gf.projective_points if projective else gf.nonzero_points
    size = _FIRST_BATCH
    pending: list[np.ndarray] = []
    count = 0
    for block in source(p, d, cap, chunk=_MAX_BATCH):
        pending.append(block)
        count += block.shape[0]
        while count >= size:
            allpts = np.vstack(pending)
            yield allpts[:size]
            rest = allpts[size:]
            pending = [rest] if rest.shape[0] else []
            count = rest.shape[0]
            size = min(2 * size, _MAX_BATCH)
    if count:
        yield np.vstack(pending)


def _action_at(stack: np.ndarray, points: np.ndarray, p: int) -> np.ndarray:
    """``out[b] = sum_j points[b, j] * stack[j]``."""
    return np.mod(np.einsum("bj,jkl->bkl", points, stack), p)


def local_constraint_space(
    stack: np.ndarray,
    p: int,
    cap: int = DEFAULT_CAP,
    early_stop: bool = True,
    projective: bool = True,
) -> MapSpace:
    """All ``psi: GF(p)^d -> GF(p)^m`` with ``psi(v)`` in the column space of ``sum v_j stack[j]``.

    ``stack`` has shape ``(d, m, m)``.  The solution space always contains
    the ``m``-dimensional multiplier space, so once the constraint rank hits
    ``m*d - m`` nothing more can change and enumeration may stop.
    """
    stack = np.asarray(stack, dtype=np.int64)
    d, m, _ = stack.shape
    n = m * d
    builder = SpanBuilder(p, n)
    target = n - m
    processed = 0
    stopped = False
    if n and target > 0:
        for points in _batches(p, d, cap, projective):
            actions = _action_at(stack, points, p)
            certs, owners = gf.batched_nullspace(np.transpose(actions, (0, 2, 1)), p)
            if certs.shape[0]:
                rows = (certs[:, :, None] * points[owners][:, None, :]).reshape(-1, n)
                builder.add_rows(rows)
            processed += points.shape[0]
            if early_stop and builder.rank >= target:
                stopped = processed < gf.projective_count(p, d) if projective else processed < p**d - 1
                break
    else:
        gf.check_cap(p, d, cap)
    constraints = builder.as_subspace()
    if constraints.dim:
        solutions = Subspace.span(
            p, n, gf._nullspace_rows(constraints.basis, constraints.pivots, n, p)
        )
    else:
        solutions = Subspace.full(p, n)
    return MapSpace(d, m, solutions, processed, stopped)


def left_multiplier_space(a: Algebra) -> MapSpace:
    """Span of the left multiplications ``L_x``; its dimension is ``dim a``."""
    rows = a.left_mul_stack().reshape(a.dim, -1)
    return MapSpace(a.dim, a.dim, Subspace.span(a.p, a.dim * a.dim, rows))


def lip_space(a: Algebra, cap: int = DEFAULT_CAP, early_stop: bool = True, projective: bool = True) -> MapSpace:
    """Every linear map ``psi`` with ``psi(v) in A v`` for all ``v``."""
    key = ("lip", cap, early_stop, projective)
    if key not in a._cache:
        a._cache[key] = local_constraint_space(a.right_mul_stack(), a.p, cap, early_stop, projective)
    return a._cache[key]


def module_multiplier_space(b: Algebra, x: RightModule) -> MapSpace:
    """Span of ``v -> x0 . v`` over a basis ``x0`` of ``x``; dimension ``mdim``."""
    # raction[i] is indexed (j, k); the map matrix wants (k, j)
    mats = np.transpose(x.raction, (0, 2, 1)).reshape(x.mdim, x.mdim * b.dim)
    return MapSpace(b.dim, x.mdim, Subspace.span(b.p, x.mdim * b.dim, mats))


def local_left_multiplier_space(
    b: Algebra, x: RightModule, cap: int = DEFAULT_CAP, early_stop: bool = True
) -> MapSpace:
    if not x.base.same_as(b):
        raise DimensionMismatch("module is not over the given algebra")
    return local_constraint_space(x.action_stack(), b.p, cap, early_stop)


def local_equals_multiplier(b: Algebra, x: RightModule, cap: int = DEFAULT_CAP) -> bool:
    """Whether every local left multiplier ``b -> x`` is a left multiplier."""
    return local_left_multiplier_space(b, x, cap).dim == module_multiplier_space(b, x).dim


def is_local_multiplier(stack: np.ndarray, psi: np.ndarray, p: int, cap: int = DEFAULT_CAP) -> bool:
    """Pointwise check of ``psi(v) in X v`` over every projective point."""
    stack = np.asarray(stack, dtype=np.int64)
    psi = np.asarray(psi, dtype=np.int64)
    d, m, _ = stack.shape
    if psi.shape != (m, d):
        raise DimensionMismatch(f"expected a {m}x{d} map, got {psi.shape}")
    if m == 0:
        return True
    for points in gf.projective_points(p, d, cap, chunk=_MAX_BATCH):
        actions = _action_at(stack, points, p)
        images = gf.matmul_mod(points, psi.T, p)
        if not gf.batched_in_column_space(actions, images, p).all():
            return False
    return True


def is_lip(a: Algebra, psi: LinearMap | np.ndarray, cap: int = DEFAULT_CAP) -> bool:
    m = psi.matrix if isinstance(psi, LinearMap) else psi
    return is_local_multiplier(a.right_mul_stack(), m, a.p, cap)


def is_left_multiplier(a: Algebra, psi: LinearMap | np.ndarray) -> bool:
    """``psi == L_{psi(1)}``."""
    m = psi.matrix if isinstance(psi, LinearMap) else np.asarray(psi, dtype=np.int64)
    image_of_one = gf.matmul_mod(m, a.unit, a.p)
    return bool(np.array_equal(np.mod(m, a.p), a.left_mul_matrix(image_of_one)))


@dataclass(frozen=True)
class SlipReport:
    multiplier_dim: int
    lip_dim: int
    is_slip: bool
    witness: LinearMap | None
    points_processed: int
    early_stop: bool
    name: str = field(default="")


def is_slip(a: Algebra, cap: int = DEFAULT_CAP, early_stop: bool = True) -> SlipReport:
    """Decide whether every LIP map on ``a`` is a left multiplier.

    On failure the witness is the first LIP basis map (canonical order)
    that enlarges the multiplier span, re-verified pointwise.
    """
    if a.dim == 1:
        return SlipReport(1, 1, True, None, 0, False, a.name)
    mult = left_multiplier_space(a)
    lip = lip_space(a, cap, early_stop)
    if not mult <= lip:
        raise AssertionError("left multiplier space escaped the LIP space")
    if lip.dim == mult.dim:
        return SlipReport(mult.dim, lip.dim, True, None, lip.points_processed, lip.early_stop, a.name)
    witness = extend_basis_witness(mult, lip)
    if not is_lip(a, witness, cap) or is_left_multiplier(a, witness):
        raise AssertionError("witness failed re-verification")
    return SlipReport(mult.dim, lip.dim, False, witness, lip.points_processed, lip.early_stop, a.name)


def extend_basis_witness(small: MapSpace, big: MapSpace) -> LinearMap:
    builder = SpanBuilder(small.p, small.space.ambient_dim)
    builder.add_rows(small.space.basis)
    for row in big.space.basis:
        if builder.add_vector(row):
            return LinearMap(row.reshape(big.codomain_dim, big.domain_dim))
    raise ValueError("second space adds nothing to the first")


def lip_check_full(a: Algebra, psi: LinearMap | np.ndarray, cap: int = 1 << 16) -> bool:
    """``psi(J) <= J`` for every left ideal ``J``, straight from the definition."""
    m = psi.matrix if isinstance(psi, LinearMap) else np.asarray(psi, dtype=np.int64)
    for ideal in _left_ideals(a, cap):
        if ideal.dim and not ideal.contains_rows(gf.matmul_mod(ideal.basis, m.T, a.p)).all():
            return False
    return True


def _left_ideals(a: Algebra, cap: int) -> list[Subspace]:
    key = ("left_ideals", cap)
    if key not in a._cache:
        a._cache[key] = enumerate_left_ideals(a, cap)
    return a._cache[key]


def lip_space_from_ideals(a: Algebra, cap: int = 1 << 16) -> MapSpace:
    """The LIP space computed from the whole left ideal lattice.

    Independent of principal ideals: for each ideal ``J``, each basis vector
    ``u`` of ``J`` and each certificate ``c`` of ``J``, require ``c psi u = 0``.
    """
    d = a.dim
    builder = SpanBuilder(a.p, d * d)
    for ideal in _left_ideals(a, cap):
        if ideal.dim in (0, d):
            continue
        certs = ideal.annihilator().basis
        rows = (certs[:, None, :, None] * ideal.basis[None, :, None, :]).reshape(-1, d * d)
        builder.add_rows(rows)
    cons = builder.as_subspace()
    if cons.dim == 0:
        return MapSpace(d, d, Subspace.full(a.p, d * d))
    return MapSpace(d, d, Subspace.span(a.p, d * d, gf._nullspace_rows(cons.basis, cons.pivots, d * d, a.p)))


@dataclass(frozen=True)
class LipDecomposition:
    """Block pieces of a LIP map on ``Tri(A', M', B')`` in split coordinates."""

    alpha: LinearMap
    tau: LinearMap
    beta1: LinearMap
    beta2: LinearMap
    checks: dict[str, bool]

    @property
    def all_passed(self) -> bool:
        return all(self.checks.values())


def decompose_lip_triangular(
    t: Algebra, e: Element | np.ndarray, psi: LinearMap | np.ndarray, cap: int = DEFAULT_CAP
) -> LipDecomposition:
    """Split a LIP map along a nontrivial left semicentral idempotent ``e``.

    The map must send ``A'`` into ``A'``, ``M'`` into ``M'`` and ``B'`` into
    ``M' + B'``; anything else raises :class:`BlockStructureViolated`.
    """
    m = psi.matrix if isinstance(psi, LinearMap) else np.asarray(psi, dtype=np.int64)
    p = t.p
    if not lip_space(t, cap).contains(m):
        raise NotLIP("map does not preserve every principal left ideal")
    split = peirce_split(t, e)
    da, dm, db = split.dims
    change = split.change_of_basis
    local = gf.matmul_mod(split.to_split(m), change, p)
    A, M, B = slice(0, da), slice(da, da + dm), slice(da + dm, da + dm + db)
    for rows, cols, what in ((M, A, "A into M"), (B, A, "A into B"), (A, M, "M into A"), (B, M, "M into B"), (A, B, "B into A")):
        if local[rows, cols].any():
            raise BlockStructureViolated(f"LIP map sends {what}")
    alpha, tau = local[A, A], local[M, M]
    beta1, beta2 = local[M, B], local[B, B]

    bim = split.bimodule
    checks: dict[str, bool] = {}
    if dm:
        # tau(a_i m_j) against alpha(a_i) m_j for every basis pair
        lstack = bim.left_action_stack()
        lhs = np.mod(np.einsum("kl,ilj->ijk", tau, lstack), p)
        rhs = np.mod(np.einsum("li,lkj->ijk", alpha, lstack), p)
        checks["tau(am) = alpha(a)m"] = bool(np.array_equal(lhs, rhs))
    else:
        checks["tau(am) = alpha(a)m"] = True
    checks["alpha LIP"] = lip_space(split.corner_a, cap).contains(alpha)
    checks["beta2 LIP"] = lip_space(split.corner_b, cap).contains(beta2)
    if dm:
        local_space = local_left_multiplier_space(split.corner_b, bim.right_module(), cap)
        checks["beta1 local multiplier"] = local_space.contains(beta1)
    else:
        checks["beta1 local multiplier"] = True
    return LipDecomposition(LinearMap(alpha), LinearMap(tau), LinearMap(beta1), LinearMap(beta2), checks)


def regular_local_equals_multiplier(a: Algebra, cap: int = DEFAULT_CAP) -> bool:
    return local_equals_multiplier(a, regular_module(a), cap)
