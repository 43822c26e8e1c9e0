"""Right modules and bimodules over structure-constant algebras."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf
from .algebra import Algebra, Element, _coords, validate
from .errors import AlgebraMismatch, DimensionMismatch, ModuleAxiomViolated, UnitActionViolated
from .gf import Subspace


def _first(mask: np.ndarray) -> tuple[int, ...]:
    return tuple(int(t) for t in np.argwhere(mask)[0])


def _check_right(base: Algebra, mdim: int, r: np.ndarray) -> None:
    p = base.p
    c = base.structure
    lhs = np.mod(np.einsum("ijm,mkn->ijkn", r, r), p)
    rhs = np.mod(np.einsum("jkm,imn->ijkn", c, r), p)
    bad = (lhs != rhs).any(axis=3)
    if bad.any():
        raise ModuleAxiomViolated(*_first(bad), kind="right")
    unit_action = np.mod(np.einsum("j,ijk->ik", base.unit, r), p)
    bad_rows = np.flatnonzero((unit_action != np.eye(mdim, dtype=np.int64)).any(axis=1))
    if bad_rows.size:
        raise UnitActionViolated(int(bad_rows[0]), side="right")


def _check_left(base: Algebra, mdim: int, lact: np.ndarray) -> None:
    p = base.p
    c = base.structure
    lhs = np.mod(np.einsum("jkm,imn->ijkn", lact, lact), p)
    rhs = np.mod(np.einsum("ijm,mkn->ijkn", c, lact), p)
    bad = (lhs != rhs).any(axis=3)
    if bad.any():
        raise ModuleAxiomViolated(*_first(bad), kind="left")
    unit_action = np.mod(np.einsum("i,ijk->jk", base.unit, lact), p)
    bad_rows = np.flatnonzero((unit_action != np.eye(mdim, dtype=np.int64)).any(axis=1))
    if bad_rows.size:
        raise UnitActionViolated(int(bad_rows[0]), side="left")


@dataclass(frozen=True, eq=False)
class RightModule:
    """Right module over ``base``: ``f_i . e_j = sum_k raction[i, j, k] f_k``.

    Axioms are checked on construction.
    """

    base: Algebra
    mdim: int
    raction: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        r = np.mod(np.asarray(self.raction, dtype=np.int64), self.base.p)
        if r.shape != (self.mdim, self.base.dim, self.mdim):
            raise DimensionMismatch(f"raction must be {(self.mdim, self.base.dim, self.mdim)}, got {r.shape}")
        r.flags.writeable = False
        object.__setattr__(self, "raction", r)
        _check_right(self.base, self.mdim, r)

    @property
    def p(self) -> int:
        return self.base.p

    def action_stack(self) -> np.ndarray:
        """``stack[j]`` is the matrix of ``m -> m . e_j``."""
        return np.ascontiguousarray(np.transpose(self.raction, (1, 2, 0)))

    def action_matrix(self, b) -> np.ndarray:
        b = _coords(self.base, b)
        return np.mod(np.einsum("j,jki->ki", b, self.action_stack()), self.p)


@dataclass(frozen=True, eq=False)
class Bimodule:
    """``(left, right)``-bimodule with dense left and right action tensors.

    ``laction[i, j, k]`` is the coefficient of ``f_k`` in ``e_i . f_j``;
    ``raction[i, j, k]`` that of ``f_k`` in ``f_i . e'_j``.  All axioms,
    including ``(a m) b = a (m b)``, are checked on construction.
    """

    left: Algebra
    right: Algebra
    mdim: int
    laction: np.ndarray
    raction: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        if self.left.p != self.right.p:
            raise AlgebraMismatch("bimodule algebras live over different fields")
        p = self.left.p
        lact = np.mod(np.asarray(self.laction, dtype=np.int64), p)
        ract = np.mod(np.asarray(self.raction, dtype=np.int64), p)
        m = self.mdim
        if lact.shape != (self.left.dim, m, m):
            raise DimensionMismatch(f"laction must be {(self.left.dim, m, m)}, got {lact.shape}")
        if ract.shape != (m, self.right.dim, m):
            raise DimensionMismatch(f"raction must be {(m, self.right.dim, m)}, got {ract.shape}")
        lact.flags.writeable = False
        ract.flags.writeable = False
        object.__setattr__(self, "laction", lact)
        object.__setattr__(self, "raction", ract)
        _check_left(self.left, m, lact)
        _check_right(self.right, m, ract)
        lhs = np.mod(np.einsum("ijm,mkn->ijkn", lact, ract), p)
        rhs = np.mod(np.einsum("jkm,imn->ijkn", ract, lact), p)
        bad = (lhs != rhs).any(axis=3)
        if bad.any():
            raise ModuleAxiomViolated(*_first(bad), kind="bimodule")

    @property
    def p(self) -> int:
        return self.left.p

    def left_action_stack(self) -> np.ndarray:
        """``stack[i]`` is the matrix of ``m -> e_i . m``."""
        return np.ascontiguousarray(np.transpose(self.laction, (0, 2, 1)))

    def left_action_matrix(self, a) -> np.ndarray:
        a = _coords(self.left, a)
        return np.mod(np.einsum("i,ikj->kj", a, self.left_action_stack()), self.p)

    def right_module(self) -> RightModule:
        return RightModule(self.right, self.mdim, self.raction, name=self.name)

    def action_stack(self) -> np.ndarray:
        return self.right_module().action_stack()


def validate_module(x: RightModule | Bimodule) -> None:
    """Re-run every axiom check; raises the first violation found."""
    if isinstance(x, Bimodule):
        validate(x.left)
        validate(x.right)
        Bimodule(x.left, x.right, x.mdim, x.laction, x.raction)
    else:
        validate(x.base)
        RightModule(x.base, x.mdim, x.raction)


def regular_module(a: Algebra) -> RightModule:
    """``a`` as a right module over itself."""
    return RightModule(a, a.dim, a.structure, name=f"{a.name} regular" if a.name else "regular")


def module_principal_image(x: RightModule, b: Element | np.ndarray) -> Subspace:
    """``X . b``: the column space of the right action matrix of ``b``."""
    return gf.column_space(x.action_matrix(b), x.p)


def left_annihilator(m: Bimodule) -> Subspace:
    """``{a in left algebra : a . M = 0}``."""
    d = m.left.dim
    if m.mdim == 0:
        return Subspace.full(m.p, d)
    system = m.laction.reshape(d, m.mdim * m.mdim).T
    return gf.nullspace(system, m.p)


def endomorphism_algebra(x: RightModule) -> tuple[Algebra, Bimodule]:
    """``End_B(X)`` and ``X`` as an ``(End_B(X), B)``-bimodule.

    Endomorphisms are the matrices commuting with every right action
    matrix.  The canonical basis of that solution space (vectorized
    row-major) is the algebra basis; products are matrix compositions.
    """
    p = x.p
    m = x.mdim
    if m == 0:
        raise DimensionMismatch("the zero module has no unital endomorphism algebra")
    eye = np.eye(m, dtype=np.int64)
    blocks = [np.kron(eye, s.T) - np.kron(s, eye) for s in x.action_stack()]
    space = gf.nullspace(np.vstack(blocks), p)
    k = space.dim
    mats = space.basis.reshape(k, m, m)
    prods = np.mod(np.einsum("iab,jbc->ijac", mats, mats), p).reshape(k * k, m * m)
    if not space.contains_rows(prods).all():
        raise AssertionError("commutant is not closed under composition")
    structure = prods[:, list(space.pivots)].reshape(k, k, k)
    unit = space.coordinates(eye.reshape(-1))
    end_alg = Algebra(x.base.field, structure, unit, name=f"End({x.name})" if x.name else "End")
    validate(end_alg)
    laction = np.transpose(mats, (0, 2, 1))  # phi_i . f_j = column j of phi_i
    bimodule = Bimodule(end_alg, x.base, m, laction, x.raction, name=x.name)
    assert left_annihilator(bimodule).dim == 0
    return end_alg, bimodule
