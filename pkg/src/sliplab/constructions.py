"""Builders for the algebra families used throughout the toolkit.

Matrix-type bases are ordered row-major over the allowed positions with the
base algebra's basis innermost, so every structure tensor is reproducible
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import Algebra, Element, corner_algebra, corner_space, is_left_semicentral, validate
from .errors import AlgebraMismatch, NotTriangulating
from .gf import PrimeField
from .modules import Bimodule, RightModule


@dataclass(frozen=True)
class BlockShape:
    kbar: tuple[int, ...]

    def __post_init__(self) -> None:
        kbar = tuple(int(k) for k in self.kbar)
        if not kbar or any(k < 1 for k in kbar):
            raise ValueError(f"block sizes must be positive, got {self.kbar}")
        object.__setattr__(self, "kbar", kbar)

    @property
    def n(self) -> int:
        return sum(self.kbar)

    def block_of(self) -> list[int]:
        return [j for j, k in enumerate(self.kbar) for _ in range(k)]


def scalar_field(p: int) -> Algebra:
    f = PrimeField(p)
    return Algebra(f, np.ones((1, 1, 1), dtype=np.int64), np.ones(1, dtype=np.int64), name=f"GF({p})")


def u_dual_numbers(p: int) -> Algebra:
    """``GF(p)[x]/(x^2)`` with basis ``(1, x)``."""
    f = PrimeField(p)
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
    a = Algebra(f, c, np.array([1, 0]), name=f"U({p})")
    validate(a)
    return a


def _matrix_units(a: Algebra, positions: list[tuple[int, int]]) -> np.ndarray:
    index = {pos: t for t, pos in enumerate(positions)}
    d = a.dim
    size = len(positions) * d
    c = np.zeros((size, size, size), dtype=np.int64)
    for t1, (r, s) in enumerate(positions):
        for t2, (s2, col) in enumerate(positions):
            if s != s2:
                continue
            t3 = index[(r, col)]
            c[t1 * d : (t1 + 1) * d, t2 * d : (t2 + 1) * d, t3 * d : (t3 + 1) * d] = a.structure
    return c


def _diag_element(a: Algebra, positions: list[tuple[int, int]], rows: Sequence[int]) -> np.ndarray:
    d = a.dim
    v = np.zeros(len(positions) * d, dtype=np.int64)
    for t, (r, s) in enumerate(positions):
        if r == s and r in rows:
            v[t * d : (t + 1) * d] = a.unit
    return v


def block_upper(a: Algebra, shape: BlockShape | Sequence[int]) -> tuple[Algebra, list[Element]]:
    """Block upper triangular matrices over ``a`` with the canonical idempotents.

    Returns the algebra and ``[F_1, ..., F_m]``, the sums of diagonal
    matrix units over each block.
    """
    if not isinstance(shape, BlockShape):
        shape = BlockShape(tuple(shape))
    blocks = shape.block_of()
    n = shape.n
    positions = [(r, s) for r in range(n) for s in range(n) if blocks[r] <= blocks[s]]
    c = _matrix_units(a, positions)
    unit = _diag_element(a, positions, range(n))
    if len(shape.kbar) == 1:
        name = f"M{n}({a.name})"
    elif all(k == 1 for k in shape.kbar):
        name = f"T{n}({a.name})"
    else:
        name = f"B{n}^{shape.kbar}({a.name})".replace(" ", "")
    alg = Algebra(a.field, c, unit, name=name)
    starts = np.cumsum((0,) + shape.kbar)
    idems = [
        Element(alg, _diag_element(a, positions, range(starts[j], starts[j + 1]))) for j in range(len(shape.kbar))
    ]
    return alg, idems


def matn(a: Algebra, n: int) -> Algebra:
    return block_upper(a, (n,))[0]


def tn(a: Algebra, n: int) -> Algebra:
    return block_upper(a, (1,) * n)[0]


def triangular(a: Algebra, m: Bimodule, b: Algebra) -> tuple[Algebra, Element]:
    """``Tri(a, m, b)`` with coordinates ordered ``(a, m, b)``, plus ``e = (1, 0, 0)``."""
    if not (m.left.same_as(a) and m.right.same_as(b)):
        raise AlgebraMismatch("bimodule is not over the given algebras")
    da, mm, db = a.dim, m.mdim, b.dim
    A, M, B = slice(0, da), slice(da, da + mm), slice(da + mm, da + mm + db)
    d = da + mm + db
    c = np.zeros((d, d, d), dtype=np.int64)
    c[A, A, A] = a.structure
    c[A, M, M] = m.laction
    c[M, B, M] = m.raction
    c[B, B, B] = b.structure
    unit = np.concatenate([a.unit, np.zeros(mm, dtype=np.int64), b.unit])
    name = f"Tri({a.name},{m.name or 'M'},{b.name})"
    t = Algebra(a.field, c, unit, name=name)
    e = np.concatenate([a.unit, np.zeros(mm + db, dtype=np.int64)])
    e_elem = Element(t, e)
    assert is_left_semicentral(t, e_elem)
    return t, e_elem


def direct_product(a: Algebra, b: Algebra) -> Algebra:
    if a.p != b.p:
        raise AlgebraMismatch("factors live over different fields")
    da, db = a.dim, b.dim
    c = np.zeros((da + db,) * 3, dtype=np.int64)
    c[:da, :da, :da] = a.structure
    c[da:, da:, da:] = b.structure
    return Algebra(a.field, c, np.concatenate([a.unit, b.unit]), name=f"{a.name}x{b.name}")


def regular_bimodule(a: Algebra) -> Bimodule:
    """``a`` as an ``(a, a)``-bimodule."""
    return Bimodule(a, a, a.dim, a.structure, a.structure, name=a.name)


def scalar_bimodule(a: Algebra) -> Bimodule:
    """``a`` as an ``(a, GF(p))``-bimodule; the right action is scalar multiplication."""
    f = scalar_field(a.p)
    ract = np.eye(a.dim, dtype=np.int64)[:, None, :]
    return Bimodule(a, f, a.dim, a.structure, ract, name=a.name)


def scalar_left_bimodule(b: Algebra) -> Bimodule:
    """``b`` as a ``(GF(p), b)``-bimodule; the left action is scalar multiplication."""
    f = scalar_field(b.p)
    lact = np.eye(b.dim, dtype=np.int64)[None, :, :]
    return Bimodule(f, b, b.dim, lact, b.structure, name=b.name)


def zero_bimodule(a: Algebra, b: Algebra) -> Bimodule:
    return Bimodule(a, b, 0, np.zeros((a.dim, 0, 0)), np.zeros((0, b.dim, 0)), name="0")


def _first_factor_bimodule(a: Algebra, other: Algebra, name: str) -> Bimodule:
    """``a`` as an ``(a x other, a)``-bimodule with ``(x, y) m = x m``."""
    da = a.dim
    lact = np.zeros((da + other.dim, da, da), dtype=np.int64)
    lact[:da] = a.structure
    return Bimodule(direct_product(a, other), a, da, lact, a.structure, name=name)


def e3_bimodule(a: Algebra) -> Bimodule:
    return _first_factor_bimodule(a, a, a.name)


def mixed_bimodule(a: Algebra, b: Algebra) -> Bimodule:
    return _first_factor_bimodule(a, b, a.name)


def matrix_bimodule(a: Algebra, r: int, s: int) -> Bimodule:
    """``r x s`` matrices over ``a`` as an ``(M_r(a), M_s(a))``-bimodule."""
    d = a.dim
    left = matn(a, r)
    right = matn(a, s)
    mdim = r * s * d
    lact = np.zeros((left.dim, mdim, mdim), dtype=np.int64)
    ract = np.zeros((mdim, right.dim, mdim), dtype=np.int64)

    def blk(i: int, j: int, cols: int) -> slice:
        t = i * cols + j
        return slice(t * d, (t + 1) * d)

    for u in range(r):
        for v in range(r):
            for j in range(s):
                lact[blk(u, v, r), blk(v, j, s), blk(u, j, s)] = a.structure
    for i in range(r):
        for j in range(s):
            for v in range(s):
                ract[blk(i, j, s), blk(j, v, s), blk(i, v, s)] = a.structure
    return Bimodule(left, right, mdim, lact, ract, name=f"M{r}x{s}({a.name})")


def matrix_module(a: Algebra, r: int, s: int) -> RightModule:
    """``r x s`` matrices over ``a`` as a right ``a``-module (entrywise action)."""
    d = a.dim
    k = r * s
    ract = np.zeros((k * d, d, k * d), dtype=np.int64)
    for t in range(k):
        ract[t * d : (t + 1) * d, :, t * d : (t + 1) * d] = a.structure
    return RightModule(a, k * d, ract, name=f"M{r}x{s}({a.name})")


def verify_triangulating(a: Algebra, idems: Sequence[Element | np.ndarray]) -> None:
    """Raise :class:`NotTriangulating` unless ``idems`` is a set of left triangulating idempotents."""
    p = a.p
    vecs = [np.mod(np.asarray(e.coords if isinstance(e, Element) else e, dtype=np.int64), p) for e in idems]
    if not vecs:
        raise NotTriangulating("i", "empty idempotent list")
    for t, v in enumerate(vecs):
        if not v.any():
            raise NotTriangulating("i", f"e{t + 1} is zero")
        if not np.array_equal(a.mul(v, v), v):
            raise NotTriangulating("i", f"e{t + 1} is not idempotent")
    if len({v.tobytes() for v in vecs}) != len(vecs):
        raise NotTriangulating("i", "idempotents are not distinct")
    if not np.array_equal(np.mod(np.sum(vecs, axis=0), p), a.unit):
        raise NotTriangulating("i", "idempotents do not sum to 1")
    if not is_left_semicentral(a, vecs[0]):
        raise NotTriangulating("ii", "e1 is not left semicentral")
    partial = vecs[0].copy()
    for k in range(1, len(vecs)):
        f = np.mod(a.unit - partial, p)
        corner, _ = corner_algebra(a, f)
        space = corner_space(a, f, f)
        if not space.contains(vecs[k]):
            raise NotTriangulating("iii", f"e{k + 1} is not in f{k} A f{k}")
        if not is_left_semicentral(corner, space.coordinates(vecs[k])):
            raise NotTriangulating("iii", f"e{k + 1} is not left semicentral in f{k} A f{k}")
        partial = np.mod(partial + vecs[k], p)
