"""The fixed collection of constructed algebras that theorem checks run over.

Everything here is deterministic and cached; call :func:`clear_caches` to
force rebuilding (and recomputation of every cached decision).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, Element
from .constructions import (
    block_upper,
    direct_product,
    e3_bimodule,
    matn,
    matrix_bimodule,
    matrix_module,
    mixed_bimodule,
    regular_bimodule,
    scalar_bimodule,
    scalar_field,
    scalar_left_bimodule,
    triangular,
    u_dual_numbers,
    zero_bimodule,
)
from .modules import Bimodule, endomorphism_algebra, regular_module


@dataclass(frozen=True, eq=False)
class TriangularCase:
    name: str
    a: Algebra
    m: Bimodule
    b: Algebra
    algebra: Algebra
    e: Element


@dataclass(frozen=True, eq=False)
class BlockCase:
    name: str
    base: Algebra
    kbar: tuple[int, ...]
    algebra: Algebra
    idempotents: list[Element]


@lru_cache(maxsize=None)
def base_algebras() -> dict[str, Algebra]:
    f2, f3 = scalar_field(2), scalar_field(3)
    u2, u3 = u_dual_numbers(2), u_dual_numbers(3)
    m2 = matn(f2, 2)
    return {
        "GF(2)": f2,
        "GF(3)": f3,
        "U(2)": u2,
        "U(3)": u3,
        "GF(2)xGF(2)": direct_product(f2, f2),
        "GF(2)xU(2)": direct_product(f2, u2),
        "U(2)xU(2)": direct_product(u2, u2),
        "M2(GF(2))xGF(2)": direct_product(m2, f2),
    }


_BLOCK_SPECS = [
    ("GF(2)", (1, 1)),
    ("GF(2)", (1, 1, 1)),
    ("GF(3)", (1, 1)),
    ("GF(3)", (1, 1, 1)),
    ("U(2)", (1, 1)),
    ("U(2)", (1, 1, 1)),
    ("U(3)", (1, 1)),
    ("GF(2)", (2,)),
    ("GF(2)", (3,)),
    ("GF(3)", (2,)),
    ("U(2)", (2,)),
    ("GF(2)", (1, 2)),
    ("GF(2)", (2, 1)),
    ("GF(3)", (1, 2)),
    ("U(2)", (1, 2)),
    ("U(2)", (2, 1)),
    ("GF(2)", (2, 2)),
]


@lru_cache(maxsize=None)
def block_cases() -> list[BlockCase]:
    bases = base_algebras()
    out = []
    for base_name, kbar in _BLOCK_SPECS:
        alg, idems = block_upper(bases[base_name], kbar)
        out.append(BlockCase(alg.name, bases[base_name], kbar, alg, idems))
    return out


def block_case(name: str) -> BlockCase:
    for case in block_cases():
        if case.name == name:
            return case
    raise KeyError(name)


@lru_cache(maxsize=None)
def triangular_cases() -> list[TriangularCase]:
    b = base_algebras()
    f2, f3, u2, u3 = b["GF(2)"], b["GF(3)"], b["U(2)"], b["U(3)"]
    m2 = block_case("M2(GF(2))").algebra
    row = matrix_bimodule(f2, 1, 2)
    modules: list[tuple[str, Bimodule]] = [
        ("Tri(U(2),U(2),GF(2))", scalar_bimodule(u2)),
        ("Tri(U(3),U(3),GF(3))", scalar_bimodule(u3)),
        ("Tri(GF(2),0,GF(2))", zero_bimodule(f2, f2)),
        ("Tri(M2(GF(2)),col,GF(2))", matrix_bimodule(f2, 2, 1)),
        ("Tri(GF(2),row,M2(GF(2)))", row),
        ("Tri(GF(3),row,M2(GF(3)))", matrix_bimodule(f3, 1, 2)),
        ("Tri(M2xM2,M2,M2)", e3_bimodule(m2)),
        ("Tri(M2xU,M2,M2)", mixed_bimodule(m2, u2)),
        ("Tri(U(2),U(2),U(2))", regular_bimodule(u2)),
        ("Tri(GF(2),U(2),U(2))", scalar_left_bimodule(u2)),
        ("Tri(GF(3),U(3),U(3))", scalar_left_bimodule(u3)),
        ("Tri(M2,M2,M2)", regular_bimodule(m2)),
    ]
    for label, right_module in (
        ("GF(2)^2", matrix_module(f2, 1, 2)),
        ("U(2)", regular_module(u2)),
        ("row", row.right_module()),
    ):
        _, bim = endomorphism_algebra(right_module)
        modules.append((f"Tri(End({label}),{label},{right_module.base.name})", bim))
    out = []
    for name, module in modules:
        alg, e = triangular(module.left, module, module.right)
        out.append(TriangularCase(name, module.left, module, module.right, alg, e))
    return out


def triangular_case(name: str) -> TriangularCase:
    for case in triangular_cases():
        if case.name == name:
            return case
    raise KeyError(name)


def construction_corpus() -> list[Algebra]:
    """Every corpus algebra: bases, block algebras and triangular algebras."""
    return (
        list(base_algebras().values())
        + [c.algebra for c in block_cases()]
        + [c.algebra for c in triangular_cases()]
    )


def clear_caches() -> None:
    for fn in (base_algebras, block_cases, triangular_cases):
        fn.cache_clear()
