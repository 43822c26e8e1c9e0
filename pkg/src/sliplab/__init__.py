"""Exact decisions for unital associative algebras over GF(p).

Everything is computed over the prime field with exact integer arithmetic:
LIP maps and local left multipliers, the SLIP property, zero product
determination, and the triangular / block triangular constructions they are
tested on.
"""

from __future__ import annotations

from .algebra import Algebra, Element, idempotents, is_left_semicentral, peirce_split, validate
from .constructions import (
    block_upper,
    direct_product,
    matn,
    scalar_field,
    tn,
    triangular,
    u_dual_numbers,
    verify_triangulating,
)
from .errors import SlipLabError
from .gf import PrimeField, Subspace
from .modules import Bimodule, RightModule, endomorphism_algebra, left_annihilator
from .slip import (
    LinearMap,
    MapSpace,
    decompose_lip_triangular,
    is_slip,
    lip_check_full,
    lip_space,
    local_equals_multiplier,
)
from .zpd import is_zpd

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Bimodule",
    "Element",
    "LinearMap",
    "MapSpace",
    "PrimeField",
    "RightModule",
    "SlipLabError",
    "Subspace",
    "block_upper",
    "decompose_lip_triangular",
    "direct_product",
    "endomorphism_algebra",
    "idempotents",
    "is_left_semicentral",
    "is_slip",
    "is_zpd",
    "left_annihilator",
    "lip_check_full",
    "lip_space",
    "local_equals_multiplier",
    "matn",
    "peirce_split",
    "scalar_field",
    "tn",
    "triangular",
    "u_dual_numbers",
    "validate",
    "verify_triangulating",
]
