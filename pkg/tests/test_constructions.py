from __future__ import annotations

import numpy as np
import pytest

from sliplab.algebra import Element, validate
from sliplab.constructions import (
    block_upper,
    direct_product,
    matn,
    scalar_field,
    tn,
    triangular,
    u_dual_numbers,
    verify_triangulating,
    zero_bimodule,
)
from sliplab.corpus import base_algebras, block_cases, construction_corpus, triangular_cases
from sliplab.errors import AlgebraMismatch, NotTriangulating


@pytest.mark.parametrize(
    "kbar,dim",
    [((2,), 4), ((3,), 9), ((1, 1), 3), ((1, 1, 1), 6), ((1, 2), 7), ((2, 1), 7), ((2, 2), 12)],
)
def test_block_dimensions(kbar, dim):
    a, idems = block_upper(scalar_field(2), kbar)
    assert a.dim == dim
    validate(a)
    assert len(idems) == len(kbar)
    verify_triangulating(a, idems)


def test_block_over_u_scales_dimension():
    a, _ = block_upper(u_dual_numbers(2), (1, 2))
    assert a.dim == 14 and a.name == "B3^(1,2)(U(2))"


def test_names():
    f2 = scalar_field(2)
    assert matn(f2, 2).name == "M2(GF(2))"
    assert tn(u_dual_numbers(3), 2).name == "T2(U(3))"
    assert direct_product(f2, f2).name == "GF(2)xGF(2)"


def test_triangular_structure():
    f2 = scalar_field(2)
    t, e = triangular(f2, zero_bimodule(f2, f2), f2)
    assert t.dim == 2
    validate(t)
    assert e.coords.tolist() == [1, 0]
    with pytest.raises(AlgebraMismatch):
        triangular(scalar_field(3), zero_bimodule(f2, f2), f2)


def test_corpus_size_and_shape():
    algs = construction_corpus()
    assert len(algs) >= 30
    assert {a.p for a in algs} == {2, 3}
    names = [a.name for a in algs]
    assert len(names) == len(set(names))
    assert len(base_algebras()) == 8 and len(block_cases()) == 17 and len(triangular_cases()) == 15


def test_corpus_is_deterministic():
    first = [(a.name, a.structure.tobytes(), a.unit.tobytes()) for a in construction_corpus()]
    from sliplab.corpus import clear_caches

    clear_caches()
    second = [(a.name, a.structure.tobytes(), a.unit.tobytes()) for a in construction_corpus()]
    assert first == second


def test_verify_triangulating_clauses():
    t3, idems = block_upper(scalar_field(2), (1, 1, 1))
    e1, e2, e3 = (e.coords for e in idems)
    verify_triangulating(t3, [e1, e2, e3])
    cases = [
        ([e1, e2], "i"),  # sum is not 1
        ([e1, e2, e3, np.zeros(6, dtype=np.int64)], "i"),
        ([e1, e1, e2 + e3 - e1 * 0], "i"),
        ([e3, e2, e1], "ii"),  # E33 is not left semicentral
        ([e1, e3, e2], "iii"),  # E33 is not left semicentral in the lower corner
    ]
    for idem_list, clause in cases:
        with pytest.raises(NotTriangulating) as info:
            verify_triangulating(t3, idem_list)
        assert info.value.clause == clause


def test_triangular_idempotent_pair_is_triangulating():
    for case in triangular_cases():
        f = Element(case.algebra, case.algebra.unit) - case.e
        verify_triangulating(case.algebra, [case.e, f])
