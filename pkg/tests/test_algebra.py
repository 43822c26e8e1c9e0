from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sliplab import gf
from sliplab.algebra import (
    Algebra,
    Element,
    corner_algebra,
    enumerate_left_ideals,
    idempotents,
    is_idempotent_generated,
    is_left_ideal,
    is_left_semicentral,
    peirce_split,
    subalgebra_generated_by,
    two_sided_ideal,
    validate,
)
from sliplab.constructions import matn, scalar_field, tn, u_dual_numbers
from sliplab.corpus import construction_corpus, triangular_cases
from sliplab.errors import NonAssociative, NontrivialRequired, NotIdempotent, NotLeftSemicentral, UnitAxiomViolated
from sliplab.gf import PrimeField

SMALL = [a for a in construction_corpus() if a.dim <= 8]


def _vec(draw, a: Algebra):
    return np.array(draw(st.lists(st.integers(0, a.p - 1), min_size=a.dim, max_size=a.dim)), dtype=np.int64)


@pytest.mark.parametrize("a", construction_corpus(), ids=lambda a: a.name)
def test_corpus_algebras_validate(a):
    validate(a)


@given(st.sampled_from(SMALL), st.data())
def test_associativity_and_unit_on_elements(a, data):
    x, y, z = (_vec(data.draw, a) for _ in range(3))
    assert np.array_equal(a.mul(a.mul(x, y), z), a.mul(x, a.mul(y, z)))
    assert np.array_equal(a.mul(a.unit, x), x) and np.array_equal(a.mul(x, a.unit), x)


@given(st.sampled_from(SMALL), st.data())
def test_multiplication_matrices(a, data):
    x, y = _vec(data.draw, a), _vec(data.draw, a)
    xy = a.mul(x, y)
    assert np.array_equal(gf.matmul_mod(a.left_mul_matrix(x), y, a.p), xy)
    assert np.array_equal(gf.matmul_mod(a.right_mul_matrix(y), x, a.p), xy)


@given(st.sampled_from(SMALL), st.data())
def test_left_ideal_is_image_of_right_multiplication(a, data):
    x = _vec(data.draw, a)
    ideal = a.left_ideal(x)
    assert is_left_ideal(a, ideal)
    assert ideal.contains(x)


def test_element_arithmetic():
    u = u_dual_numbers(3)
    one, x = u.basis_element(0), u.basis_element(1)
    assert x * x == u.zero()
    assert (one + x) * (one - x) == one
    assert 2 * x + x == u.zero()
    assert one.is_idempotent() and not x.is_idempotent()
    assert x * 5 == 2 * x


def test_validate_detects_non_associativity():
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
    c[1, 1, 0] = c[1, 1, 1] = 1  # x^2 = 1 + x: fine so far
    validate(Algebra(PrimeField(2), c, [1, 0]))
    with pytest.raises(UnitAxiomViolated):
        validate(Algebra(PrimeField(2), c, [0, 1]))
    # e_1 e_1 = e_2, everything else with e_1, e_2 zero except e_2 e_1 = e_1
    c3 = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        c3[0, i, i] = c3[i, 0, i] = 1
    c3[1, 1, 2] = 1
    c3[2, 1, 1] = 1
    with pytest.raises(NonAssociative) as info:
        validate(Algebra(PrimeField(2), c3, [1, 0, 0]))
    assert info.value.triple == (1, 1, 1)


def test_idempotents_of_t2_frozen():
    t2 = tn(scalar_field(2), 2)
    rep = idempotents(t2)
    assert len(rep.idempotents) == 6
    assert [e.coords.tolist() for e in rep.left_semicentral] == [[0, 0, 0], [1, 0, 0], [1, 0, 1], [1, 1, 0]]
    assert not rep.truncated


def test_idempotents_truncate_past_cap():
    assert idempotents(matn(scalar_field(2), 3), cap=100).truncated


@pytest.mark.parametrize("case", triangular_cases(), ids=lambda c: c.name)
def test_triangular_unit_corner_is_left_semicentral(case):
    assert is_left_semicentral(case.algebra, case.e)


def test_peirce_split_dims_and_change_of_basis():
    t3 = tn(scalar_field(2), 3)
    e = Element(t3, [1, 0, 0, 0, 0, 0])
    split = peirce_split(t3, e)
    assert split.dims == (1, 2, 3)
    v = np.arange(6) % 2
    assert np.array_equal(gf.matmul_mod(split.change_of_basis, split.to_split(v), 2), v)
    case = next(c for c in triangular_cases() if c.name == "Tri(U(2),U(2),GF(2))")
    assert peirce_split(case.algebra, case.e).dims == (2, 2, 1)


def test_peirce_split_errors():
    t2 = tn(scalar_field(2), 2)
    with pytest.raises(NotIdempotent):
        peirce_split(t2, [0, 1, 0])
    with pytest.raises(NontrivialRequired):
        peirce_split(t2, t2.unit)
    with pytest.raises(NotLeftSemicentral):
        peirce_split(t2, [0, 0, 1])  # E_22 is right but not left semicentral


def test_corner_algebra_of_matrix_unit():
    m2 = matn(scalar_field(3), 2)
    corner, embed = corner_algebra(m2, [1, 0, 0, 0])
    assert corner.dim == 1
    validate(corner)
    assert embed.shape == (4, 1)


@pytest.mark.parametrize("name,count", [("M2", 5), ("U", 3), ("T2", 7), ("F", 2)])
def test_left_ideal_counts_frozen(name, count):
    f2 = scalar_field(2)
    a = {"M2": matn(f2, 2), "U": u_dual_numbers(2), "T2": tn(f2, 2), "F": f2}[name]
    ideals = enumerate_left_ideals(a)
    assert len(ideals) == count
    assert all(is_left_ideal(a, j) for j in ideals)


def test_idempotent_generation():
    f2 = scalar_field(2)
    assert is_idempotent_generated(matn(f2, 2))
    assert is_idempotent_generated(tn(f2, 3))
    assert not is_idempotent_generated(u_dual_numbers(2))


def test_two_sided_ideal_and_subalgebra():
    t2 = tn(scalar_field(2), 2)
    j = two_sided_ideal(t2, [0, 1, 0])
    assert j.dim == 1
    assert subalgebra_generated_by(t2, [[1, 0, 0]]).dim == 2  # span{1, E11}
