from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sliplab import gf
from sliplab.constructions import matn, matrix_module, scalar_field, tn, u_dual_numbers
from sliplab.corpus import construction_corpus, triangular_cases
from sliplab.errors import BlockStructureViolated, DimensionMismatch, EnumerationCapExceeded, NotLIP
from sliplab.modules import regular_module
from sliplab.slip import (
    LinearMap,
    decompose_lip_triangular,
    is_left_multiplier,
    is_lip,
    is_local_multiplier,
    is_slip,
    left_multiplier_space,
    lip_check_full,
    lip_space,
    lip_space_from_ideals,
    local_equals_multiplier,
    local_left_multiplier_space,
    module_multiplier_space,
    regular_local_equals_multiplier,
)

# (lip_dim, is_slip) for every corpus algebra, from the run that also agreed
# with the ideal-lattice oracle wherever that oracle is affordable
FROZEN = {
    "GF(2)": (1, True), "GF(3)": (1, True), "U(2)": (3, False), "U(3)": (3, False),
    "GF(2)xGF(2)": (2, True), "GF(2)xU(2)": (4, False), "U(2)xU(2)": (6, False),
    "M2(GF(2))xGF(2)": (5, True), "T2(GF(2))": (3, True), "T3(GF(2))": (6, True),
    "T2(GF(3))": (3, True), "T3(GF(3))": (6, True), "T2(U(2))": (8, False), "T3(U(2))": (15, False),
    "T2(U(3))": (8, False), "M2(GF(2))": (4, True), "M3(GF(2))": (9, True), "M2(GF(3))": (4, True),
    "M2(U(2))": (8, True), "B3^(1,2)(GF(2))": (7, True), "B3^(2,1)(GF(2))": (7, True),
    "B3^(1,2)(GF(3))": (7, True), "B3^(1,2)(U(2))": (14, True), "B3^(2,1)(U(2))": (17, False),
    "B4^(2,2)(GF(2))": (12, True),
}

TINY = [a for a in construction_corpus() if a.dim <= 3 and a.p ** (a.dim * a.dim) <= 1 << 12]


def brute_lip_count(a) -> int:
    """Number of linear maps with psi(v) in A v for every v, by listing all maps."""
    d, p = a.dim, a.p
    points = np.vstack(list(gf.nonzero_points(p, d, cap=1 << 20)))
    ideals = [a.left_ideal(v) for v in points]
    count = 0
    for flat in itertools.product(range(p), repeat=d * d):
        m = np.array(flat, dtype=np.int64).reshape(d, d)
        images = gf.matmul_mod(points, m.T, p)
        if all(j.contains(img) for j, img in zip(ideals, images)):
            count += 1
    return count


@pytest.mark.parametrize("a", TINY, ids=lambda a: a.name)
def test_lip_space_matches_exhaustive_map_count(a):
    assert a.p ** lip_space(a).dim == brute_lip_count(a)


@pytest.mark.parametrize("a", [a for a in construction_corpus() if a.name in FROZEN], ids=lambda a: a.name)
def test_frozen_lip_dimensions(a):
    r = is_slip(a)
    assert (r.lip_dim, r.is_slip) == FROZEN[a.name]
    assert r.multiplier_dim == a.dim


@pytest.mark.parametrize("p", [2, 3, 5])
def test_dual_numbers_witness(p):
    u = u_dual_numbers(p)
    r = is_slip(u)
    assert not r.is_slip and r.lip_dim == 3 and r.multiplier_dim == 2
    # psi(1) = 1, psi(x) = 0 is LIP but psi(x) != psi(1) x
    assert r.witness.matrix.tolist() == [[1, 0], [0, 0]]
    assert lip_check_full(u, r.witness)
    assert not is_left_multiplier(u, r.witness)


@given(st.sampled_from([a for a in construction_corpus() if a.dim <= 8]), st.data())
def test_left_multiplications_are_lip(a, data):
    x = np.array(data.draw(st.lists(st.integers(0, a.p - 1), min_size=a.dim, max_size=a.dim)))
    lx = a.left_mul_matrix(x)
    assert lip_space(a).contains(lx)
    assert is_left_multiplier(a, lx)
    assert left_multiplier_space(a) <= lip_space(a)


@given(st.sampled_from([a for a in construction_corpus() if 2 <= a.dim <= 7]), st.data())
def test_random_lip_combinations_are_pointwise_local(a, data):
    space = lip_space(a)
    coeffs = np.array(data.draw(st.lists(st.integers(0, a.p - 1), min_size=space.dim, max_size=space.dim)))
    psi = gf.matmul_mod(coeffs[None, :], space.space.basis, a.p)[0].reshape(a.dim, a.dim)
    assert is_local_multiplier(a.right_mul_stack(), psi, a.p)
    assert is_lip(a, psi)


@given(st.sampled_from([a for a in construction_corpus() if 2 <= a.dim <= 5]), st.data())
def test_non_lip_maps_fail_pointwise(a, data):
    flat = data.draw(st.lists(st.integers(0, a.p - 1), min_size=a.dim**2, max_size=a.dim**2))
    psi = np.array(flat, dtype=np.int64).reshape(a.dim, a.dim)
    assert lip_space(a).contains(psi) == is_local_multiplier(a.right_mul_stack(), psi, a.p) == lip_check_full(a, psi)


@pytest.mark.parametrize("a", [a for a in construction_corpus() if a.dim <= 7], ids=lambda a: a.name)
def test_enumeration_modes_agree(a):
    base = lip_space(a)
    assert lip_space(a, early_stop=False) == base
    assert lip_space(a, early_stop=False, projective=False) == base
    if a.p ** a.dim <= 1 << 10:
        assert lip_space_from_ideals(a) == base


def test_early_stop_processes_fewer_points():
    m3 = matn(scalar_field(2), 3)
    fast, full = lip_space(m3), lip_space(m3, early_stop=False)
    assert fast == full
    assert fast.early_stop and fast.points_processed < full.points_processed == gf.projective_count(2, 9)


def test_cap_exceeded():
    with pytest.raises(EnumerationCapExceeded):
        lip_space(tn(u_dual_numbers(2), 3), cap=1000)


def test_contains_rejects_wrong_shape():
    with pytest.raises(DimensionMismatch):
        lip_space(u_dual_numbers(2)).contains(np.eye(3, dtype=np.int64))


@pytest.mark.parametrize(
    "b,x,expected",
    [
        (scalar_field(2), matrix_module(scalar_field(2), 1, 2), True),
        (u_dual_numbers(2), regular_module(u_dual_numbers(2)), False),
        (matn(scalar_field(2), 2), regular_module(matn(scalar_field(2), 2)), True),
        (u_dual_numbers(3), matrix_module(u_dual_numbers(3), 1, 2), False),
    ],
)
def test_local_equals_multiplier(b, x, expected):
    assert local_equals_multiplier(b, x) is expected
    assert module_multiplier_space(b, x) <= local_left_multiplier_space(b, x)


def test_regular_local_equals_multiplier_is_slip():
    for a in construction_corpus():
        if a.dim <= 7:
            assert regular_local_equals_multiplier(a) == is_slip(a).is_slip


@pytest.mark.parametrize("case", triangular_cases(), ids=lambda c: c.name)
def test_decomposition_of_lip_basis(case):
    for psi in lip_space(case.algebra).maps():
        dec = decompose_lip_triangular(case.algebra, case.e, psi)
        assert dec.all_passed, dec.checks


def test_decompose_rejects_non_lip():
    case = next(c for c in triangular_cases() if c.name == "Tri(U(2),U(2),GF(2))")
    bad = np.zeros((5, 5), dtype=np.int64)
    bad[4, 0] = 1  # sends 1_A into B
    with pytest.raises(NotLIP):
        decompose_lip_triangular(case.algebra, case.e, bad)
    assert issubclass(BlockStructureViolated, Exception)


def test_linear_map_value_semantics():
    a = LinearMap([[1, 2], [3, 4]])
    assert a == LinearMap(np.array([[1, 2], [3, 4]]))
    assert hash(a) == hash(LinearMap([[1, 2], [3, 4]]))
    assert a([1, 1], 5).tolist() == [3, 2]
