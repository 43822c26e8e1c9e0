from __future__ import annotations

import itertools

import numpy as np
import pytest

from sliplab import gf
from sliplab.constructions import matn, scalar_field, tn, u_dual_numbers
from sliplab.corpus import construction_corpus, triangular_case
from sliplab.slip import is_slip
from sliplab.zpd import is_zpd, multiplication_matrix, zero_product_span, zpd_witness

SMALL = [a for a in construction_corpus() if a.dim <= 4]


def brute_zero_product_span(a):
    """Span of a (x) b over all pairs with ab = 0, straight from the definition."""
    d, p = a.dim, a.p
    vecs = [np.array(v) for v in itertools.product(range(p), repeat=d)]
    rows = [np.outer(x, y).reshape(-1) for x in vecs for y in vecs if not a.mul(x, y).any()]
    return gf.Subspace.span(p, d * d, rows)


@pytest.mark.parametrize("a", SMALL, ids=lambda a: a.name)
def test_span_matches_brute_force(a):
    span, _ = zero_product_span(a)
    assert span == brute_zero_product_span(a)


@pytest.mark.parametrize(
    "a,span,kernel,zpd",
    [
        (scalar_field(2), 0, 0, True),
        (u_dual_numbers(2), 1, 2, False),
        (u_dual_numbers(3), 1, 2, False),
        (matn(scalar_field(2), 2), 12, 12, True),
        (matn(scalar_field(3), 2), 12, 12, True),
        (tn(scalar_field(2), 2), 6, 6, True),
        (matn(u_dual_numbers(2), 2), 56, 56, True),
    ],
    ids=["GF2", "U2", "U3", "M2F2", "M2F3", "T2F2", "M2U2"],
)
def test_frozen_zpd_values(a, span, kernel, zpd):
    r = is_zpd(a)
    assert (r.span_dim, r.kernel_dim, r.is_zpd) == (span, kernel, zpd)


def test_tri_u_u_f_is_not_zpd():
    r = is_zpd(triangular_case("Tri(U(2),U(2),GF(2))").algebra)
    assert (r.span_dim, r.kernel_dim, r.is_zpd) == (19, 20, False)


@pytest.mark.parametrize("a", [a for a in construction_corpus() if a.dim <= 7], ids=lambda a: a.name)
def test_span_inside_kernel_and_witness(a):
    span, _ = zero_product_span(a)
    mu = multiplication_matrix(a)
    assert not gf.matmul_mod(mu, span.basis.T, a.p).any()
    w = zpd_witness(a)
    if is_zpd(a).is_zpd:
        assert w is None
    else:
        flat = w.reshape(-1)
        assert not gf.matmul_mod(mu, flat, a.p).any() and not span.contains(flat)


@pytest.mark.parametrize("a", [a for a in construction_corpus() if a.dim <= 9], ids=lambda a: a.name)
def test_zpd_implies_slip_small(a):
    if is_zpd(a).is_zpd:
        assert is_slip(a).is_slip


def test_early_stop_matches_full():
    a = matn(scalar_field(2), 3)
    fast, full = zero_product_span(a), zero_product_span(a, early_stop=False)
    assert fast[0] == full[0] and fast[1] < full[1]
