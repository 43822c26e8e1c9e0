"""Zero product determined algebras.

For a finite-dimensional unital algebra, ``A`` is zero product determined
exactly when the zero-product tensors ``a (x) b`` with ``ab = 0`` span the
kernel of the multiplication map ``A (x) A -> A``.

Why this suffices: a bilinear map ``phi`` vanishing on zero products is a
linear functional-valued map on ``A (x) A`` that kills every ``a (x) b``
with ``ab = 0``.  If those tensors span ``ker(mu)``, then ``phi`` kills
``ker(mu)`` and factors through ``mu``, i.e. ``phi(a, b) = L(ab)``.
Conversely, taking ``X = (A (x) A) / Z`` with ``Z`` the span and ``phi`` the
quotient map, factorization forces ``ker(mu) <= Z``.  Since ``A`` is unital,
``mu`` is onto and ``dim ker(mu) = d^2 - d``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf
from .algebra import DEFAULT_CAP, Algebra
from .gf import SpanBuilder, Subspace
from .slip import _action_at, _batches


@dataclass(frozen=True)
class ZpdReport:
    span_dim: int
    kernel_dim: int
    is_zpd: bool
    points_processed: int
    name: str = ""


def multiplication_matrix(a: Algebra) -> np.ndarray:
    """``mu[k, i*d + j]`` is the coefficient of ``e_k`` in ``e_i e_j``."""
    d = a.dim
    return np.ascontiguousarray(np.transpose(a.structure, (2, 0, 1)).reshape(d, d * d))


def zero_product_span(a: Algebra, cap: int = DEFAULT_CAP, early_stop: bool = True) -> tuple[Subspace, int]:
    """``span{v (x) k : v projective, v k = 0}`` and the number of points used.

    Taking full kernels of ``L_v`` on the right covers every zero pair, and
    scaling ``v`` only rescales ``v (x) k``.
    """
    d = a.dim
    p = a.p
    n = d * d
    target = n - d
    builder = SpanBuilder(p, n)
    processed = 0
    if target == 0:
        gf.check_cap(p, d, cap)
        return builder.as_subspace(), 0
    stack = a.left_mul_stack()
    for points in _batches(p, d, cap, projective=True):
        kernels, owners = gf.batched_nullspace(_action_at(stack, points, p), p)
        if kernels.shape[0]:
            builder.add_rows((points[owners][:, :, None] * kernels[:, None, :]).reshape(-1, n))
        processed += points.shape[0]
        if early_stop and builder.rank >= target:
            break
    return builder.as_subspace(), processed


def is_zpd(a: Algebra, cap: int = DEFAULT_CAP, early_stop: bool = True) -> ZpdReport:
    span, processed = zero_product_span(a, cap, early_stop)
    kernel_dim = a.dim * a.dim - a.dim
    if span.dim > kernel_dim:
        raise AssertionError("zero-product span exceeds the multiplication kernel")
    return ZpdReport(span.dim, kernel_dim, span.dim == kernel_dim, processed, a.name)


def zpd_witness(a: Algebra, cap: int = DEFAULT_CAP) -> np.ndarray | None:
    """A tensor in ``ker(mu)`` outside the zero-product span, as a ``d x d`` matrix.

    Entry ``[i, j]`` is the coefficient of ``e_i (x) e_j``; ``None`` when ``a`` is zpd.
    """
    d = a.dim
    span, _ = zero_product_span(a, cap, early_stop=True)
    kernel = gf.nullspace(multiplication_matrix(a), a.p)
    for row in kernel.basis:
        if not span.contains(row):
            return row.reshape(d, d)
    return None
