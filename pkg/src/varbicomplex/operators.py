"""Operator calculus of the homogeneous variational bicomplex.

``total_derivative`` (d_T), the vertical endomorphism ``vertical_S`` acting on
forms as a degree-0 derivation with ``S dq^i_(p) = p dq^i_(p-1)``, the
fundamental fields ``delta_field(p)``, the inverse ``P_operator`` of d_T, the
projector ``canonical_representative`` and the variational derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .expr import ZERO, Coordinate, Expression
from .forms import (
    CoordinateVectorField,
    DifferentialForm,
    _accumulate,
    _sort_wedge,
    exterior_d,
)

__all__ = [
    "total_derivative",
    "total_derivative_field",
    "vertical_S",
    "delta_field",
    "P_operator",
    "canonical_representative",
    "variational_delta",
    "psi_membership",
    "PsiMembership",
]


def _total_derivative_expr(f: Expression) -> Expression:
    total = ZERO
    for c in sorted(f.free_coordinates()):
        df = f.diff(c)
        if df:
            total = total + Expression.coordinate(c.raised()) * df
    return total


def total_derivative(x):
    """d_T on functions and, commuting with d, on forms."""
    if isinstance(x, Expression):
        return _total_derivative_expr(x)
    out: dict = {}
    for w, a in x._terms.items():
        _accumulate(out, w, _total_derivative_expr(a))
        for k, c in enumerate(w):
            res = _sort_wedge(w[:k] + (c.raised(),) + w[k + 1:])
            if res is None:
                continue
            sign, nw = res
            _accumulate(out, nw, a if sign > 0 else -a)
    return DifferentialForm._raw(x.degree, out)


def total_derivative_field() -> CoordinateVectorField:
    """d_T as a formal vector field on the infinite-order tower."""
    return CoordinateVectorField(lambda c: Expression.coordinate(c.raised()), name="d_T")


def vertical_S(theta) -> DifferentialForm:
    if isinstance(theta, Expression) or theta.degree == 0:
        return DifferentialForm.zero(0)
    out: dict = {}
    for w, a in theta._terms.items():
        for k, c in enumerate(w):
            if c.order == 0:
                continue
            res = _sort_wedge(w[:k] + (c.lowered(),) + w[k + 1:])
            if res is None:
                continue
            sign, nw = res
            _accumulate(out, nw, a * (c.order * sign))
    return DifferentialForm._raw(theta.degree, out)


def delta_field(p: int) -> CoordinateVectorField:
    """The fundamental field S^p(d_T).

    Its component on d/dq^i_(r) is r(r-1)...(r-p+1) q^i_(r-p+1) for r >= p.
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError(f"fundamental field index must be >= 1, got {p!r}")

    def rule(c: Coordinate) -> Expression:
        if c.order < p:
            return ZERO
        return Expression.coordinate(Coordinate(c.index, c.order - p + 1)) * math.perm(c.order, p)

    return CoordinateVectorField(rule, name=f"Delta^{p}")


def _iterate(op, x, n: int):
    for _ in range(n):
        x = op(x)
    return x


def P_operator(theta: DifferentialForm) -> DifferentialForm:
    r = theta.degree
    if r < 1:
        raise ValueError("P is defined on forms of degree >= 1")
    result = DifferentialForm.zero(r)
    s = vertical_S(theta)
    p = 0
    while s:
        weight = Fraction((-1) ** p, r ** (p + 1) * math.factorial(p + 1))
        result = result + _iterate(total_derivative, s, p) * weight
        s = vertical_S(s)
        p += 1
    return result


def canonical_representative(theta: DifferentialForm) -> DifferentialForm:
    """theta - d_T P theta, the representative of theta modulo d_T-exact forms."""
    if theta.degree < 1:
        raise ValueError("canonical representatives are defined for degree >= 1")
    return theta - total_derivative(P_operator(theta))


def variational_delta(x) -> DifferentialForm:
    """delta x = dx - d_T P dx; an Expression stands for its class modulo constants."""
    dx = exterior_d(x)
    return dx - total_derivative(P_operator(dx))


@dataclass(frozen=True)
class PsiMembership:
    form: DifferentialForm
    s_image: DifferentialForm
    in_psi: bool


def psi_membership(theta: DifferentialForm) -> PsiMembership:
    if theta.degree < 1:
        raise ValueError("membership is defined for forms of degree >= 1")
    image = vertical_S(theta)
    return PsiMembership(theta, image, image.is_zero())
