"""Constructive local exactness: homotopy operators and Lagrangian recovery."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    InvariantViolation,
    NonPolynomialCoefficient,
    NotSupportedError,
    NotVariationalError,
    SymmetryViolation,
)
from .expr import ORDER_OF_CONSTANT, ZERO, Coordinate, Expression, FuncAtom, _coerce
from .forms import DifferentialForm, _accumulate, exterior_d
from .lagrangian import (
    SecondOrderDecomposition,
    SourceForm,
    helmholtz_sonin,
    second_order_decompose,
)
from .operators import P_operator, total_derivative, variational_delta

__all__ = [
    "RecoveryReport",
    "poincare_h",
    "fiber_potential",
    "recover_lagrangian",
    "recover_first_order",
    "first_order_relations_hold",
]


def _radial_integral(a: Expression, fiber, shift: int) -> Expression:
    """Integrate t^(shift-1) a(t*x) over [0, 1], scaling only the ``fiber`` coordinates.

    ``fiber=None`` scales every coordinate.  A monomial of fiber degree ``d``
    picks up the factor ``1/(d + shift)``.
    """
    if fiber is None:
        if not a.is_polynomial():
            raise NonPolynomialCoefficient(f"coefficient {a} is not a polynomial in the coordinates")
    else:
        for g in a.generators():
            if type(g) is FuncAtom and g.arg.free_coordinates() & fiber:
                raise NonPolynomialCoefficient(f"{g} is not polynomial in the fiber coordinates")
        if a.denominator.free_coordinates() & fiber:
            raise NonPolynomialCoefficient(f"denominator of {a} depends on the fiber coordinates")
    num = {}
    for coeff, mono in a.terms():
        deg = sum(e for g, e in mono if type(g) is Coordinate and (fiber is None or g in fiber))
        num[mono] = coeff / (deg + shift)
    scaled = Expression._raw(num, None) if num else ZERO
    if a.denominator != 1:
        scaled = scaled / a.denominator
    return scaled


def poincare_h(theta: DifferentialForm) -> DifferentialForm:
    """Radial homotopy operator to the coordinate origin.

    For ``a dx^{i_1} ^ ... ^ dx^{i_r}`` the result is
    ``sum_k (-1)^(k-1) x^{i_k} (int_0^1 t^(r-1) a(tx) dt) dx^I`` with the
    k-th factor omitted, so that ``h d + d h = id`` on forms of degree >= 1.
    """
    r = theta.degree
    if r < 1:
        raise ValueError("the homotopy operator acts on forms of degree >= 1")
    out: dict = {}
    for w, a in theta._terms.items():
        integral = _radial_integral(a, None, r)
        for k, c in enumerate(w):
            v = integral * Expression.coordinate(c)
            _accumulate(out, w[:k] + w[k + 1:], v if k % 2 == 0 else -v)
    return DifferentialForm._raw(r - 1, out)


def fiber_potential(components, fiber: Sequence[Coordinate] | None = None) -> Expression:
    """A function ``H`` with ``dH/dc^i = h_i`` for the fiber coordinates ``c``.

    ``components`` is a mapping ``c -> h_c`` or a sequence aligned with
    ``fiber``.  Only the fiber coordinates are scaled, so ``H`` vanishes when
    they do.
    """
    if isinstance(components, Mapping):
        pairs = [(c, _coerce(h)) for c, h in components.items()]
    else:
        if fiber is None or len(fiber) != len(components):
            raise ValueError("components must align with the fiber coordinates")
        pairs = [(c, _coerce(h)) for c, h in zip(fiber, components)]
    coords = frozenset(c for c, _ in pairs)
    for a, (ca, ha) in enumerate(pairs):
        for cb, hb in pairs[a + 1:]:
            if ha.diff(cb) != hb.diff(ca):
                raise SymmetryViolation(f"d h_{ca}/d {cb} != d h_{cb}/d {ca}")
    total = ZERO
    for c, h in pairs:
        if h:
            total = total + _radial_integral(h, coords, 1) * Expression.coordinate(c)
    return total


@dataclass(frozen=True)
class RecoveryReport:
    lagrangian: Expression
    kappa: DifferentialForm
    order_of_lagrangian: int
    verification: bool
    stages: tuple = field(default=(), repr=False)


def _require_variational(eps: SourceForm):
    hs = helmholtz_sonin(eps)
    if hs:
        raise NotVariationalError(f"source form is not variational: Helmholtz-Sonin form {hs}", hs)


def _check_kappa(kappa: DifferentialForm, target: DifferentialForm, stage: str):
    if exterior_d(kappa) != target:
        raise InvariantViolation(f"d(kappa) != P(d eps) after {stage}")


def _integrate(eps: SourceForm, kappa: DifferentialForm) -> Expression:
    closed = eps.to_form() - total_derivative(kappa)
    if exterior_d(closed):
        raise InvariantViolation("eps - d_T kappa is not closed")
    if not closed:
        return ZERO
    return poincare_h(closed).scalar()


def _order(L: Expression) -> int:
    return L.order() if L else ORDER_OF_CONSTANT


def recover_lagrangian(eps: SourceForm) -> RecoveryReport:
    """L = h(eps - d_T h P d eps), re-verified by delta(L) = eps."""
    _require_variational(eps)
    theta = eps.to_form()
    target = P_operator(exterior_d(theta))
    kappa = poincare_h(target) if target else DifferentialForm.zero(1)
    _check_kappa(kappa, target, "homotopy")
    L = _integrate(eps, kappa)
    if variational_delta(L) != theta:
        raise InvariantViolation(f"recovered Lagrangian {L} does not reproduce the source form")
    return RecoveryReport(L, kappa, _order(L), True, (kappa,))


def first_order_relations_hold(L: Expression, dec: SecondOrderDecomposition) -> bool:
    """A_ij = -d2L/dq'^i dq'^j and B_i = dL/dq^i - q'^j d2L/dq^j dq'^i."""
    n = len(dec.B)
    for i in range(1, n + 1):
        vi = Coordinate(i, 1)
        Lvi = L.diff(vi)
        for j in range(1, n + 1):
            if dec.A[i - 1][j - 1] != -Lvi.diff(Coordinate(j, 1)):
                return False
        b = L.diff(Coordinate(i, 0))
        for j in range(1, n + 1):
            b = b - Expression.coordinate(Coordinate(j, 1)) * Lvi.diff(Coordinate(j, 0))
        if dec.B[i - 1] != b:
            return False
    return True


def recover_first_order(eps: SourceForm) -> RecoveryReport:
    """Recover a first-order Lagrangian for a variational second-order source form.

    Starting from kappa = h(P d eps), the components of kappa along the
    highest-order differentials are fiber gradients; subtracting the
    differential of their potential lowers kappa until only dq^i remain.
    """
    if eps.order() > 2:
        raise NotSupportedError("first-order recovery is only available for source forms of order <= 2")
    _require_variational(eps)
    dec = second_order_decompose(eps)
    n = eps.dim
    theta = eps.to_form()
    target = P_operator(exterior_d(theta))
    kappa = poincare_h(target) if target else DifferentialForm.zero(1)
    _check_kappa(kappa, target, "homotopy")
    stages = [kappa]
    top = max((c.order for c in kappa.differentials()), default=0)
    for p in range(top, 0, -1):
        fiber = [Coordinate(i, p) for i in range(1, n + 1)]
        comps = [kappa.coefficient(c) for c in fiber]
        if not any(comps):
            stages.append(kappa)
            continue
        try:
            potential = fiber_potential(comps, fiber)
        except SymmetryViolation as exc:
            raise InvariantViolation(f"order-{p} components of kappa are not a fiber gradient: {exc}") from exc
        kappa = kappa - exterior_d(potential)
        _check_kappa(kappa, target, f"removing order-{p} differentials")
        if any(c.order >= p for c in kappa.differentials()):
            raise InvariantViolation(f"order-{p} differentials survived the gauge step")
        stages.append(kappa)
    if kappa and kappa.order() > 1:
        raise InvariantViolation(f"reduced kappa {kappa} is not first order")
    L = _integrate(eps, kappa)
    if _order(L) > 1:
        raise InvariantViolation(f"recovered Lagrangian {L} is not first order")
    if variational_delta(L) != theta:
        raise InvariantViolation(f"recovered Lagrangian {L} does not reproduce the source form")
    if not first_order_relations_hold(L, dec):
        raise InvariantViolation("A/B relations fail for the recovered Lagrangian")
    return RecoveryReport(L, kappa, _order(L), True, tuple(stages))
