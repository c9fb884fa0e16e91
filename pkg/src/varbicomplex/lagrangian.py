"""Lagrangian-facing computations.

Hilbert and Euler-Lagrange forms, homogenisation and homogeneity checks, the
Helmholtz-Sonin form together with its explicit second-order coefficients,
and the affine decomposition ``eps_i = A_ij q''^j + B_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvariantViolation, NotAffineError
from .expr import ZERO, Coordinate, Expression, _coerce
from .forms import DifferentialForm, exterior_d
from .operators import (
    _iterate,
    delta_field,
    total_derivative,
    variational_delta,
    vertical_S,
)

__all__ = [
    "SourceForm",
    "SecondOrderDecomposition",
    "HomogeneityReport",
    "HelmholtzCoefficients",
    "hilbert_form",
    "euler_lagrange",
    "euler_lagrange_series",
    "homogenize",
    "check_homogeneous",
    "helmholtz_sonin",
    "helmholtz_coefficients",
    "second_order_decompose",
]


def _max_index(*items) -> int:
    idx = 0
    for x in items:
        for c in x.free_coordinates():
            idx = max(idx, c.index)
    return idx


@dataclass(frozen=True)
class SourceForm:
    """The 1-form ``sum_i eps_i dq^i`` with ``eps_i`` = ``components[i-1]``."""

    dim: int
    components: tuple

    def __post_init__(self):
        comps = tuple(_coerce(c) for c in self.components)
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if len(comps) != self.dim:
            raise ValueError(f"expected {self.dim} components, got {len(comps)}")
        if _max_index(*comps) > self.dim:
            raise ValueError("a component mentions a coordinate index beyond the dimension")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_form(cls, theta: DifferentialForm, dim: int | None = None) -> SourceForm:
        if theta.is_zero():
            return cls(dim or 1, (ZERO,) * (dim or 1))
        if theta.degree != 1:
            raise ValueError(f"a source form has degree 1, got {theta.degree}")
        bad = [c for c in theta.differentials() if c.order != 0]
        if bad:
            raise ValueError(f"a source form only involves dq^i, found d{min(bad)}")
        if dim is None:
            dim = _max_index(theta)
        comps = [theta.coefficient(Coordinate(i)) for i in range(1, dim + 1)]
        if _max_index(theta) > dim:
            raise ValueError("form mentions a coordinate index beyond the dimension")
        return cls(dim, tuple(comps))

    def __getitem__(self, i: int) -> Expression:
        """Component ``eps_i`` with 1-based ``i``."""
        return self.components[i - 1]

    def to_form(self) -> DifferentialForm:
        return DifferentialForm(1, {(Coordinate(i + 1),): c for i, c in enumerate(self.components) if c})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def order(self) -> int:
        from .expr import ORDER_OF_CONSTANT

        return max((c.order() for c in self.components if c), default=ORDER_OF_CONSTANT)

    def __str__(self):
        return str(self.to_form())


def hilbert_form(L) -> DifferentialForm:
    """sum_p (-1)^p/(p+1)! d_T^p S^(p+1) dL, summed until the S-chain vanishes."""
    L = _coerce(L)
    dL = exterior_d(L)
    theta = DifferentialForm.zero(1)
    s = vertical_S(dL)
    p = 0
    while s:
        theta = theta + _iterate(total_derivative, s, p) * Fraction((-1) ** p, math.factorial(p + 1))
        s = vertical_S(s)
        p += 1
    return theta


def euler_lagrange_series(L) -> DifferentialForm:
    """The alternating sum sum_p (-1)^p/p! d_T^p S^p dL."""
    L = _coerce(L)
    s = exterior_d(L)
    eps = DifferentialForm.zero(1)
    p = 0
    while s:
        eps = eps + _iterate(total_derivative, s, p) * Fraction((-1) ** p, math.factorial(p))
        s = vertical_S(s)
        p += 1
    return eps


def euler_lagrange(L, dim: int | None = None) -> SourceForm:
    """eps_L = dL - d_T(hilbert_form(L)) as a source form."""
    L = _coerce(L)
    eps = exterior_d(L) - total_derivative(hilbert_form(L))
    stray = [c for c in eps.differentials() if c.order != 0]
    if stray:
        raise InvariantViolation(f"Euler-Lagrange form has a d{min(stray)} component")
    if dim is None:
        dim = max(_max_index(L), 1)
    return SourceForm.from_form(eps, dim)


def homogenize(L, dim: int) -> Expression:
    """q1' * L(q1, q^i, q^i' / q1') with q1 playing the role of time."""
    L = _coerce(L)
    if L and L.order() > 1:
        raise ValueError("homogenisation needs a Lagrangian of order <= 1")
    tdot = Coordinate(1, 1)
    if L.depends_on(tdot):
        raise ValueError("the time velocity q1' must not appear in the Lagrangian")
    if _max_index(L) > dim:
        raise ValueError("Lagrangian mentions a coordinate index beyond the dimension")
    t = Expression.coordinate(tdot)
    scaled = {Coordinate(i, 1): Expression.coordinate(Coordinate(i, 1)) / t for i in range(2, dim + 1)}
    return t * L.subs(scaled)


@dataclass(frozen=True)
class HomogeneityReport:
    homogeneous: bool
    residuals: dict = field(default_factory=dict)  # 1 -> Delta^1 L - L, p -> Delta^p L

    def __bool__(self):
        return self.homogeneous


def check_homogeneous(L, k: int) -> HomogeneityReport:
    L = _coerce(L)
    if k < 1:
        raise ValueError("k must be >= 1")
    if L and L.order() > k:
        raise ValueError(f"Lagrangian has order {L.order()} > {k}")
    residuals = {1: delta_field(1)(L) - L}
    for p in range(2, k + 1):
        residuals[p] = delta_field(p)(L)
    return HomogeneityReport(all(r.is_zero() for r in residuals.values()), residuals)


def helmholtz_sonin(eps: SourceForm) -> DifferentialForm:
    """The 2-form delta(eps); it vanishes exactly when eps is locally variational."""
    return variational_delta(eps.to_form())


@dataclass(frozen=True)
class HelmholtzCoefficients:
    """Coefficients of delta(eps) for a second-order source form.

    Arrays are indexed ``[i][j]`` with 0-based ``i, j`` and multiply
    ``dq^j ^ dq^i`` (``position``), ``dq'^j ^ dq^i`` (``velocity``),
    ``dq''^j ^ dq^i`` (``acceleration``) and ``dq'^j ^ dq'^i``
    (``velocity_velocity``).  The two families over like differentials are
    antisymmetrised and enter the form with a factor 1/2, so every entry is a
    genuine coordinate of the 2-form.
    """

    dim: int
    position: tuple
    velocity: tuple
    acceleration: tuple
    velocity_velocity: tuple

    def families(self) -> dict:
        return {
            "position": self.position,
            "velocity": self.velocity,
            "acceleration": self.acceleration,
            "velocity_velocity": self.velocity_velocity,
        }

    def vanishes(self) -> bool:
        return all(e.is_zero() for fam in self.families().values() for row in fam for e in row)

    def nonzero(self):
        """(family, i, j, coefficient) for each non-vanishing entry, 1-based indices."""
        out = []
        for name, fam in self.families().items():
            for i, row in enumerate(fam):
                for j, e in enumerate(row):
                    if e:
                        out.append((name, i + 1, j + 1, e))
        return out

    def to_form(self) -> DifferentialForm:
        n = self.dim
        half = Fraction(1, 2)
        terms = []
        for i in range(n):
            for j in range(n):
                qi, qj = Coordinate(i + 1, 0), Coordinate(j + 1, 0)
                vi, vj = Coordinate(i + 1, 1), Coordinate(j + 1, 1)
                aj = Coordinate(j + 1, 2)
                terms.append(((qj, qi), self.position[i][j] * half))
                terms.append(((vj, qi), self.velocity[i][j]))
                terms.append(((aj, qi), self.acceleration[i][j]))
                terms.append(((vj, vi), self.velocity_velocity[i][j] * half))
        return DifferentialForm(2, terms)


def helmholtz_coefficients(eps: SourceForm) -> HelmholtzCoefficients:
    if eps.order() > 2:
        raise ValueError("explicit Helmholtz coefficients need a source form of order <= 2")
    n = eps.dim
    dT = total_derivative
    r = range(1, n + 1)
    d0 = [[eps[i].diff(Coordinate(j, 0)) for j in r] for i in r]
    d1 = [[eps[i].diff(Coordinate(j, 1)) for j in r] for i in r]
    d2 = [[eps[i].diff(Coordinate(j, 2)) for j in r] for i in r]
    n_ = range(n)
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    raw_pos = [[d0[i][j] - dT(d1[i][j]) * half + dT(dT(d2[i][j])) * quarter for j in n_] for i in n_]
    position = tuple(tuple(raw_pos[i][j] - raw_pos[j][i] for j in n_) for i in n_)
    velocity = tuple(
        tuple((d1[i][j] + d1[j][i] - dT(d2[i][j]) - dT(d2[j][i])) * half for j in n_) for i in n_
    )
    acceleration = tuple(tuple((d2[i][j] - d2[j][i]) * quarter for j in n_) for i in n_)
    # -1/2 A_ij dq'^j ^ dq'^i, antisymmetrised
    velocity_velocity = tuple(tuple((d2[j][i] - d2[i][j]) * half for j in n_) for i in n_)
    return HelmholtzCoefficients(n, position, velocity, acceleration, velocity_velocity)


@dataclass(frozen=True)
class SecondOrderDecomposition:
    """eps_i = sum_j A[i][j] q''^j + B[i] (0-based arrays)."""

    A: tuple
    B: tuple
    asymmetric: tuple = ()  # 1-based (i, j) pairs with A_ij != A_ji

    @property
    def symmetric(self) -> bool:
        return not self.asymmetric

    def reconstruct(self) -> tuple:
        n = len(self.B)
        return tuple(
            sum((self.A[i][j] * Expression.coordinate(Coordinate(j + 1, 2)) for j in range(n)), ZERO) + self.B[i]
            for i in range(n)
        )


def second_order_decompose(eps: SourceForm) -> SecondOrderDecomposition:
    if eps.order() > 2:
        raise ValueError("decomposition needs a source form of order <= 2")
    n = eps.dim
    acc = [Coordinate(j, 2) for j in range(1, n + 1)]
    A = []
    B = []
    for i in range(n):
        row = [eps.components[i].diff(a) for a in acc]
        for j, entry in enumerate(row):
            for a in acc:
                if entry.depends_on(a) and entry.diff(a):
                    raise NotAffineError(
                        f"eps_{i + 1} is not affine in the second derivatives "
                        f"(d/d{acc[j]} d/d{a} is non-zero)"
                    )
        A.append(tuple(row))
        rest = eps.components[i]
        for j, a in enumerate(acc):
            rest = rest - row[j] * Expression.coordinate(a)
        B.append(rest)
    asym = tuple((i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if A[i][j] != A[j][i])
    return SecondOrderDecomposition(tuple(A), tuple(B), asym)
