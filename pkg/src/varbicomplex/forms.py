"""Exterior algebra over derivative coordinates.

Forms live on the formal infinite-order tower: they never carry an ambient
order, so a pull-back to a higher-order bundle is plain inclusion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .expr import ZERO, Coordinate, Expression, _coerce

__all__ = [
    "DifferentialForm",
    "CoordinateVectorField",
    "wedge",
    "exterior_d",
    "contract",
    "lie_derivative",
]

Wedge = tuple  # strictly increasing tuple of Coordinates


def _sort_wedge(coords) -> tuple[int, Wedge] | None:
    """Sort differentials, returning (sign, wedge) or None if one repeats."""
    items = list(coords)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j] < items[j - 1]:
            items[j], items[j - 1] = items[j - 1], items[j]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return None
    return sign, tuple(items)


def _accumulate(terms: dict, wedge: Wedge, coeff: Expression):
    if not coeff:
        return
    old = terms.get(wedge)
    new = coeff if old is None else old + coeff
    if new:
        terms[wedge] = new
    else:
        terms.pop(wedge, None)


class DifferentialForm:
    """A degree-``r`` exterior form ``sum a_I dq^{I_1} ^ ... ^ dq^{I_r}``."""

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping | Iterable = ()):
        if degree < 0:
            raise ValueError("form degree must be non-negative")
        self.degree = degree
        self._hash = None
        out: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for wedge, coeff in items:
            wedge = tuple(wedge)
            if len(wedge) != degree:
                raise ValueError(f"wedge {wedge} does not have length {degree}")
            res = _sort_wedge(wedge)
            if res is None:
                continue
            sign, w = res
            coeff = _coerce(coeff)
            _accumulate(out, w, coeff if sign > 0 else -coeff)
        self._terms = out

    @classmethod
    def _raw(cls, degree: int, terms: dict) -> DifferentialForm:
        f = object.__new__(cls)
        f.degree = degree
        f._terms = terms
        f._hash = None
        return f

    @classmethod
    def zero(cls, degree: int = 0) -> DifferentialForm:
        return cls._raw(degree, {})

    @classmethod
    def from_expression(cls, e) -> DifferentialForm:
        e = _coerce(e)
        return cls._raw(0, {(): e} if e else {})

    @classmethod
    def differential(cls, c: Coordinate) -> DifferentialForm:
        return cls._raw(1, {(c,): Expression.constant(1)})

    # ---- structure

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(wedge, coefficient) pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda wc: [(c.order, c.index) for c in wc[0]])

    def coefficient(self, *coords: Coordinate) -> Expression:
        res = _sort_wedge(coords)
        if res is None:
            return ZERO
        sign, w = res
        c = self._terms.get(w, ZERO)
        return c if sign > 0 else -c

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def scalar(self) -> Expression:
        if self.degree != 0:
            raise ValueError(f"form of degree {self.degree} is not a scalar")
        return self._terms.get((), ZERO)

    def free_coordinates(self) -> frozenset:
        out = set()
        for w, c in self._terms.items():
            out.update(w)
            out |= c.free_coordinates()
        return frozenset(out)

    def differentials(self) -> frozenset:
        return frozenset(c for w in self._terms for c in w)

    def order(self) -> int:
        """Largest derivative order among coefficients and differentials."""
        from .expr import ORDER_OF_CONSTANT
        from .errors import UndefinedOrderError

        if not self._terms:
            raise UndefinedOrderError("the order of the zero form is undefined")
        return max((c.order for c in self.free_coordinates()), default=ORDER_OF_CONSTANT)

    def map_coefficients(self, fn: Callable[[Expression], Expression]) -> DifferentialForm:
        out = {}
        for w, c in self._terms.items():
            v = fn(c)
            if v:
                out[w] = v
        return DifferentialForm._raw(self.degree, out)

    # ---- comparison

    def __eq__(self, other):
        if isinstance(other, (Expression, int, Fraction)):
            other = DifferentialForm.from_expression(other)
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._terms.items())))
        return self._hash

    # ---- algebra

    def _check_degree(self, other):
        if self.degree != other.degree and self._terms and other._terms:
            raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")

    def __add__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        self._check_degree(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            _accumulate(out, w, c)
        return DifferentialForm._raw(self.degree, out)

    def __sub__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DifferentialForm._raw(self.degree, {w: -c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, DifferentialForm):
            return self.wedge(other)
        if isinstance(other, (int, Fraction)):
            if not other:
                return DifferentialForm.zero(self.degree)
            return DifferentialForm._raw(self.degree, {w: c * other for w, c in self._terms.items()})
        try:
            e = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.map_coefficients(lambda c: c * e)

    __rmul__ = __mul__

    def wedge(self, other: DifferentialForm) -> DifferentialForm:
        out: dict = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                res = _sort_wedge(w1 + w2)
                if res is None:
                    continue
                sign, w = res
                prod = c1 * c2
                _accumulate(out, w, prod if sign > 0 else -prod)
        return DifferentialForm._raw(self.degree + other.degree, out)

    __xor__ = wedge

    # ---- printing

    def __str__(self):
        if not self._terms:
            return "0"
        if self.degree == 0:
            return str(self.scalar())
        parts = []
        for w, c in self.items():
            diff = " /\\ ".join(f"d{x}" for x in w)
            terms = c.terms()
            negative = False
            if c.denominator == 1 and len(terms) == 1:
                coeff, mono = terms[0]
                negative = coeff < 0
                body = str(-c if negative else c)
                body = diff if body == "1" else f"{body}*{diff}"
            else:
                body = f"({c})*{diff}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"DifferentialForm({self.degree}, {str(self)!r})"


class CoordinateVectorField:
    """A vector field given by a rule ``Coordinate -> Expression``.

    The rule is evaluated lazily, so fields on the infinite-order tower
    (the total derivative, the fundamental fields) are representable.
    """

    def __init__(self, rule: Callable[[Coordinate], Expression] | Mapping | None = None, name: str = "X"):
        if rule is None:
            rule = {}
        if isinstance(rule, Mapping):
            table = {c: _coerce(v) for c, v in rule.items()}
            self._rule = lambda c: table.get(c, ZERO)
        else:
            self._rule = rule
        self.name = name
        self._cache: dict = {}

    def component(self, c: Coordinate) -> Expression:
        v = self._cache.get(c)
        if v is None:
            v = _coerce(self._rule(c))
            self._cache[c] = v
        return v

    def __call__(self, f) -> Expression:
        """Apply the field to a function as a derivation."""
        f = _coerce(f)
        total = ZERO
        for c in sorted(f.free_coordinates()):
            comp = self.component(c)
            if comp:
                total = total + comp * f.diff(c)
        return total

    def __repr__(self):
        return f"CoordinateVectorField({self.name})"


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    return a.wedge(b)


def exterior_d(theta) -> DifferentialForm:
    if isinstance(theta, Expression):
        theta = DifferentialForm.from_expression(theta)
    out: dict = {}
    for w, a in theta._terms.items():
        for c in a.free_coordinates():
            if c in w:
                continue
            da = a.diff(c)
            if not da:
                continue
            sign, nw = _sort_wedge((c,) + w)
            _accumulate(out, nw, da if sign > 0 else -da)
    return DifferentialForm._raw(theta.degree + 1, out)


def contract(X: CoordinateVectorField, theta: DifferentialForm) -> DifferentialForm:
    """Interior product ``i_X theta``."""
    if isinstance(theta, Expression) or theta.degree == 0:
        raise ValueError("cannot contract a vector field with a 0-form")
    out: dict = {}
    for w, a in theta._terms.items():
        for k, c in enumerate(w):
            comp = X.component(c)
            if not comp:
                continue
            v = a * comp
            _accumulate(out, w[:k] + w[k + 1:], v if k % 2 == 0 else -v)
    return DifferentialForm._raw(theta.degree - 1, out)


def lie_derivative(X: CoordinateVectorField, theta) -> DifferentialForm:
    """Lie derivative by Cartan's formula ``i_X d + d i_X``."""
    if isinstance(theta, Expression):
        theta = DifferentialForm.from_expression(theta)
    if theta.degree == 0:
        return DifferentialForm.from_expression(X(theta.scalar()))
    return contract(X, exterior_d(theta)) + exterior_d(contract(X, theta))
