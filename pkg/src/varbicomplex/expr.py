"""Exact scalar expressions over derivative coordinates.

An :class:`Expression` is a quotient ``num / den`` of sparse polynomials with
:class:`~fractions.Fraction` coefficients.  The polynomial generators are
derivative coordinates ``q^i_(p)``, transcendental atoms ``f(arg)`` with
``f`` in ``{sin, cos, exp, ln, sqrt}`` and the reserved homotopy symbol ``t``.

Canonical form:

* ``den`` is ``None`` (meaning 1) or a non-constant polynomial whose leading
  term (largest monomial key) has coefficient 1;
* ``gcd(num, den) = 1`` with every generator treated as free;
* ``sqrt`` atoms occur with exponent at most 1 and never in ``den``
  (``sqrt(u)^2`` is rewritten to ``u``, denominators are rationalised).

Under these rules structural equality is mathematical equality for rational
functions of coordinates and square roots.  Other transcendental atoms are
compared structurally only, so ``sin(q1)^2 + cos(q1)^2 - 1`` is not zero.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping, Union

from sympy import QQ, symbols
from sympy.polys.rings import PolyRing

from .errors import UndefinedOrderError, ZeroDenominatorError

__all__ = [
    "Coordinate",
    "Expression",
    "FuncAtom",
    "AuxSymbol",
    "ORDER_OF_CONSTANT",
    "FUNCTIONS",
    "q",
    "const",
    "sin",
    "cos",
    "exp",
    "ln",
    "sqrt",
    "homotopy_parameter",
    "differentiate",
    "substitute",
    "is_zero",
    "order_of",
]

ORDER_OF_CONSTANT = -1
FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt")


@total_ordering
class Coordinate:
    """The derivative coordinate ``q^index_(order)``.

    Coordinates are ordered by ``(order, index)``.
    """

    __slots__ = ("index", "order", "key", "_hash")

    def __init__(self, index: int, order: int = 0):
        if not isinstance(index, int) or index < 1:
            raise ValueError(f"coordinate index must be a positive integer, got {index!r}")
        if not isinstance(order, int) or order < 0:
            raise ValueError(f"derivative order must be a non-negative integer, got {order!r}")
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "key", (0, order, index))
        object.__setattr__(self, "_hash", hash(("q", index, order)))

    def __setattr__(self, name, value):
        raise AttributeError("Coordinate is immutable")

    def __eq__(self, other):
        if not isinstance(other, Coordinate):
            return NotImplemented
        return self.index == other.index and self.order == other.order

    def __lt__(self, other):
        if not isinstance(other, Coordinate):
            return NotImplemented
        return (self.order, self.index) < (other.order, other.index)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (Coordinate, (self.index, self.order))

    def raised(self, n: int = 1) -> Coordinate:
        return Coordinate(self.index, self.order + n)

    def lowered(self, n: int = 1) -> Coordinate:
        return Coordinate(self.index, self.order - n)

    def __str__(self):
        if self.order <= 3:
            return f"q{self.index}" + "'" * self.order
        return f"q{self.index}[{self.order}]"

    def __repr__(self):
        return f"Coordinate({self.index}, {self.order})"


class AuxSymbol:
    """Internal scalar that is not a coordinate (the homotopy parameter)."""

    __slots__ = ("name", "key")

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "key", (2, name))

    def __setattr__(self, name, value):
        raise AttributeError("AuxSymbol is immutable")

    def __eq__(self, other):
        return isinstance(other, AuxSymbol) and other.name == self.name

    def __hash__(self):
        return hash(("aux", self.name))

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"AuxSymbol({self.name!r})"


class FuncAtom:
    """An opaque generator ``name(arg)``."""

    __slots__ = ("name", "arg", "_key", "_hash")

    def __init__(self, name: str, arg: Expression):
        if name not in FUNCTIONS:
            raise ValueError(f"unknown function {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "arg", arg)
        object.__setattr__(self, "_key", None)
        object.__setattr__(self, "_hash", hash((name, arg)))

    def __setattr__(self, name, value):
        raise AttributeError("FuncAtom is immutable")

    @property
    def key(self):
        if self._key is None:
            object.__setattr__(self, "_key", (1, self.name, self.arg.key))
        return self._key

    def __eq__(self, other):
        return isinstance(other, FuncAtom) and self.name == other.name and self.arg == other.arg

    def __hash__(self):
        return self._hash

    def __str__(self):
        return f"{self.name}({self.arg})"

    def __repr__(self):
        return f"FuncAtom({self.name!r}, {self.arg!r})"


Generator = Union[Coordinate, FuncAtom, AuxSymbol]
Monomial = tuple  # tuple[tuple[Generator, int], ...] sorted by generator key
Poly = dict  # dict[Monomial, Fraction], no zero coefficients

_ONE_MONO: Monomial = ()


# --------------------------------------------------------------------------
# sparse polynomial helpers


def _gkey(pair):
    return pair[0].key


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for g, e in m2:
        d[g] = d.get(g, 0) + e
    return tuple(sorted(d.items(), key=_gkey))


def _mono_key(m: Monomial):
    return tuple((g.key, e) for g, e in m)


def _poly_add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + (c if sign > 0 else -c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _poly_mul(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out: Poly = {}
    for m2, c2 in b.items():
        for m1, c1 in a.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _poly_scale(a: Poly, c) -> Poly:
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _poly_pow(a: Poly, n: int) -> Poly:
    result: Poly = {_ONE_MONO: Fraction(1)}
    base = a
    while n:
        if n & 1:
            result = _poly_mul(result, base)
        n >>= 1
        if n:
            base = _poly_mul(base, base)
    return result


def _poly_const(p: Poly):
    """Return the constant value of ``p`` or None when it is not constant."""
    if not p:
        return Fraction(0)
    if len(p) == 1 and _ONE_MONO in p:
        return p[_ONE_MONO]
    return None


def _poly_gens(p: Poly) -> set:
    return {g for m in p for g, _ in m}


def _poly_partial(p: Poly, g) -> Poly:
    """Partial derivative with respect to generator ``g``, all generators independent."""
    out: Poly = {}
    for m, c in p.items():
        for k, (h, e) in enumerate(m):
            if h == g:
                if e == 1:
                    nm = m[:k] + m[k + 1:]
                else:
                    nm = m[:k] + ((h, e - 1),) + m[k + 1:]
                v = out.get(nm, 0) + c * e
                if v:
                    out[nm] = v
                else:
                    out.pop(nm, None)
                break
    return out


def _poly_split(p: Poly, g):
    """Split ``p`` by the exponent of ``g``: returns {exponent: poly without g}."""
    parts: dict = {}
    for m, c in p.items():
        e = 0
        rest = m
        for k, (h, eh) in enumerate(m):
            if h == g:
                e = eh
                rest = m[:k] + m[k + 1:]
                break
        parts.setdefault(e, {})[rest] = c
    return parts


def _poly_key(p: Poly):
    return tuple(sorted((_mono_key(m), c) for m, c in p.items()))


def _leading(p: Poly):
    return max(p.items(), key=lambda mc: _mono_key(mc[0]))


# --------------------------------------------------------------------------
# canonicalisation

_RINGS: dict = {}


def _ring(n: int) -> PolyRing:
    R = _RINGS.get(n)
    if R is None:
        R = PolyRing(symbols(f"x0:{n}"), QQ, "lex")
        _RINGS[n] = R
    return R


def _to_sympy(p: Poly, R, index):
    n = len(index)
    d = {}
    for m, c in p.items():
        exps = [0] * n
        for g, e in m:
            exps[index[g]] = e
        d[tuple(exps)] = QQ(c.numerator, c.denominator)
    return R.from_dict(d)


def _from_sympy(sp, gens) -> Poly:
    out: Poly = {}
    for exps, c in sp.items():
        m = tuple((gens[i], e) for i, e in enumerate(exps) if e)
        out[m] = Fraction(int(c.numerator), int(c.denominator))
    return out


def _cancel(num: Poly, den: Poly):
    """Reduce num/den to lowest terms with a monic, non-constant (or absent) den."""
    c = _poly_const(den)
    if c is not None:
        return _poly_scale(num, 1 / Fraction(c)), None
    if len(den) == 1:
        (md, cd), = den.items()
        common = dict(md)
        for m in num:
            present = dict(m)
            for g in list(common):
                e = min(common[g], present.get(g, 0))
                if e:
                    common[g] = e
                else:
                    del common[g]
            if not common:
                break
        if common:
            num = {_mono_div(m, common): v for m, v in num.items()}
            md = _mono_div(md, common)
        num = _poly_scale(num, 1 / Fraction(cd))
        if not md:
            return num, None
        return num, {md: Fraction(1)}
    gens = sorted(_poly_gens(num) | _poly_gens(den), key=lambda g: g.key)
    index = {g: i for i, g in enumerate(gens)}
    R = _ring(len(gens))
    pn, pd = _to_sympy(num, R, index).cancel(_to_sympy(den, R, index))
    num, den = _from_sympy(pn, gens), _from_sympy(pd, gens)
    c = _poly_const(den)
    if c is not None:
        return _poly_scale(num, 1 / Fraction(c)), None
    lc = _leading(den)[1]
    if lc != 1:
        inv = 1 / Fraction(lc)
        num = _poly_scale(num, inv)
        den = _poly_scale(den, inv)
    return num, den


def _mono_div(m: Monomial, common: dict) -> Monomial:
    out = []
    for g, e in m:
        e -= common.get(g, 0)
        if e:
            out.append((g, e))
    return tuple(out)


def _is_sqrt(g) -> bool:
    return type(g) is FuncAtom and g.name == "sqrt"


def _sqrt_powers(p: Poly):
    """First sqrt atom occurring with exponent >= 2 in p, else None."""
    found = None
    for m in p:
        for g, e in m:
            if e >= 2 and _is_sqrt(g):
                if found is None or g.key < found.key:
                    found = g
    return found


def _reduce_sqrt(num: Poly, den: Poly | None, s: FuncAtom):
    """Rewrite s^e as s^(e mod 2) * u^(e div 2) in num and den, u = s.arg."""
    u = s.arg
    un = u._num
    ud = u._den
    parts_n = _poly_split(num, s)
    parts_d = _poly_split(den, s) if den is not None else {0: {_ONE_MONO: Fraction(1)}}
    K = max(e // 2 for e in list(parts_n) + list(parts_d))
    un_pows = [{_ONE_MONO: Fraction(1)}]
    ud_pows = [{_ONE_MONO: Fraction(1)}]
    for _ in range(K):
        un_pows.append(_poly_mul(un_pows[-1], un))
        ud_pows.append(_poly_mul(ud_pows[-1], ud) if ud is not None else ud_pows[-1])

    def rebuild(parts):
        out: Poly = {}
        for e, rest in parts.items():
            k, r = divmod(e, 2)
            factor = _poly_mul(un_pows[k], ud_pows[K - k])
            if r:
                factor = _poly_mul(factor, {((s, 1),): Fraction(1)})
            out = _poly_add(out, _poly_mul(rest, factor))
        return out

    return rebuild(parts_n), rebuild(parts_d)


def _first_sqrt_gen(p: Poly):
    found = None
    for g in _poly_gens(p):
        if _is_sqrt(g) and (found is None or g.key < found.key):
            found = g
    return found


def _normalize(num: Poly, den: Poly | None) -> Expression:
    if not num:
        return ZERO
    if den is not None and not den:
        raise ZeroDenominatorError("division by an identically zero expression")
    for _ in range(1000):
        s = _sqrt_powers(num)
        if s is None and den is not None:
            s = _sqrt_powers(den)
        if s is not None:
            num, den = _reduce_sqrt(num, den, s)
            if not den:
                raise ZeroDenominatorError("division by an identically zero expression")
            continue
        if den is None:
            break
        s = _first_sqrt_gen(den)
        if s is None:
            break
        parts = _poly_split(den, s)
        a = parts.get(0, {})
        b = parts.get(1, {})
        conj = _poly_add(a, _poly_mul(b, {((s, 1),): Fraction(1)}), -1)
        num = _poly_mul(num, conj)
        den = _poly_mul(den, conj)
        if not den:
            raise ZeroDenominatorError("division by an identically zero expression")
    else:  # pragma: no cover - nested radicals that never settle
        raise ZeroDenominatorError("radical normalisation did not terminate")
    if not num:
        return ZERO
    if den is not None:
        num, den = _cancel(num, den)
    return Expression._raw(num, den)


# --------------------------------------------------------------------------


def _coerce(x) -> Expression:
    if isinstance(x, Expression):
        return x
    if isinstance(x, (int, Fraction)):
        return Expression.constant(x)
    if isinstance(x, Coordinate):
        return Expression.coordinate(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Expression")


class Expression:
    """Immutable exact scalar expression in canonical form."""

    __slots__ = ("_num", "_den", "_key", "_hash", "_free")

    def __init__(self, value=0):
        e = _coerce(value) if not isinstance(value, int) else None
        if e is None:
            num = {_ONE_MONO: Fraction(value)} if value else {}
            den = None
        else:
            num, den = e._num, e._den
        self._num = num
        self._den = den
        self._key = None
        self._hash = None
        self._free = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly | None) -> Expression:
        e = object.__new__(cls)
        e._num = num
        e._den = den
        e._key = None
        e._hash = None
        e._free = None
        return e

    @classmethod
    def constant(cls, value) -> Expression:
        value = Fraction(value)
        if not value:
            return ZERO
        return cls._raw({_ONE_MONO: value}, None)

    @classmethod
    def coordinate(cls, c: Coordinate) -> Expression:
        return cls._raw({((c, 1),): Fraction(1)}, None)

    @classmethod
    def generator(cls, g) -> Expression:
        return _normalize({((g, 1),): Fraction(1)}, None)

    # ---- structure

    @property
    def numerator(self) -> Expression:
        return Expression._raw(self._num, None) if self._num else ZERO

    @property
    def denominator(self) -> Expression:
        return ONE if self._den is None else Expression._raw(self._den, None)

    def is_zero(self) -> bool:
        return not self._num

    def is_constant(self) -> bool:
        return self._den is None and _poly_const(self._num) is not None

    def constant_value(self) -> Fraction | None:
        if self._den is not None:
            return None
        return _poly_const(self._num)

    def is_polynomial(self) -> bool:
        """True when there is no denominator and no transcendental or auxiliary atom."""
        if self._den is not None:
            return False
        return all(type(g) is Coordinate for g in _poly_gens(self._num))

    def generators(self) -> set:
        gens = _poly_gens(self._num)
        if self._den is not None:
            gens |= _poly_gens(self._den)
        return gens

    def free_coordinates(self) -> frozenset:
        if self._free is None:
            out = set()
            for g in self.generators():
                if type(g) is Coordinate:
                    out.add(g)
                elif type(g) is FuncAtom:
                    out |= g.arg.free_coordinates()
            self._free = frozenset(out)
        return self._free

    def depends_on(self, c) -> bool:
        if type(c) is Coordinate:
            return c in self.free_coordinates()
        return c in self.generators()

    def order(self) -> int:
        if not self._num:
            raise UndefinedOrderError("the order of the zero expression is undefined")
        coords = self.free_coordinates()
        return max((c.order for c in coords), default=ORDER_OF_CONSTANT)

    def terms(self):
        """Numerator terms as (coefficient, monomial) pairs in canonical order."""
        return [(c, m) for m, c in sorted(self._num.items(), key=lambda mc: _mono_key(mc[0]))]

    @property
    def key(self):
        if self._key is None:
            self._key = (_poly_key(self._num), () if self._den is None else _poly_key(self._den))
        return self._key

    # ---- comparison

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Expression.constant(other)
        if not isinstance(other, Expression):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self._num.items()),
                               None if self._den is None else frozenset(self._den.items())))
        return self._hash

    def __bool__(self):
        return bool(self._num)

    # ---- arithmetic

    def __neg__(self):
        if not self._num:
            return self
        return Expression._raw({m: -c for m, c in self._num.items()}, self._den)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _add(self, other, -1)

    def __rsub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _add(other, self, -1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other or not self._num:
                return ZERO
            return Expression._raw(_poly_scale(self._num, other), self._den)
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDenominatorError("division by zero")
            return self * (1 / Fraction(other))
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _mul(self, other.inverse())

    def __rtruediv__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _mul(other, self.inverse())

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> Expression:
        if not self._num:
            raise ZeroDenominatorError("division by an identically zero expression")
        den = self._den if self._den is not None else {_ONE_MONO: Fraction(1)}
        return _normalize(dict(den), self._num)

    # ---- calculus

    def diff(self, c) -> Expression:
        """Partial derivative with respect to a coordinate (or auxiliary symbol)."""
        if not self._num or not self.depends_on(c):
            return ZERO
        if self._den is None:
            return _poly_diff(self._num, c)
        n = Expression._raw(self._num, None)
        d = Expression._raw(self._den, None)
        return (_poly_diff(self._num, c) * d - n * _poly_diff(self._den, c)) / (d * d)

    def subs(self, bindings: Mapping) -> Expression:
        """Simultaneous substitution of coordinates (or auxiliary symbols)."""
        if not self._num:
            return self
        relevant = {}
        for g, v in bindings.items():
            if self.depends_on(g):
                relevant[g] = _coerce(v)
        if not relevant:
            return self
        values: dict = {}

        def value(g):
            v = values.get(g)
            if v is None:
                if g in relevant:
                    v = relevant[g]
                elif type(g) is FuncAtom:
                    v = apply_function(g.name, g.arg.subs(relevant))
                else:
                    v = Expression.generator(g)
                values[g] = v
            return v

        def evaluate(p: Poly) -> Expression:
            total = ZERO
            for m, c in p.items():
                term = Expression.constant(c)
                for g, e in m:
                    term = term * value(g) ** e
                total = total + term
            return total

        num = evaluate(self._num)
        if self._den is None:
            return num
        den = evaluate(self._den)
        if not den:
            raise ZeroDenominatorError("substitution makes the denominator vanish identically")
        return num / den

    # ---- printing

    def __str__(self):
        num = _poly_str(self._num)
        if self._den is None:
            return num
        if len(self._num) > 1:
            num = f"({num})"
        den = self._den
        if len(den) == 1:
            (m, c), = den.items()
            if c == 1 and len(m) == 1:
                return f"{num}/{_mono_str(m)}"
        return f"{num}/({_poly_str(den)})"

    def __repr__(self):
        return f"Expression({str(self)!r})"


def _add(a: Expression, b: Expression, sign: int) -> Expression:
    if not b._num:
        return a
    if not a._num:
        return b if sign > 0 else -b
    if a._den is None and b._den is None:
        num = _poly_add(a._num, b._num, sign)
        return Expression._raw(num, None) if num else ZERO
    if a._den == b._den:
        return _normalize(_poly_add(a._num, b._num, sign), a._den)
    ad = a._den if a._den is not None else {_ONE_MONO: Fraction(1)}
    bd = b._den if b._den is not None else {_ONE_MONO: Fraction(1)}
    num = _poly_add(_poly_mul(a._num, bd), _poly_mul(b._num, ad), sign)
    return _normalize(num, _poly_mul(ad, bd))


def _mul(a: Expression, b: Expression) -> Expression:
    if not a._num or not b._num:
        return ZERO
    num = _poly_mul(a._num, b._num)
    if a._den is None and b._den is None:
        if _sqrt_powers(num) is None:
            return Expression._raw(num, None)
        return _normalize(num, None)
    if a._den is None:
        den = b._den
    elif b._den is None:
        den = a._den
    else:
        den = _poly_mul(a._den, b._den)
    return _normalize(num, den)


def _poly_diff(p: Poly, c) -> Expression:
    total = ZERO
    fast: Poly = {}
    for g in _poly_gens(p):
        if g == c:
            fast = _poly_partial(p, g)
        elif type(g) is FuncAtom and g.arg.depends_on(c):
            inner = g.arg.diff(c)
            if inner:
                outer = _function_derivative(g)
                part = _normalize(_poly_partial(p, g), None)
                total = total + part * outer * inner
    if fast:
        total = total + _normalize(fast, None)
    return total


def _function_derivative(g: FuncAtom) -> Expression:
    x = g.arg
    if g.name == "sin":
        return cos(x)
    if g.name == "cos":
        return -sin(x)
    if g.name == "exp":
        return Expression.generator(g)
    if g.name == "ln":
        return x.inverse()
    if g.name == "sqrt":
        return (2 * Expression.generator(g)).inverse()
    raise ValueError(g.name)  # pragma: no cover


# --------------------------------------------------------------------------
# printing


def _frac_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _mono_str(m: Monomial) -> str:
    parts = []
    for g, e in m:
        s = str(g)
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


def _term_body(c: Fraction, m: Monomial) -> str:
    c = abs(c)
    if not m:
        return _frac_str(c)
    if c == 1:
        return _mono_str(m)
    return f"{_frac_str(c)}*{_mono_str(m)}"


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    out = []
    for m, c in sorted(p.items(), key=lambda mc: _mono_key(mc[0])):
        body = _term_body(c, m)
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


# --------------------------------------------------------------------------
# public constructors and functional API

ZERO = Expression._raw({}, None)
ONE = Expression._raw({_ONE_MONO: Fraction(1)}, None)
_T = AuxSymbol("t")


def q(index: int, order: int = 0) -> Expression:
    """Expression for the coordinate ``q^index_(order)``."""
    return Expression.coordinate(Coordinate(index, order))


def const(value) -> Expression:
    return Expression.constant(value)


def homotopy_parameter() -> Expression:
    """The reserved auxiliary scalar ``t``; it can never be produced by the parser."""
    return Expression.generator(_T)


def _exact_sqrt(c: Fraction):
    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def apply_function(name: str, arg) -> Expression:
    arg = _coerce(arg)
    if name not in FUNCTIONS:
        raise ValueError(f"unknown function {name!r}")
    c = arg.constant_value()
    if c is not None:
        if c == 0 and name in ("sin", "sqrt"):
            return ZERO
        if c == 0 and name in ("cos", "exp"):
            return ONE
        if c == 1 and name == "ln":
            return ZERO
        if name == "sqrt":
            r = _exact_sqrt(c)
            if r is not None:
                return Expression.constant(r)
    return Expression.generator(FuncAtom(name, arg))


def sin(x) -> Expression:
    return apply_function("sin", x)


def cos(x) -> Expression:
    return apply_function("cos", x)


def exp(x) -> Expression:
    return apply_function("exp", x)


def ln(x) -> Expression:
    return apply_function("ln", x)


def sqrt(x) -> Expression:
    return apply_function("sqrt", x)


def differentiate(e: Expression, c: Coordinate) -> Expression:
    return e.diff(c)


def substitute(e: Expression, bindings: Mapping) -> Expression:
    return e.subs(bindings)


def is_zero(e: Expression) -> bool:
    return e.is_zero()


def order_of(e: Expression) -> int:
    """Largest derivative order present; ``ORDER_OF_CONSTANT`` for non-zero constants."""
    return e.order()


def coordinates_up_to(dim: int, order: int) -> Iterable[Coordinate]:
    for p in range(order + 1):
        for i in range(1, dim + 1):
            yield Coordinate(i, p)
