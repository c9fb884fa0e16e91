"""Recursive-descent parser for expressions and differential forms.

Grammar (whitespace is insignificant)::

    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/" | "/\\") factor)*
    factor   := "-" factor | base ("^" uint)?
    base     := rational | coord | "d" coord | func "(" expr ")" | "(" expr ")"
    coord    := "q" uint ("'"* | "[" uint "]")
    func     := "sin" | "cos" | "exp" | "ln" | "sqrt"
    rational := uint ("/" uint)?

``"d" coord`` is only accepted by :func:`parse_form`.  Between forms ``*`` and
``/\\`` both mean the wedge product; ``/`` and ``^`` need a scalar operand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .expr import FUNCTIONS, Coordinate, Expression, apply_function
from .forms import DifferentialForm

__all__ = ["parse_expression", "parse_form", "parse_components"]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<wedge>/\\)
  | (?P<op>[-+*/^()\[\]'])
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "name":
            # split identifiers like q12 or dq3 into name + number
            word = m.group()
            sub = re.match(r"([A-Za-z_]+)(\d*)", word)
            head, digits = sub.group(1), sub.group(2)
            if digits and not re.fullmatch(r"[A-Za-z_]+\d+", word):
                raise ParseError(f"malformed identifier {word!r}", pos, text)
            if head == "dq":
                toks.append(_Tok("name", "d", pos))
                toks.append(_Tok("name", "q", pos + 1))
            else:
                toks.append(_Tok("name", head, pos))
            if digits:
                toks.append(_Tok("num", digits, pos + len(head)))
        elif kind != "ws":
            toks.append(_Tok(kind if kind != "op" else m.group(), m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, dim: int, allow_forms: bool):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {dim!r}")
        self.text = text
        self.dim = dim
        self.allow_forms = allow_forms
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.pos, self.text)

    def take(self, kind: str) -> _Tok:
        tok = self.tok
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise self.error(f"expected {kind!r}, found {found}")
        self.i += 1
        return tok

    def parse(self) -> DifferentialForm:
        if self.tok.kind == "eof":
            raise self.error("empty input")
        value = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return value

    def expr(self) -> DifferentialForm:
        left = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.take(self.tok.kind)
            right = self.term()
            if right.degree != left.degree and not (left.is_zero() or right.is_zero()):
                raise self.error(f"cannot add forms of degree {left.degree} and {right.degree}", op)
            if left.is_zero() and right.degree != left.degree:
                left = DifferentialForm.zero(right.degree)
            elif right.is_zero() and right.degree != left.degree:
                right = DifferentialForm.zero(left.degree)
            left = left + right if op.kind == "+" else left - right
        return left

    def term(self) -> DifferentialForm:
        left = self.factor()
        while self.tok.kind in ("*", "/", "wedge"):
            op = self.take(self.tok.kind)
            right = self.factor()
            if op.kind == "/":
                if right.degree != 0:
                    raise self.error("cannot divide by a form of positive degree", op)
                divisor = right.scalar()
                if divisor.is_zero():
                    raise self.error("division by zero", op)
                left = left * (1 / divisor)
            else:
                left = left.wedge(right)
        return left

    def factor(self) -> DifferentialForm:
        if self.tok.kind == "-":
            self.take("-")
            return -self.factor()
        base = self.base()
        if self.tok.kind == "^":
            op = self.take("^")
            n = int(self.take("num").text)
            if base.degree != 0:
                raise self.error("cannot raise a form of positive degree to a power", op)
            base = DifferentialForm.from_expression(base.scalar() ** n)
        return base

    def base(self) -> DifferentialForm:
        tok = self.tok
        if tok.kind == "num":
            self.take("num")
            value = Fraction(int(tok.text))
            if self.tok.kind == "/" and self.toks[self.i + 1].kind == "num":
                self.take("/")
                den = self.take("num")
                if int(den.text) == 0:
                    raise self.error("zero denominator in rational literal", den)
                value = value / int(den.text)
            return DifferentialForm.from_expression(Expression.constant(value))
        if tok.kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        if tok.kind == "name":
            if tok.text == "q":
                return DifferentialForm.from_expression(Expression.coordinate(self.coord()))
            if tok.text == "d" and self.toks[self.i + 1].text == "q":
                if not self.allow_forms:
                    raise self.error("differentials are not allowed in a scalar expression")
                self.take("name")
                return DifferentialForm.differential(self.coord())
            if tok.text in FUNCTIONS:
                self.take("name")
                self.take("(")
                arg = self.expr()
                self.take(")")
                if arg.degree != 0:
                    raise self.error(f"argument of {tok.text} must be a scalar", tok)
                return DifferentialForm.from_expression(apply_function(tok.text, arg.scalar()))
            raise self.error(f"unknown name {tok.text!r}")
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise self.error(f"unexpected {found}")

    def coord(self) -> Coordinate:
        qtok = self.take("name")
        if qtok.text != "q":
            raise self.error("expected a coordinate", qtok)
        num = self.tok
        if num.kind != "num" or num.pos != qtok.pos + 1:
            raise self.error("expected a coordinate index after 'q'", num)
        self.take("num")
        index = int(num.text)
        if index < 1 or index > self.dim:
            raise ParseError(f"coordinate index {index} out of range 1..{self.dim}", num.pos, self.text)
        order = 0
        if self.tok.kind == "[":
            self.take("[")
            order = int(self.take("num").text)
            self.take("]")
        else:
            while self.tok.kind == "'":
                self.take("'")
                order += 1
        return Coordinate(index, order)


def parse_expression(text: str, dim: int) -> Expression:
    """Parse a scalar expression over ``dim`` base coordinates."""
    return _Parser(text, dim, allow_forms=False).parse().scalar()


def parse_form(text: str, dim: int) -> DifferentialForm:
    """Parse a differential form such as ``"q1*dq1 /\\ dq2 - dq1 /\\ dq3"``."""
    return _Parser(text, dim, allow_forms=True).parse()


def parse_components(text: str, dim: int) -> list[Expression]:
    """Parse a semicolon-separated list of scalar expressions."""
    pieces = text.split(";")
    out = []
    offset = 0
    for piece in pieces:
        try:
            out.append(parse_expression(piece, dim))
        except ParseError as exc:
            pos = None if exc.position is None else exc.position + offset
            raise ParseError(str(exc).rsplit(" (at position", 1)[0], pos, text) from None
        offset += len(piece) + 1
    return out
