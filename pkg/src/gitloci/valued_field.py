"""A desk-scale non-archimedean valued field.

Elements are ratios of finite-support polynomials in a symbol ``t`` with
arbitrary rational exponents and rational coefficients.  The valuation is
the ``t``-adic order, so the value group is all of Q and the residue field
is Q (characteristic zero).  Everything is exact and immutable.

    >>> a = parse_element("(2+t)/(1+t)")
    >>> a.ord(), a.residue()
    (Fraction(0, 1), Fraction(2, 1))
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Mapping, Union

from .errors import DomainError, ParseError

__all__ = [
    "INF",
    "NEG_INF",
    "ExtendedRational",
    "FieldElement",
    "T",
    "field_arith",
    "format_rational",
    "parse_element",
    "parse_rational",
    "residue",
    "valuation",
]


@total_ordering
class _Infinity:
    """Signed infinity compatible with :class:`fractions.Fraction` ordering."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __add__(self, other):
        if isinstance(other, _Infinity) and other.sign != self.sign:
            raise DomainError("inf - inf is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_infinity, (self.sign,))


def _infinity(sign: int) -> _Infinity:
    return INF if sign > 0 else NEG_INF


INF = _Infinity(1)
NEG_INF = _Infinity(-1)

#: A rational number or one of the two infinities.
ExtendedRational = Union[Fraction, _Infinity]

Number = Union[int, Fraction]
_Terms = tuple  # tuple[tuple[Fraction, Fraction], ...] sorted by exponent
_ONE: _Terms = ((Fraction(0), Fraction(1)),)


def format_rational(q) -> str:
    """Exact text for a rational or infinity: ``3``, ``-1/2``, ``inf``."""
    if isinstance(q, _Infinity):
        return str(q)
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> ExtendedRational:
    """Parse ``7``, ``-3/4`` or ``inf``; decimal literals are rejected."""
    s = text.strip()
    if s in ("inf", "+inf"):
        return INF
    if s == "-inf":
        return NEG_INF
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        if "." in s or "e" in s.lower():
            raise ParseError(f"decimal literal {s!r} not allowed; write an exact fraction such as 1/2")
        raise ParseError(f"not a rational number: {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {s!r}") from None


# ---------------------------------------------------------------------------
# sparse and dense polynomial helpers

def _terms(mapping: Mapping) -> _Terms:
    return tuple(sorted((Fraction(e), Fraction(c)) for e, c in mapping.items() if c != 0))


def _mul_terms(a: _Terms, b: _Terms) -> dict:
    out: dict = {}
    for ea, ca in a:
        for eb, cb in b:
            e = ea + eb
            out[e] = out.get(e, 0) + ca * cb
    return out


def _add_terms(a: _Terms, b: _Terms, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b:
        out[e] = out.get(e, 0) + sign * c
    return out


def _to_dense(terms: _Terms, shift: Fraction, scale: int) -> list:
    dense = [Fraction(0)] * (int((terms[-1][0] - shift) * scale) + 1)
    for e, c in terms:
        dense[int((e - shift) * scale)] = c
    return dense


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod_dense(p: list, q: list) -> tuple[list, list]:
    p = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 1)
    while len(p) - 1 >= dq and p:
        k = len(p) - 1 - dq
        c = p[-1] / lead
        quot[k] = c
        for i, qc in enumerate(q):
            p[i + k] -= c * qc
        _trim(p)
    return _trim(quot), p


def _gcd_dense(p: list, q: list) -> list:
    while q:
        _, r = _divmod_dense(p, q)
        p, q = q, r
    return [c / p[-1] for c in p]


def _canonical(num: Mapping, den: Mapping) -> tuple[_Terms, _Terms]:
    """Reduce ``num/den`` to lowest terms with ``den`` = 1 + (higher terms)."""
    n = _terms(num)
    d = _terms(den)
    if not d:
        raise DomainError("division by the zero element")
    if not n:
        return (), _ONE
    dmin, dlead = d[0]
    nmin = n[0][0]
    if len(d) == 1:
        return tuple((e - dmin, c / dlead) for e, c in n), _ONE
    if len(n) > 1:
        scale = 1
        for e, _ in n + d:
            scale = scale * e.denominator // math.gcd(scale, e.denominator)
        pn = _to_dense(n, nmin, scale)
        pd = _to_dense(d, dmin, scale)
        g = _gcd_dense(pn, pd)
        if len(g) > 1:
            pn, _ = _divmod_dense(pn, g)
            pd, _ = _divmod_dense(pd, g)
            n = tuple((nmin + Fraction(i, scale), c) for i, c in enumerate(pn) if c != 0)
            d = tuple((dmin + Fraction(i, scale), c) for i, c in enumerate(pd) if c != 0)
    shift = dmin
    dlead = d[0][1]
    if len(d) == 1:
        return tuple((e - shift, c / dlead) for e, c in n), _ONE
    return (
        tuple((e - shift, c / dlead) for e, c in n),
        tuple((e - shift, c / dlead) for e, c in d),
    )


class FieldElement:
    """Immutable element of the field of rational-exponent rational functions in ``t``.

    Stored in lowest terms: the denominator has minimum exponent 0 with
    coefficient 1 there, and shares no non-trivial factor with the
    numerator.  Equality is therefore structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Mapping | None = None, den: Mapping | None = None):
        n, d = _canonical(num or {}, den if den is not None else {0: 1})
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, num: _Terms, den: _Terms) -> "FieldElement":
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (dict(self.num), dict(self.den)))

    @classmethod
    def monomial(cls, coeff: Number, exponent: Number) -> "FieldElement":
        """``coeff * t**exponent``."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return cls._raw((), _ONE)
        return cls._raw(((Fraction(exponent), coeff),), _ONE)

    @classmethod
    def constant(cls, q: Number) -> "FieldElement":
        return cls.monomial(q, 0)

    # -- basic predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_monomial(self) -> bool:
        return len(self.num) == 1 and self.den == _ONE

    def is_constant(self) -> bool:
        return not self.num or (self.is_monomial() and self.num[0][0] == 0)

    def constant_value(self) -> Fraction:
        """The rational value of a constant element."""
        if not self.is_constant():
            raise DomainError(f"{self} is not a rational constant")
        return self.num[0][1] if self.num else Fraction(0)

    # -- valuation ---------------------------------------------------------

    def ord(self) -> ExtendedRational:
        """The ``t``-adic valuation; ``inf`` for zero."""
        if not self.num:
            return INF
        return self.num[0][0]

    def residue(self) -> Fraction:
        """Image in the residue field Q of an element of valuation >= 0."""
        v = self.ord()
        if v < 0:
            raise DomainError(f"residue undefined for negative valuation {format_rational(v)} of {self}")
        if v > 0:
            return Fraction(0)
        return self.num[0][1]

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "FieldElement":
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == _ONE and other.den == _ONE:
            return FieldElement._raw(_terms(_add_terms(self.num, other.num)), _ONE)
        if self.den == other.den:
            return FieldElement(_add_terms(self.num, other.num), dict(self.den))
        num = _add_terms(_terms(_mul_terms(self.num, other.den)), _terms(_mul_terms(other.num, self.den)))
        return FieldElement(num, _mul_terms(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(tuple((e, -c) for e, c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return FieldElement._raw((), _ONE)
        if self.den == _ONE and other.den == _ONE:
            return FieldElement._raw(_terms(_mul_terms(self.num, other.num)), _ONE)
        return FieldElement(_mul_terms(self.num, other.num), _mul_terms(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self.num:
            raise DomainError("division by the zero element")
        return FieldElement(dict(self.den), dict(self.num))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported; use t**q via FieldElement.monomial")
        if k < 0:
            return self.inverse() ** (-k)
        result = FieldElement.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison, hashing, printing ---------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.num, self.den)))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def support(self) -> tuple[Fraction, ...]:
        """Exponents of the numerator."""
        return tuple(e for e, _ in self.num)

    def __str__(self):
        if self.den == _ONE:
            return _format_terms(self.num)
        return f"({_format_terms(self.num)})/({_format_terms(self.den)})"

    def __repr__(self):
        return f"FieldElement({str(self)!r})"


def _format_terms(terms: _Terms) -> str:
    if not terms:
        return "0"
    pieces = []
    for k, (e, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if e == 0:
            body = format_rational(c)
        else:
            if e == 1:
                power = "t"
            elif e.denominator == 1 and e > 0:
                power = f"t^{e.numerator}"
            else:
                power = f"t^({format_rational(e)})"
            body = power if c == 1 else f"{format_rational(c)}*{power}"
        if k == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


T = FieldElement.monomial(1, 1)


def valuation(a: FieldElement) -> ExtendedRational:
    """``ord(a)``: minimum numerator exponent minus minimum denominator exponent."""
    return a.ord()


def residue(a: FieldElement) -> Fraction:
    """Reduction of ``a`` modulo the maximal ideal; requires ``ord(a) >= 0``."""
    return a.residue()


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in ``{"add", "sub", "mul", "div"}``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(\*\*|[-+*/^()])|(\S))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        number, symbol, op, bad = m.groups()
        if bad is not None:
            if bad == ".":
                raise ParseError(f"decimal literal in {text!r}; write an exact fraction such as 1/2")
            raise ParseError(f"unexpected character {bad!r} at column {m.start(4) + 1} in {text!r}")
        tokens.append(number or symbol or ("^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = f"{expected!r}" if expected else "an operand"
            found = "end of input" if tok is None else repr(tok)
            raise ParseError(f"expected {want} but found {found} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> FieldElement:
        if not self.tokens:
            raise ParseError("empty field element")
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return value

    def expr(self) -> FieldElement:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> FieldElement:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError(f"division by the zero element in {self.text!r}")
                value = value / rhs
        return value

    def unary(self) -> FieldElement:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> FieldElement:
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take()
        q = self.exponent()
        if q.denominator == 1:
            if base.is_zero() and q < 0:
                raise ParseError(f"division by the zero element in {self.text!r}")
            return base ** int(q)
        if base.is_monomial() and base.num[0][1] == 1:
            return FieldElement.monomial(1, base.num[0][0] * q)
        raise ParseError(f"non-integer power of {base} in {self.text!r}")

    def exponent(self) -> Fraction:
        if self.peek() == "(":
            self.take()
            value = self.expr()
            self.take(")")
            if not value.is_constant():
                raise ParseError(f"exponent must be a rational constant in {self.text!r}")
            return value.constant_value()
        sign = 1
        while self.peek() in ("-", "+"):
            if self.take() == "-":
                sign = -sign
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"bad exponent {tok!r} in {self.text!r}")
        return Fraction(sign * int(tok))

    def atom(self) -> FieldElement:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok == "t":
            return T
        if tok.isdigit():
            return FieldElement.constant(int(tok))
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_element(text: str) -> FieldElement:
    """Parse text such as ``"3*t^(-1/2) + 1"`` or ``"(2+t)/(1+t)"``."""
    return _Parser(text).parse()


def as_element(x) -> FieldElement:
    """Coerce ints, Fractions and strings to :class:`FieldElement`."""
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, str):
        return parse_element(x)
    if isinstance(x, (int, Fraction)):
        return FieldElement.constant(x)
    raise TypeError(f"cannot interpret {x!r} as a field element")


def elements(xs: Iterable) -> list[FieldElement]:
    return [as_element(x) for x in xs]
