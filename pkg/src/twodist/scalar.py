"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

A :class:`QuadScalar` is ``a + b*sqrt(d)`` with rational ``a``, ``b`` and a
square-free radicand ``d``.  Rationals are encoded with ``d == 0`` so that the
canonical form is unique.  Two irrational operands must share their radicand;
nothing in this package ever needs two independent square roots at once.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

from .errors import DivisionByZero, MixedRadicands, NegativeRadicand, ParseError

__all__ = [
    "QuadScalar",
    "as_scalar",
    "qs_arith",
    "qs_format",
    "qs_parse",
    "qs_sign",
    "qs_sqrt",
    "square_split",
]


def square_split(n: int) -> tuple[int, int]:
    """Return ``(s, core)`` with ``n == s*s*core`` and ``core`` square-free.

    Trial division stops once ``p**3`` exceeds the cofactor: what is left is
    then 1, a prime, a product of two distinct primes, or a prime square.
    """
    if n < 0:
        raise NegativeRadicand(f"negative radicand {n}")
    if n == 0:
        return 0, 0
    s, core = 1, 1
    for p in (2, 3):
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            core *= p
    p = 5
    step = 2
    while p * p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            s *= p
        if n % p == 0:
            n //= p
            core *= p
        p += step
        step = 6 - step
    r = math.isqrt(n)
    if r * r == n:
        s *= r
    else:
        core *= n
    return s, core


@total_ordering
class QuadScalar:
    """Exact element ``a + b*sqrt(d)`` of a real quadratic field."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if d < 0:
            raise NegativeRadicand(f"negative radicand {d}")
        if b and d:
            s, d = square_split(d)
            b *= s
            if d == 1:
                a += b
                b = Fraction(0)
                d = 0
        else:
            b = Fraction(0)
            d = 0
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int) -> QuadScalar:
        # d is already square-free here
        obj = cls.__new__(cls)
        if not b:
            obj.a, obj.b, obj.d = a, Fraction(0), 0
        else:
            obj.a, obj.b, obj.d = a, b, d
        return obj

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def to_fraction(self) -> Fraction:
        if self.d:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> QuadScalar:
        return QuadScalar._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - d*b**2``."""
        return self.a * self.a - self.d * self.b * self.b

    def sign(self) -> int:
        return qs_sign(self)

    def __float__(self) -> float:
        if not self.d:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        return f"QuadScalar({qs_format(self)!r})"

    def __str__(self) -> str:
        return qs_format(self)

    def __hash__(self) -> int:
        if not self.d:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return qs_sign(self - other) < 0

    def __neg__(self) -> QuadScalar:
        return QuadScalar._raw(-self.a, -self.b, self.d)

    def __pos__(self) -> QuadScalar:
        return self

    def __abs__(self) -> QuadScalar:
        return -self if qs_sign(self) < 0 else self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _common_radicand(self, other)
        return QuadScalar._raw(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _common_radicand(self, other)
        return QuadScalar._raw(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _common_radicand(self, other)
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        if not b1 and not b2:
            return QuadScalar._raw(a1 * a2, Fraction(0), 0)
        return QuadScalar._raw(a1 * a2 + d * b1 * b2, a1 * b2 + b1 * a2, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise DivisionByZero(f"division of {self} by zero")
        d = _common_radicand(self, other)
        if not other.b:
            return QuadScalar._raw(self.a / other.a, self.b / other.a, d)
        n = other.norm()
        num = self * other.conjugate()
        return QuadScalar._raw(num.a / n, num.b / n, d)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> QuadScalar:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return QuadScalar(1) / self ** (-exponent)
        result = QuadScalar(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


def _coerce(x):
    if isinstance(x, QuadScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadScalar._raw(Fraction(x), Fraction(0), 0)
    return NotImplemented


def as_scalar(x) -> QuadScalar:
    """Convert an int, Fraction, text or QuadScalar to a QuadScalar."""
    if isinstance(x, QuadScalar):
        return x
    if isinstance(x, str):
        return qs_parse(x)
    if isinstance(x, (int, Fraction)):
        return QuadScalar._raw(Fraction(x), Fraction(0), 0)
    raise TypeError(f"cannot convert {type(x).__name__} to QuadScalar")


def _common_radicand(x: QuadScalar, y: QuadScalar) -> int:
    if not x.d:
        return y.d
    if not y.d or y.d == x.d:
        return x.d
    raise MixedRadicands(f"cannot combine sqrt({x.d}) and sqrt({y.d})")


def qs_arith(x, y, op: str) -> QuadScalar:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two scalars."""
    x, y = as_scalar(x), as_scalar(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def qs_sign(x) -> int:
    """Exact sign of ``a + b*sqrt(d)``."""
    x = as_scalar(x)
    sa = (x.a > 0) - (x.a < 0)
    sb = (x.b > 0) - (x.b < 0)
    if not sb or sa == sb:
        return sa or sb
    if not sa:
        return sb
    # opposite signs: the larger square wins, equality is impossible for b != 0
    return sa if x.a * x.a > x.b * x.b * x.d else sb


def qs_sqrt(r) -> QuadScalar:
    """Exact square root of a non-negative rational, as ``(p/q)*sqrt(d)``."""
    if isinstance(r, QuadScalar):
        r = r.to_fraction()
    r = Fraction(r)
    if r < 0:
        raise NegativeRadicand(f"square root of negative {r}")
    if not r:
        return QuadScalar(0)
    # sqrt(p/q) = sqrt(p*q)/q
    s, core = square_split(r.numerator * r.denominator)
    coeff = Fraction(s, r.denominator)
    if core == 1:
        return QuadScalar(coeff)
    return QuadScalar._raw(Fraction(0), coeff, core)


def _format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def qs_format(x) -> str:
    """Canonical text form: ``rat``, ``rat*sqrt(d)`` or ``rat+rat*sqrt(d)``."""
    x = as_scalar(x)
    if not x.d:
        return _format_rational(x.a)
    radical = f"{_format_rational(abs(x.b))}*sqrt({x.d})"
    if not x.a:
        return ("-" if x.b < 0 else "") + radical
    return _format_rational(x.a) + ("-" if x.b < 0 else "+") + radical


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str):
        raise ParseError(message, self.pos, self.text)

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def uint(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected digits")
        return int(self.text[start:self.pos])

    def rational(self, signed: bool) -> Fraction:
        sign = 1
        if signed and self.peek() in "+-":
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        num = self.uint()
        if self.peek() == "/":
            self.pos += 1
            at = self.pos
            den = self.uint()
            if den == 0:
                raise ParseError("zero denominator", at, self.text)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def radical(self) -> int:
        self.expect("*sqrt(")
        d = self.uint()
        self.expect(")")
        return d


def qs_parse(text: str) -> QuadScalar:
    """Parse ``rat``, ``rat*sqrt(uint)`` or ``rat (+|-) rat*sqrt(uint)``."""
    sc = _Scanner("".join(text.split()))
    if not sc.text:
        raise ParseError("empty scalar", 0, text)
    first = sc.rational(signed=True)
    if sc.peek() == "":
        return QuadScalar(first)
    if sc.peek() == "*":
        d = sc.radical()
        if sc.peek():
            sc.fail("trailing characters")
        return QuadScalar(0, first, d)
    if sc.peek() not in "+-":
        sc.fail("expected '+', '-' or end of input")
    sign = -1 if sc.peek() == "-" else 1
    sc.pos += 1
    coeff = sc.rational(signed=False)
    d = sc.radical()
    if sc.peek():
        sc.fail("trailing characters")
    return QuadScalar(first, sign * coeff, d)
