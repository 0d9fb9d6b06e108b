"""Arbitrary-precision dyadic rationals ``mant * 2**expo``.

Values are never normalised implicitly: the result of an operation keeps
whatever mantissa/exponent pair falls out of the integer arithmetic.
:func:`canonicalize` is available when a caller wants a unique form.
Equality and hashing are defined on the denoted number, so ``Dyadic(6, 0)``
and ``Dyadic(3, 1)`` compare (and hash) equal.
"""

from __future__ import annotations

import operator
import re
from enum import Enum
from fractions import Fraction

__all__ = [
    "Dyadic",
    "Ordering",
    "dy_add",
    "dy_sub",
    "dy_mul",
    "dy_neg",
    "dy_shiftl",
    "dy_nat_pow",
    "dy_abs",
    "dy_compare",
    "dy_to_rational",
    "canonicalize",
    "parse_dyadic",
    "ZERO",
    "ONE",
]


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


class Dyadic:
    __slots__ = ("mant", "expo")

    def __init__(self, mant: int, expo: int = 0):
        if type(mant) is not int or type(expo) is not int:
            mant, expo = operator.index(mant), operator.index(expo)
        object.__setattr__(self, "mant", mant)
        object.__setattr__(self, "expo", expo)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.mant, self.expo))

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 0)
        raise TypeError(f"cannot treat {type(value).__name__} as a Dyadic")

    # arithmetic

    def __add__(self, other):
        try:
            return dy_add(self, Dyadic.coerce(other))
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return dy_sub(self, Dyadic.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        try:
            return dy_sub(Dyadic.coerce(other), self)
        except TypeError:
            return NotImplemented

    def __mul__(self, other):
        try:
            return dy_mul(self, Dyadic.coerce(other))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return dy_neg(self)

    def __pos__(self):
        return self

    def __abs__(self):
        return dy_abs(self)

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        return dy_nat_pow(self, n)

    def __lshift__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        return dy_shiftl(self, n)

    def __rshift__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        return dy_shiftl(self, -n)

    # order

    def _cmp(self, other) -> int:
        return dy_compare(self, Dyadic.coerce(other)).value

    def __eq__(self, other):
        if isinstance(other, Fraction):
            return dy_to_rational(self) == other
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        c = canonicalize(self)
        if c.expo >= 0:
            return hash(c.mant << c.expo)
        return hash(Fraction(c.mant, 1 << -c.expo))

    def __bool__(self):
        return self.mant != 0

    def sign(self) -> int:
        return (self.mant > 0) - (self.mant < 0)

    def bit_length(self) -> int:
        return self.mant.bit_length()

    # text forms

    def __repr__(self):
        return f"Dyadic({self.mant}, {self.expo})"

    def __str__(self):
        return f"{self.mant}*2^{self.expo}"

    def to_decimal(self) -> str:
        """Exact decimal expansion; always terminates for a dyadic."""
        m, e = self.mant, self.expo
        if e >= 0:
            return str(m << e)
        neg = m < 0
        digits = str(abs(m) * 5 ** (-e)).rjust(-e + 1, "0")
        whole, frac = digits[:e], digits[e:].rstrip("0")
        text = whole if not frac else f"{whole}.{frac}"
        return "-" + text if neg else text


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)


def dy_add(x: Dyadic, y: Dyadic) -> Dyadic:
    if x.expo <= y.expo:
        return Dyadic(x.mant + (y.mant << (y.expo - x.expo)), x.expo)
    return Dyadic((x.mant << (x.expo - y.expo)) + y.mant, y.expo)


def dy_sub(x: Dyadic, y: Dyadic) -> Dyadic:
    return dy_add(x, dy_neg(y))


def dy_mul(x: Dyadic, y: Dyadic) -> Dyadic:
    return Dyadic(x.mant * y.mant, x.expo + y.expo)


def dy_neg(x: Dyadic) -> Dyadic:
    return Dyadic(-x.mant, x.expo)


def dy_shiftl(x: Dyadic, n: int) -> Dyadic:
    """Multiply by ``2**n``; ``n`` may be negative."""
    return Dyadic(x.mant, x.expo + n)


def dy_nat_pow(x: Dyadic, n: int) -> Dyadic:
    if n < 0:
        raise ValueError("dy_nat_pow needs a natural exponent")
    return Dyadic(x.mant**n, x.expo * n)


def dy_abs(x: Dyadic) -> Dyadic:
    return x if x.mant >= 0 else Dyadic(-x.mant, x.expo)


def dy_compare(x: Dyadic, y: Dyadic) -> Ordering:
    """Order by denotation, aligning exponents instead of building fractions."""
    sx, sy = x.sign(), y.sign()
    if sx != sy:
        return Ordering.LT if sx < sy else Ordering.GT
    if sx == 0:
        return Ordering.EQ
    if x.expo <= y.expo:
        a, b = x.mant, y.mant << (y.expo - x.expo)
    else:
        a, b = x.mant << (x.expo - y.expo), y.mant
    if a < b:
        return Ordering.LT
    return Ordering.GT if a > b else Ordering.EQ


def dy_to_rational(x: Dyadic) -> Fraction:
    if x.expo >= 0:
        return Fraction(x.mant << x.expo)
    return Fraction(x.mant, 1 << -x.expo)


def canonicalize(x: Dyadic) -> Dyadic:
    """Odd mantissa, or ``0*2^0`` for zero."""
    m = x.mant
    if m == 0:
        return ZERO
    tz = (m & -m).bit_length() - 1
    if tz == 0:
        return x
    return Dyadic(m >> tz, x.expo + tz)


_DEBUG_FORM = re.compile(r"\s*([+-]?\d+)\s*\*\s*2\^\s*([+-]?\d+)\s*")


def parse_dyadic(text: str) -> Dyadic:
    """Inverse of ``str(Dyadic)``: parses ``"mant*2^expo"``."""
    m = _DEBUG_FORM.fullmatch(text)
    if m is None:
        raise ValueError(f"not a dyadic literal: {text!r}")
    return Dyadic(int(m.group(1)), int(m.group(2)))
