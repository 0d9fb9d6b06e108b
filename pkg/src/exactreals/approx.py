"""Approximate rationals: a dense ordered ring with division and rounding
that are only required to land within ``2**k`` of the exact answer.

Two carriers implement the same operation bundle:

* :data:`DYADIC` -- the working carrier, built on :mod:`exactreals.dyadic`;
* :data:`RATIONAL` -- :class:`fractions.Fraction`, used for differential
  testing of the contract.

Everything above this layer only relies on the contracts

    |app_div(x, y, k) - x/y| <= 2**k
    |app_approx(x, k) - x|   <= 2**k

so any in-ball answer is acceptable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .dyadic import (
    Dyadic,
    Ordering,
    dy_abs,
    dy_add,
    dy_compare,
    dy_mul,
    dy_nat_pow,
    dy_neg,
    dy_shiftl,
    dy_to_rational,
)
from .errors import DivisionByZero, DomainError

__all__ = [
    "AppRationalsOps",
    "DYADIC",
    "RATIONAL",
    "app_div",
    "app_approx",
    "int_embed",
    "qdlog2",
    "to_rational",
]


def _trunc_div(n: int, d: int) -> int:
    q = abs(n) // abs(d)
    return q if (n < 0) == (d < 0) else -q


def app_div(x: Dyadic, y: Dyadic, k: int) -> Dyadic:
    """Quotient ``x/y`` to within ``2**k``, as an integer times ``2**k``.

    The numerator is shifted so that a single truncating integer division
    yields the mantissa at exponent ``k``.
    """
    if y.mant == 0:
        raise DivisionByZero("app_div by zero")
    s = x.expo - y.expo - k
    if s >= 0:
        q = _trunc_div(x.mant << s, y.mant)
    else:
        q = _trunc_div(x.mant, y.mant << -s)
    return Dyadic(q, k)


def app_approx(x: Dyadic, k: int) -> Dyadic:
    """Truncate toward zero to exponent ``k``; unchanged if already coarser."""
    if x.expo >= k:
        return x
    shift = k - x.expo
    m = x.mant
    return Dyadic(m >> shift if m >= 0 else -((-m) >> shift), k)


def int_embed(n: int) -> Dyadic:
    return Dyadic(n, 0)


def _num_den(q) -> tuple[int, int]:
    if isinstance(q, Dyadic):
        if q.expo >= 0:
            return q.mant << q.expo, 1
        return q.mant, 1 << -q.expo
    q = Fraction(q)
    return q.numerator, q.denominator


def qdlog2(q) -> int:
    """Greatest ``k`` with ``2**k <= q`` for a positive rational ``q``."""
    n, d = _num_den(q)
    if n <= 0:
        raise DomainError(f"qdlog2 needs a positive argument, got {q}")
    k = n.bit_length() - d.bit_length()
    # now 2**(k-1) < q < 2**(k+1)
    if k >= 0:
        return k if n >= d << k else k - 1
    return k if n << -k >= d else k - 1


def to_rational(x) -> Fraction:
    if isinstance(x, Dyadic):
        return dy_to_rational(x)
    return Fraction(x)


# -- the generic operation bundle ---------------------------------------------


@dataclass(frozen=True)
class AppRationalsOps:
    """The operations a carrier must supply to back the reals.

    Laws are checked by a carrier-generic suite in the tests.
    """

    name: str
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    shiftl: Callable[[Any, int], Any]
    nat_pow: Callable[[Any, int], Any]
    abs: Callable[[Any], Any]
    compare: Callable[[Any, Any], Ordering]
    app_div: Callable[[Any, Any, int], Any]
    app_approx: Callable[[Any, int], Any]
    embed: Callable[[int], Any]
    to_rational: Callable[[Any], Fraction]

    @property
    def zero(self):
        return self.embed(0)

    @property
    def one(self):
        return self.embed(1)


DYADIC = AppRationalsOps(
    name="dyadic",
    add=dy_add,
    mul=dy_mul,
    neg=dy_neg,
    shiftl=dy_shiftl,
    nat_pow=dy_nat_pow,
    abs=dy_abs,
    compare=dy_compare,
    app_div=app_div,
    app_approx=app_approx,
    embed=int_embed,
    to_rational=dy_to_rational,
)


def _q_compare(x: Fraction, y: Fraction) -> Ordering:
    if x < y:
        return Ordering.LT
    return Ordering.GT if x > y else Ordering.EQ


def _q_shiftl(x: Fraction, n: int) -> Fraction:
    return x * (1 << n) if n >= 0 else x / (1 << -n)


def _q_app_approx(x: Fraction, k: int) -> Fraction:
    # round to the nearest multiple of 2**k, which sits within 2**(k-1)
    unit = _q_shiftl(Fraction(1), k)
    return round(x / unit) * unit


def _q_app_div(x: Fraction, y: Fraction, k: int) -> Fraction:
    if y == 0:
        raise DivisionByZero("app_div by zero")
    return _q_app_approx(x / y, k)


RATIONAL = AppRationalsOps(
    name="rational",
    add=lambda x, y: x + y,
    mul=lambda x, y: x * y,
    neg=lambda x: -x,
    shiftl=_q_shiftl,
    nat_pow=lambda x, n: x**n,
    abs=abs,
    compare=_q_compare,
    app_div=_q_app_div,
    app_approx=_q_app_approx,
    embed=Fraction,
    to_rational=Fraction,
)
