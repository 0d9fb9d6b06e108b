"""Real numbers as regular approximation functions over dyadics.

A :class:`Real` is a function from a precision exponent ``k`` to a dyadic
within ``2**k`` of the number it denotes.  At the API level a tolerance can
also be given as a positive rational ``eps``; it is rounded down to the
power of two ``2**qdlog2(eps)`` and all internal budgets are shifts.

Regularity follows from this: two approximations at ``2**k1`` and
``2**k2`` are both close to the same ideal value, hence within
``2**k1 + 2**k2`` of each other.

The base space of dyadics (or rationals) with ``ball(eps, x, y) <=> |x - y|
<= eps`` is a prelength space, which is the condition under which the
lifting :func:`bind` is valid.  This is assumed rather than checked.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .approx import app_approx, app_div, qdlog2, to_rational
from .dyadic import ONE, Dyadic, dy_abs, dy_add, dy_mul, dy_neg, dy_shiftl
from .errors import DomainError

__all__ = [
    "ball",
    "Real",
    "UcFun",
    "unit",
    "bind",
    "map2",
    "real_from_rational",
    "real_add",
    "real_sub",
    "real_neg",
    "real_mul",
    "real_inv",
    "real_shift",
    "real_pow",
    "compress",
    "real_to_decimal",
]


def ball(eps, x, y) -> bool:
    """``|x - y| <= eps`` decided in exact rationals."""
    return abs(to_rational(x) - to_rational(y)) <= to_rational(eps)


class Real:
    """A computable real, given by ``approx_fn(k)`` within ``2**k``.

    Approximations are memoised per exponent; the cache is shared between
    threads and only ever stores the first value computed for a given
    exponent, so repeated calls are deterministic.
    """

    __slots__ = ("_fn", "_cache", "_lock", "name")

    def __init__(self, approx_fn: Callable[[int], Dyadic], name: str | None = None):
        self._fn = approx_fn
        self._cache: dict[int, Dyadic] = {}
        self._lock = threading.Lock()
        self.name = name

    def at(self, k: int) -> Dyadic:
        """Dyadic within ``2**k`` of this real."""
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        value = self._fn(k)
        with self._lock:
            return self._cache.setdefault(k, value)

    def approx(self, eps) -> Dyadic:
        """Dyadic within the positive rational ``eps`` of this real."""
        return self.at(qdlog2(eps))

    __call__ = approx

    def __repr__(self):
        return f"Real({self.name})" if self.name else "Real(<computable>)"

    def __add__(self, other):
        return real_add(self, _as_real(other))

    def __radd__(self, other):
        return real_add(_as_real(other), self)

    def __sub__(self, other):
        return real_sub(self, _as_real(other))

    def __rsub__(self, other):
        return real_sub(_as_real(other), self)

    def __mul__(self, other):
        return real_mul(self, _as_real(other))

    def __rmul__(self, other):
        return real_mul(_as_real(other), self)

    def __neg__(self):
        return real_neg(self)

    def __pow__(self, n: int):
        return real_pow(self, n)

    def __lshift__(self, n: int):
        return real_shift(self, n)

    def __rshift__(self, n: int):
        return real_shift(self, -n)

    def to_decimal(self, digits: int) -> str:
        return real_to_decimal(self, digits)


def _as_real(x) -> Real:
    if isinstance(x, Real):
        return x
    if isinstance(x, Dyadic):
        return unit(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return real_from_rational(Fraction(x))
    raise TypeError(f"cannot lift {type(x).__name__} to a Real")


@dataclass(frozen=True)
class UcFun:
    """A uniformly continuous map from dyadics to reals with its modulus.

    ``mu`` maps an output tolerance to an input tolerance (both positive
    rationals): inputs within ``mu(eps)`` give outputs within ``eps``.
    """

    map: Callable[[Dyadic], Real]
    mu: Callable[[Fraction], Fraction]

    def __call__(self, x: Dyadic) -> Real:
        return self.map(x)


def unit(x: Dyadic) -> Real:
    """Embed a dyadic as the constant approximation function."""
    x = Dyadic.coerce(x)
    return Real(lambda k: x, name=str(x))


def bind(f: UcFun, x: Real) -> Real:
    """Lift ``f`` to reals: ``eps -> f(x(mu(eps/2)))(eps/2)``."""

    def approx(k):
        half = Fraction(2) ** (k - 1)
        return f.map(x.approx(f.mu(half))).at(k - 1)

    return Real(approx)


def map2(f: Callable[[Dyadic, Dyadic], Dyadic], mu_x, mu_y, x: Real, y: Real) -> Real:
    """Lift an exact binary operation on dyadics.

    ``mu_x`` and ``mu_y`` must be joint moduli: arguments within ``mu_x(eps)``
    and ``mu_y(eps)`` of the ideal ones give a result within ``eps``.
    """

    def approx(k):
        eps = Fraction(2) ** k
        return f(x.approx(mu_x(eps)), y.approx(mu_y(eps)))

    return Real(approx)


def _half(eps: Fraction) -> Fraction:
    return eps / 2


def real_from_rational(q) -> Real:
    q = Fraction(q)
    num, den = Dyadic(q.numerator), Dyadic(q.denominator)
    if den == ONE:
        return unit(num)
    return Real(lambda k: app_div(num, den, k), name=str(q))


def real_add(x: Real, y: Real) -> Real:
    return map2(dy_add, _half, _half, x, y)


def real_neg(x: Real) -> Real:
    return Real(lambda k: dy_neg(x.at(k)))


def real_sub(x: Real, y: Real) -> Real:
    return real_add(x, real_neg(y))


def real_shift(x: Real, n: int) -> Real:
    """Exact multiplication by ``2**n``."""
    return Real(lambda k: dy_shiftl(x.at(k - n), n))


def _magnitude_exponent(x: Real) -> int:
    """``b`` with ``|x| + 1 <= 2**b``, read off one coarse approximation."""
    bound = dy_abs(x.at(0)) + 2
    return qdlog2(bound) + 1


def real_mul(x: Real, y: Real) -> Real:
    """Product with per-argument precision chosen from magnitude bounds.

    ``B = |x(1)| + 1`` bounds ``|x|``; each factor is fetched at a precision
    scaled down by the other factor's bound, then the product is truncated.
    """
    bounds = None

    def approx(k):
        nonlocal bounds
        if bounds is None:
            bounds = (_magnitude_exponent(x), _magnitude_exponent(y))
        bx, by = bounds
        kk = min(k, 0)
        a = x.at(kk - 2 - by)
        b = y.at(kk - 2 - bx)
        return app_approx(dy_mul(a, b), k - 1)

    return Real(approx)


def real_pow(x: Real, n: int) -> Real:
    if n < 0:
        raise DomainError("real_pow needs a natural exponent")
    result = unit(ONE)
    base = x
    first = True
    while n:
        if n & 1:
            result = base if first else real_mul(result, base)
            first = False
        n >>= 1
        if n:
            base = real_mul(base, base)
    return result


def real_inv(x: Real, w: int) -> Real:
    """Reciprocal of ``x`` given the witness ``2**w <= |x|``.

    Raises :class:`DomainError` once an approximation shows the witness is
    false.
    """

    def approx(k):
        j = min(w - 1, k - 2 + 2 * w)
        a = x.at(j)
        # |x| <= |a| + 2**j, so |a| + 2**j < 2**w contradicts the witness
        if dy_abs(a) + Dyadic(1, j) < Dyadic(1, w):
            raise DomainError(f"witness 2^{w} <= |x| is violated (x ~ {a.to_decimal()})")
        return app_div(ONE, a, k - 1)

    return Real(approx)


def compress(x: Real) -> Real:
    """The same real, with approximants truncated to the requested size."""
    return Real(lambda k: app_approx(x.at(k - 1), k - 1))


def _round_scaled(a: Dyadic, digits: int) -> int:
    """``a * 10**digits`` rounded to the nearest integer, ties away from zero."""
    m, e = a.mant, a.expo
    if e >= 0:
        return (m << e) * 10**digits
    num = abs(m) * 10**digits
    den = 1 << -e
    q, r = divmod(num, den)
    if 2 * r >= den:
        q += 1
    return q if m >= 0 else -q


def real_to_decimal(x: Real, digits: int) -> str:
    """Decimal string within ``10**-digits`` of ``x``.

    The approximation is requested at ``10**-digits / 2`` and rounded to
    ``digits`` places, each step contributing at most half a unit.
    """
    if digits < 0:
        raise ValueError("digits must be non-negative")
    k = qdlog2(Fraction(1, 2 * 10**digits))
    n = _round_scaled(x.at(k), digits)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
