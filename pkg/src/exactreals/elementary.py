"""exp, arctan, pi and square root on computable reals."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .approx import app_approx, qdlog2
from .completion import (
    Real,
    real_add,
    real_inv,
    real_mul,
    real_neg,
    real_shift,
    real_sub,
    unit,
)
from .dyadic import ONE, ZERO, Dyadic, dy_add, dy_mul, dy_neg, dy_shiftl, dy_sub
from .errors import DomainError
from .series import AltSeries, factorials, odds, powers, sum_alternating

__all__ = [
    "exp_small",
    "exp_small_dyadic",
    "exp",
    "arctan_small",
    "arctan",
    "pi",
    "machin_pi",
    "SqrtState",
    "sqrt_step",
    "sqrt_loop",
    "sqrt_in_1_4",
    "sqrt",
    "range_reduction_exponent",
]

# Arguments are halved until they lie in [-2**-K, 0] before summing the
# exponential series; K grows for very high precisions.
REDUCTION_BITS = 50
REDUCTION_BITS_HIGH = 75
HIGH_PRECISION_BITS = 2000


def range_reduction_exponent(k: int) -> int:
    return REDUCTION_BITS if -k < HIGH_PRECISION_BITS else REDUCTION_BITS_HIGH


def _clamp(a: Dyadic, lo: Dyadic, hi: Dyadic) -> Dyadic:
    if a < lo:
        return lo
    if a > hi:
        return hi
    return a


_MINUS_ONE = Dyadic(-1)


# -- exponential ---------------------------------------------------------------


def exp_small_dyadic(a: Dyadic) -> Real:
    """``exp(a)`` for a dyadic ``-1 <= a <= 0`` by its alternating series."""
    if not (_MINUS_ONE <= a <= ZERO):
        raise DomainError(f"exp_small needs -1 <= x <= 0, got {a.to_decimal()}")
    return sum_alternating(AltSeries(powers(dy_neg(a)), factorials()), 1)


def exp_small(x: Real) -> Real:
    """``exp(x)`` for a real ``-1 <= x <= 0``.

    exp is 1-Lipschitz on that interval, so each approximation of ``x`` is
    clamped into it and the series is evaluated at half the budget.
    """

    def approx(k):
        a = _clamp(x.at(k - 1), _MINUS_ONE, ZERO)
        return exp_small_dyadic(a).at(k - 1)

    return Real(approx)


def _exp_nonpositive(y: Real) -> Real:
    """``exp(y)`` for ``y <= 0``: halve ``m`` times, sum, square ``m`` times.

    Each squaring at most doubles the error of a value in ``[0, 1]``, so
    starting from precision ``2**p`` with ``p = k - m - 1`` and truncating
    to ``2**p`` after every squaring stays under ``2**k``.
    """
    size = None

    def approx(k):
        nonlocal size
        if size is None:
            # |y| <= ceil(|y(1)| + 1) < 2**size
            size = _ceil(dy_add(abs(y.at(0)), ONE)).bit_length()
        kk = min(k, -1)
        m = size + range_reduction_exponent(kk)
        p = kk - m - 1
        a = _clamp(exp_small(real_shift(y, -m)).at(p), ZERO, ONE)
        for _ in range(m):
            a = _clamp(app_approx(dy_mul(a, a), p), ZERO, ONE)
        return a

    return Real(approx)


def _ceil(a: Dyadic) -> int:
    if a.expo >= 0:
        return a.mant << a.expo
    return -((-a.mant) >> -a.expo)


def exp(x: Real) -> Real:
    """``exp(x)`` on the whole real line.

    With an integer ``n >= x`` (from one coarse approximation),
    ``exp(x) = exp(x - n) / exp(-n)`` and both exponentials have
    non-positive arguments; ``exp(-n) >= 2**(-2n-1)`` is the reciprocal's
    witness.
    """
    inner = None
    lock = threading.Lock()

    def build():
        n = max(0, _ceil(dy_add(x.at(0), ONE)))
        if n == 0:
            return _exp_nonpositive(x)
        shifted = real_sub(x, unit(Dyadic(n)))
        scale = real_inv(_exp_nonpositive(unit(Dyadic(-n))), -2 * n - 1)
        return real_mul(_exp_nonpositive(shifted), scale)

    def approx(k):
        nonlocal inner
        if inner is None:
            with lock:
                if inner is None:
                    inner = build()
        return inner.at(k)

    return Real(approx)


# -- arctangent and pi ---------------------------------------------------------


def arctan_small(n, d) -> Real:
    """``arctan(n/d)`` for ``0 <= n/d < 1`` with integer or dyadic ``n, d``.

    Terms ``n**(2i+1) / (d**(2i+1) * (2i+1))`` are kept as separate
    numerator and denominator streams; no rational is ever formed.
    """
    n, d = Dyadic.coerce(n), Dyadic.coerce(d)
    if d.mant < 0:
        n, d = dy_neg(n), dy_neg(d)
    if d.mant == 0 or n.mant < 0 or not n < d:
        raise DomainError(f"arctan_small needs 0 <= n/d < 1, got {n}/{d}")
    num = powers(dy_mul(n, n)).map(lambda c: dy_mul(c, n))
    den = powers(dy_mul(d, d)).zip_with(lambda c, o: dy_mul(dy_mul(c, d), o), odds())
    return sum_alternating(AltSeries(num, den), 1)


_MACHIN = ((176, 57), (28, 239), (-48, 682), (96, 12943))


def machin_pi() -> Real:
    """``176 atan(1/57) + 28 atan(1/239) - 48 atan(1/682) + 96 atan(1/12943)``.

    Each of the four terms gets a quarter of the budget.
    """
    terms = [(c, arctan_small(1, q)) for c, q in _MACHIN]

    def approx(k):
        total = ZERO
        for c, t in terms:
            # |c| < 2**bits, so an error of 2**(k-2-bits) in t costs < 2**(k-2)
            bits = abs(c).bit_length()
            total = dy_add(total, dy_mul(Dyadic(c), t.at(k - 2 - bits)))
        return total

    return Real(approx, name="pi")


_PI = machin_pi()


def pi() -> Real:
    """The shared pi instance, so its approximations are computed once."""
    return _PI


def _arctan_dyadic(a: Dyadic) -> Real:
    """arctan of any dyadic, reduced to arguments of magnitude <= 1/2.

    * ``a <= 1/2``: direct series;
    * ``1/2 < a <= 2``: ``pi/4 + arctan((a-1)/(a+1))`` with ``|.| <= 1/3``;
    * ``a > 2``: ``pi/2 - arctan(1/a)``.
    """
    if a.mant < 0:
        return real_neg(_arctan_dyadic(dy_neg(a)))
    if a.expo >= 0:
        p, q = a.mant << a.expo, 1
    else:
        p, q = a.mant, 1 << -a.expo
    if 2 * p <= q:
        return arctan_small(p, q)
    if p <= 2 * q:
        if p >= q:
            rest = arctan_small(p - q, p + q)
        else:
            rest = real_neg(arctan_small(q - p, p + q))
        return real_add(real_shift(pi(), -2), rest)
    return real_sub(real_shift(pi(), -1), arctan_small(q, p))


def arctan(x: Real) -> Real:
    """arctan on the whole real line; it is 1-Lipschitz."""

    def approx(k):
        return _arctan_dyadic(x.at(k - 1)).at(k - 1)

    return Real(approx)


# -- square root ---------------------------------------------------------------


@dataclass(frozen=True)
class SqrtState:
    """One state of the digit-by-digit square root of ``a``.

    ``s / 2**(n+1)`` approximates ``sqrt(a)`` and ``r`` is the scaled
    remainder: ``s*s + 4*r == 4 * 4**n * a``.
    """

    r: Dyadic
    s: Dyadic
    n: int = 0

    @classmethod
    def initial(cls, a) -> "SqrtState":
        return cls(Dyadic.coerce(a), ZERO, 0)

    def estimate(self) -> Dyadic:
        return dy_shiftl(self.s, -(self.n + 1))


_TWO = Dyadic(2)


def sqrt_step(st: SqrtState, a=None) -> SqrtState:
    """Produce one more binary digit.

    ``a`` is accepted for symmetry with the invariants; the step itself only
    depends on ``(r, s)``.
    """
    r, s = st.r, st.s
    s1 = dy_add(s, ONE)
    if s1 <= r:
        return SqrtState(dy_shiftl(dy_sub(r, s1), 2), dy_shiftl(dy_add(s, _TWO), 1), st.n + 1)
    return SqrtState(dy_shiftl(r, 2), dy_shiftl(s, 1), st.n + 1)


def sqrt_loop(a, n: int) -> SqrtState:
    st = SqrtState.initial(a)
    for _ in range(n):
        st = sqrt_step(st)
    return st


def _wolfram_sqrt(a: Dyadic, p: int) -> Dyadic:
    # valid for 1/4 <= a <= 4; error <= 2**(3-n) after n steps
    n = max(0, 3 - p)
    return sqrt_loop(a, n).estimate()


_QUARTER = Dyadic(1, -2)
_FOUR = Dyadic(4)


def sqrt_in_1_4(a, p: int) -> Dyadic:
    """``sqrt(a)`` to within ``2**p`` for ``1 <= a <= 4``.

    After ``n`` steps ``a - (s/2**(n+1))**2 = r / 4**n`` and ``r <= 2**(3+n)``,
    so the estimate is off by at most ``2**(3-n)``; ``n = 3 - p`` steps
    suffice.
    """
    a = Dyadic.coerce(a)
    if not (ONE <= a <= _FOUR):
        raise DomainError(f"sqrt_in_1_4 needs 1 <= a <= 4, got {a.to_decimal()}")
    return _wolfram_sqrt(a, p)


def sqrt(x: Real, w: int) -> Real:
    """Square root given the witness ``2**w <= x``.

    ``x`` is scaled by an exact power of four into ``[1/4, 4]``, where the
    digit loop converges and sqrt is 1-Lipschitz, then scaled back.
    """
    scale = None

    def setup():
        c = x.at(w - 3)
        if dy_add(c, Dyadic(1, w - 3)) < Dyadic(1, w):
            raise DomainError(f"witness 2^{w} <= x is violated (x ~ {c.to_decimal()})")
        # 2**t <= c < 2**(t+1) and c/4**j lies in [1/2, 2); x is within c/8 of c
        t = qdlog2(c)
        return (t + 1) // 2

    def approx(k):
        nonlocal scale
        if scale is None:
            scale = setup()
        j = scale
        y = _clamp(dy_shiftl(x.at(k - j - 1 + 2 * j), -2 * j), _QUARTER, _FOUR)
        return dy_shiftl(_wolfram_sqrt(y, k - j - 1), j)

    return Real(approx)
