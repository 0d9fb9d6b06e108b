"""Exact-rational reference computations for testing.

Nothing here is fast, and nothing here calls into the approximation
machinery: partial sums are formed in :class:`fractions.Fraction`, and the
golden digit strings are static assets produced by ``scripts/make_golden.py``
with independent integer algorithms (a pi spigot, the factorial series for
e, an integer square root for sqrt 2).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import islice

from .dyadic import Dyadic

Rational = Fraction

GOLDEN_NAMES = ("pi", "e", "sqrt2")


def as_fraction(v) -> Fraction:
    if isinstance(v, Dyadic):
        return Fraction(v.mant) * Fraction(2) ** v.expo
    return Fraction(v)


def oracle_partial_sums(num, den, k: int, sign0: int = 1) -> list[Fraction]:
    """Exact partial sums ``S_0 .. S_k`` of ``sign0 * sum (-1)**i num_i/den_i``."""
    sums = [Fraction(0)]
    for i, (n, d) in enumerate(islice(zip(num, den), k)):
        d = as_fraction(d)
        if d == 0:
            raise ZeroDivisionError(f"denominator {i} is zero")
        term = as_fraction(n) / d
        sums.append(sums[-1] + (term if i % 2 == 0 else -term) * sign0)
    return sums


def oracle_alt_sum_bracket(num, den, k: int, sign0: int = 1) -> tuple[Fraction, Fraction]:
    """``(S_k, S_{k+1})``; for an admissible series the limit lies between them."""
    sums = oracle_partial_sums(num, den, k + 1, sign0)
    return sums[k], sums[k + 1]


def bracket_interval(bracket) -> tuple[Fraction, Fraction]:
    lo, hi = bracket
    return (lo, hi) if lo <= hi else (hi, lo)


def distance_to_interval(x, interval) -> Fraction:
    x = as_fraction(x)
    lo, hi = interval
    if x < lo:
        return lo - x
    if x > hi:
        return x - hi
    return Fraction(0)


@lru_cache(maxsize=None)
def digits_file(name: str) -> str:
    """Golden decimal expansion (truncated, with the decimal point)."""
    if name not in GOLDEN_NAMES:
        raise KeyError(f"no golden digits for {name!r}")
    text = resources.files("exactreals").joinpath("data", f"{name}.txt").read_text()
    header, digits = text.split("\n", 2)[:2]
    tag, count = header.split()
    if tag != name or not count.startswith("digits="):
        raise ValueError(f"malformed digit asset header: {header!r}")
    n = int(count[len("digits="):])
    if len(digits.split(".")[1]) != n:
        raise ValueError(f"{name}: header says {n} digits, found a different count")
    return digits


def decimal_to_scaled(text: str, places: int) -> int:
    """``text`` (a decimal string) times ``10**places``, truncated."""
    neg = text.startswith("-")
    whole, _, frac = text.lstrip("+-").partition(".")
    frac = (frac + "0" * places)[:places]
    n = int(whole or "0") * 10**places + int(frac or "0")
    return -n if neg else n


def agrees_with_golden(candidate: str, name: str, places: int, guard: int = 20) -> bool:
    """True when ``candidate`` (``places`` decimals) lies within ``10**-places``
    of the golden value.

    The golden value is read to ``places + guard`` decimals; truncating it
    there loses less than one unit in that last place, which the comparison
    allows for.
    """
    golden = digits_file(name)
    available = len(golden.split(".")[1])
    if available < places:
        raise ValueError(f"golden {name} has fewer than {places} digits")
    guard = min(guard, available - places)
    cand = decimal_to_scaled(candidate, places) * 10**guard
    truth = decimal_to_scaled(golden, places + guard)
    # truth <= exact < truth + 1, all in units of 10**-(places + guard)
    return truth - 10**guard <= cand <= truth + 10**guard
