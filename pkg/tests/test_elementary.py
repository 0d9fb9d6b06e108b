import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactreals.completion import real_from_rational, real_mul, real_to_decimal, unit
from exactreals.dyadic import ONE, ZERO, Dyadic, dy_to_rational
from exactreals.elementary import (
    SqrtState,
    _wolfram_sqrt,
    arctan,
    arctan_small,
    exp,
    exp_small,
    exp_small_dyadic,
    machin_pi,
    pi,
    sqrt,
    sqrt_in_1_4,
    sqrt_loop,
    sqrt_step,
)
from exactreals.errors import DomainError
from exactreals.oracle import agrees_with_golden, bracket_interval, distance_to_interval, oracle_alt_sum_bracket

mp = mpmath.mp.clone()
mp.dps = 80


def q(x):
    return dy_to_rational(x)


def mp_fraction(v) -> Fraction:
    """An mpf as an exact Fraction (its binary value, no rounding)."""
    v = mp.mpf(v)
    m, e = v.man_exp  # man_exp drops the sign
    return (-1 if v < 0 else 1) * Fraction(m) * Fraction(2) ** e


def within(x, expected, k, slack=Fraction(0)):
    return abs(q(x.at(k)) - mp_fraction(expected)) <= Fraction(2) ** k + slack


TINY = Fraction(1, 2**250)  # mpmath rounding at 80 digits


# -- exp ---------------------------------------------------------------------------


def test_exp_small_examples():
    assert within(exp_small(unit(ZERO)), 1, -60, TINY)
    assert within(exp_small(unit(Dyadic(-1))), mp.exp(-1), -60, TINY)
    assert within(exp_small(real_from_rational(Fraction(-1, 2))), mp.exp(-0.5), -60, TINY)
    with pytest.raises(DomainError):
        exp_small_dyadic(Dyadic(1, -1))
    with pytest.raises(DomainError):
        exp_small_dyadic(Dyadic(-3, -1))


def test_exp_small_dyadic_matches_bracket():
    a = Dyadic(-5, -3)
    k = -100
    got = exp_small_dyadic(a).at(k)
    nums = [Fraction(5, 8) ** i for i in range(60)]
    dens = [1]
    for i in range(1, 60):
        dens.append(dens[-1] * i)
    interval = bracket_interval(oracle_alt_sum_bracket(nums, dens, 50))
    assert interval[1] - interval[0] < Fraction(1, 2**120)
    assert distance_to_interval(got, interval) <= Fraction(2) ** k


def test_exp_examples():
    assert within(exp(unit(ZERO)), 1, -80, TINY)
    assert real_to_decimal(exp(unit(ONE)), 15) == "2.718281828459045"
    assert agrees_with_golden(real_to_decimal(exp(unit(ONE)), 200), "e", 200)
    assert within(exp(real_from_rational(Fraction(-7, 3))), mp.exp(mp.mpf(-7) / 3), -100, TINY)
    assert within(exp(unit(Dyadic(10))), mp.exp(10), -60, TINY)


def test_exp_tower():
    x = exp(exp(exp(real_from_rational(Fraction(1, 2)))))
    assert real_to_decimal(x, 25) == "181.3313036085456935150575745"


@given(st.integers(-(2**20), 2**20), st.integers(-(2**20), 2**20))
@settings(max_examples=25, deadline=None)
def test_exp_is_additive(a, b):
    x, y = unit(Dyadic(a, -17)), unit(Dyadic(b, -17))
    lhs = exp(x + y)
    rhs = real_mul(exp(x), exp(y))
    k = -60
    assert abs(q(lhs.at(k)) - q(rhs.at(k))) <= 2 * Fraction(2) ** k


@given(st.integers(-(2**22), 2**22))
@settings(max_examples=25, deadline=None)
def test_exp_doubling(a):
    x = unit(Dyadic(a, -20))
    half = exp(x >> 1)
    k = -60
    assert abs(q(exp(x).at(k)) - q((half * half).at(k))) <= 2 * Fraction(2) ** k


def test_exp_is_monotone_at_20_digits():
    xs = sorted({Fraction(random.Random(i).randint(-4000, 4000), 1000) for i in range(30)})
    vals = [Fraction(real_to_decimal(exp(real_from_rational(v)), 20)) for v in xs]
    assert vals == sorted(vals)


# -- arctan and pi -----------------------------------------------------------------


def test_arctan_small_examples():
    assert arctan_small(0, 1).at(-50) == 0
    assert within(arctan_small(1, 57), mp.atan(mp.mpf(1) / 57), -120, TINY)
    assert within(arctan_small(1, 2), mp.atan(0.5), -120, TINY)
    with pytest.raises(DomainError):
        arctan_small(1, 1)
    with pytest.raises(DomainError):
        arctan_small(-1, 3)


def test_arctan_small_matches_bracket():
    got = arctan_small(1, 239).at(-150)
    nums = [Fraction(1)] * 30
    dens = [239 ** (2 * i + 1) * (2 * i + 1) for i in range(30)]
    interval = bracket_interval(oracle_alt_sum_bracket(nums, dens, 25))
    assert distance_to_interval(got, interval) <= Fraction(2) ** -150


@pytest.mark.parametrize("v", ["0", "1/3", "-1/2", "1", "-1", "7/3", "-100", "1000001/1000"])
def test_arctan_against_mpmath(v):
    r = Fraction(v)
    want = mp.atan(mp.mpf(r.numerator) / r.denominator)
    assert within(arctan(real_from_rational(r)), want, -150, TINY)


def test_arctan_pi():
    assert real_to_decimal(arctan(pi()), 25) == mpmath.nstr(
        mp.atan(mp.pi), 26, strip_zeros=False, min_fixed=-1, max_fixed=2)


def test_pi_digits():
    assert real_to_decimal(pi(), 10) == "3.1415926536"
    assert agrees_with_golden(real_to_decimal(machin_pi(), 300), "pi", 300)
    assert pi() is pi()


# -- square root -------------------------------------------------------------------


def test_sqrt_step_traces():
    trace = [SqrtState.initial(2)]
    for _ in range(2):
        trace.append(sqrt_step(trace[-1]))
    assert [(q(t.r), q(t.s)) for t in trace] == [(2, 0), (4, 4), (16, 8)]
    st4 = sqrt_step(SqrtState.initial(4))
    assert (q(st4.r), q(st4.s), st4.n) == (12, 4, 1)
    assert sqrt_step(trace[0], 2) == trace[1]


def check_invariants(a: Dyadic, steps: int):
    st = SqrtState.initial(a)
    qa = q(a)
    for n in range(steps + 1):
        assert st.n == n
        r, s = q(st.r), q(st.s)
        assert s * s + 4 * r == 4 * 4**n * qa
        assert 0 <= r <= 2 * s + 4
        assert r <= Fraction(2) ** (3 + n)
        st = sqrt_step(st)


@given(st.integers(1 << 20, 4 << 20))
@settings(max_examples=30)
def test_sqrt_invariants(m):
    check_invariants(Dyadic(m, -20), 200)


def test_sqrt_invariants_long_run():
    check_invariants(Dyadic(3), 1000)


def test_sqrt_in_1_4():
    # the digit recurrence approaches from below, even on perfect squares
    assert 2 - Fraction(2) ** -40 <= q(sqrt_in_1_4(4, -40)) <= 2
    assert 1 - Fraction(2) ** -40 <= q(sqrt_in_1_4(1, -40)) <= 1
    two = sqrt_in_1_4(2, -60)
    assert abs(q(two) - mp_fraction(mp.sqrt(2))) <= Fraction(2) ** -60
    for bad in (Dyadic(1, -3), Dyadic(5)):
        with pytest.raises(DomainError):
            sqrt_in_1_4(bad, -10)


@given(st.integers(1 << 30, 16 << 30), st.integers(-200, 0))
@settings(max_examples=60)
def test_wolfram_sqrt_bound(m, p):
    a = Dyadic(m, -32)  # covers [1/4, 4]
    got = q(_wolfram_sqrt(a, p))
    # |got - sqrt(a)| <= 2^p  <=>  got^2 and a bracket each other appropriately
    lo, hi = got - Fraction(2) ** p, got + Fraction(2) ** p
    assert (lo <= 0 or lo * lo <= q(a)) and q(a) <= hi * hi


def test_sqrt_loop_long_run():
    st = sqrt_loop(2, 2000)
    assert agrees_with_golden(real_to_decimal(unit(st.estimate()), 590), "sqrt2", 590)


def test_sqrt_examples():
    assert real_to_decimal(sqrt(unit(Dyadic(4)), 0), 20) == "2." + "0" * 20
    assert agrees_with_golden(real_to_decimal(sqrt(unit(Dyadic(2)), 0), 100), "sqrt2", 100)
    half = sqrt(real_from_rational(Fraction(1, 2)), -2)
    assert real_to_decimal(half, 37) == "0.7071067811865475244008443621048490393"
    big = sqrt(unit(Dyadic(10**40)), 100)
    assert real_to_decimal(big, 5) == "100000000000000000000.00000"


def test_sqrt_refuses_false_witness():
    with pytest.raises(DomainError):
        sqrt(real_from_rational(Fraction(1, 1000)), 0).at(-10)
    with pytest.raises(DomainError):
        sqrt(unit(Dyadic(-4)), 1).at(-10)
