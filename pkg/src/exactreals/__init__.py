"""Exact real arithmetic over dyadic rationals.

Reals are regular approximation functions; transcendental functions are
summed as alternating series with power-of-two error budgets.

>>> from exactreals import pi
>>> pi().to_decimal(20)
'3.14159265358979323846'
"""

from .approx import DYADIC, RATIONAL, AppRationalsOps, app_approx, app_div, int_embed, qdlog2
from .completion import (
    Real,
    UcFun,
    ball,
    bind,
    compress,
    map2,
    real_add,
    real_from_rational,
    real_inv,
    real_mul,
    real_neg,
    real_pow,
    real_shift,
    real_sub,
    real_to_decimal,
    unit,
)
from .dyadic import Dyadic, Ordering, canonicalize, dy_compare, dy_to_rational, parse_dyadic
from .elementary import (
    SqrtState,
    arctan,
    arctan_small,
    exp,
    exp_small,
    machin_pi,
    pi,
    sqrt,
    sqrt_in_1_4,
    sqrt_loop,
    sqrt_step,
)
from .errors import DivisionByZero, DomainError
from .expr import evaluate, parse
from .series import AltSeries, Stream, factorials, find_cutoff, odds, powers, sum_alternating

__version__ = "0.1.0"
