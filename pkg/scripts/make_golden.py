"""Regenerate the golden digit assets in src/exactreals/data/.

Each constant is produced by a pure-integer method that shares no code with
the library, then cross-checked against mpmath before anything is written:

* pi    -- Gibbons' unbounded spigot (the classic pidigits benchmark);
* e     -- the series sum 1/i! in fixed-point integer arithmetic;
* sqrt2 -- math.isqrt(2 * 10**(2N)).

Digits are truncated, never rounded.  Run from the repository root:

    python3 scripts/make_golden.py [N]
"""

import itertools
import math
import sys
from pathlib import Path

import mpmath

OUT = Path(__file__).resolve().parent.parent / "src" / "exactreals" / "data"


def pi_spigot(n):
    def compose(a, b):
        aq, ar, as_, at = a
        bq, br, bs, bt = b
        return (aq * bq, aq * br + ar * bt, as_ * bq + at * bs, as_ * br + at * bt)

    def extract(z, j):
        q, r, s, t = z
        return (q * j + r) // (s * j + t)

    z = (1, 0, 0, 1)
    xs = ((k, 4 * k + 2, 0, 2 * k + 1) for k in itertools.count(1))
    out = []
    while len(out) < n + 1:
        y = extract(z, 3)
        while y != extract(z, 4):
            z = compose(z, next(xs))
            y = extract(z, 3)
        z = compose((10, -10 * y, 0, 1), z)
        out.append(str(y))
    return out[0] + "." + "".join(out[1:])


def e_series(n):
    guard = 20
    one = 10 ** (n + guard)
    total, term, i = 0, one, 0
    while term:
        total += term
        i += 1
        term //= i
    digits = str(total // 10**guard)
    return digits[0] + "." + digits[1:]


def sqrt2_isqrt(n):
    digits = str(math.isqrt(2 * 10 ** (2 * n)))
    return digits[0] + "." + digits[1:]


def mp_digits(value, n):
    s = mpmath.nstr(value, n + 30, strip_zeros=False)
    return s[: n + 2]


def main(n=3200):
    mpmath.mp.dps = n + 50
    table = {
        "pi": (pi_spigot(n), mp_digits(mpmath.pi, n)),
        "e": (e_series(n), mp_digits(mpmath.e, n)),
        "sqrt2": (sqrt2_isqrt(n), mp_digits(mpmath.sqrt(2), n)),
    }
    for name, (ours, check) in table.items():
        if ours[: n + 2] != check:
            raise SystemExit(f"{name}: generator and mpmath disagree")
        path = OUT / f"{name}.txt"
        path.write_text(f"{name} digits={n}\n{ours[: n + 2]}\n")
        print(f"wrote {path} ({n} digits)")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 3200)
