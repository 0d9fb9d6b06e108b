"""Lazy streams and summation of alternating series with approximate division.

An alternating series is given by two streams, numerators ``n_i`` and
denominators ``d_i``, whose quotients ``n_i / d_i`` are non-negative,
decreasing and tend to zero.  Keeping the two streams apart means no
division is performed until the precision it needs is known.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Iterator

from .approx import app_div
from .completion import Real
from .dyadic import ONE, ZERO, Dyadic, dy_abs, dy_add, dy_mul, dy_neg

__all__ = [
    "Stream",
    "powers",
    "factorials",
    "odds",
    "AltSeries",
    "find_cutoff",
    "sum_alternating",
]

_UNFORCED = object()


class Stream:
    """An infinite cons-stream whose tail is computed once, on demand.

    Forcing is guarded by a per-cell lock so concurrent readers see the same
    cells.
    """

    __slots__ = ("head", "_thunk", "_tail", "_lock")

    def __init__(self, head, tail: Callable[[], "Stream"]):
        self.head = head
        self._thunk = tail
        self._tail = _UNFORCED
        self._lock = threading.Lock()

    @classmethod
    def cons(cls, head, tail: Callable[[], "Stream"]) -> "Stream":
        return cls(head, tail)

    @property
    def tail(self) -> "Stream":
        t = self._tail
        if t is _UNFORCED:
            with self._lock:
                if self._tail is _UNFORCED:
                    self._tail = self._thunk()
                    self._thunk = None
                t = self._tail
        return t

    def __getitem__(self, i: int):
        if i < 0:
            raise IndexError("streams are indexed from 0")
        s = self
        for _ in range(i):
            s = s.tail
        return s.head

    def __iter__(self) -> Iterator:
        s = self
        while True:
            yield s.head
            s = s.tail

    def take(self, n: int) -> list:
        out = []
        s = self
        for i in range(n):
            out.append(s.head)
            if i + 1 < n:
                s = s.tail
        return out

    @classmethod
    def iterate(cls, seed, step: Callable) -> "Stream":
        """``seed, step(seed), step(step(seed)), ...``"""
        return cls(seed, lambda: cls.iterate(step(seed), step))

    @classmethod
    def from_function(cls, f: Callable[[int], object], start: int = 0) -> "Stream":
        return cls(f(start), lambda: cls.from_function(f, start + 1))

    def map(self, f: Callable) -> "Stream":
        return Stream(f(self.head), lambda: self.tail.map(f))

    def zip_with(self, f: Callable, other: "Stream") -> "Stream":
        return Stream(f(self.head, other.head), lambda: self.tail.zip_with(f, other.tail))


def powers(a: Dyadic) -> Stream:
    """``1, a, a**2, ...`` with one multiplication per element."""
    a = Dyadic.coerce(a)
    return Stream.iterate(ONE, lambda c: dy_mul(c, a))


def factorials() -> Stream:
    def go(i, acc):
        return Stream(acc, lambda: go(i + 1, dy_mul(acc, Dyadic(i + 1))))

    return go(0, ONE)


def odds() -> Stream:
    return Stream.from_function(lambda i: Dyadic(2 * i + 1))


@dataclass(frozen=True)
class AltSeries:
    """Terms ``num[i] / den[i]``, summed with alternating signs."""

    num: Stream
    den: Stream

    def term_stream(self) -> Iterator[tuple[Dyadic, Dyadic]]:
        return zip(self.num, self.den)


def find_cutoff(s: AltSeries, k: int) -> int:
    """Least ``i`` such that ``|app_div(n_i, d_i, l) + 2**l| <= 2**(k-1)``
    where ``l = k - (i + 1)``.

    The quotient plus its slack bounds the ``i``-th term from above, so the
    tail from ``i`` on is at most ``2**(k-1)``.  Loops forever if the terms
    do not tend to zero.
    """
    half = Dyadic(1, k - 1)
    for i, (n, d) in enumerate(s.term_stream()):
        l = k - (i + 1)
        if dy_abs(dy_add(app_div(n, d, l), Dyadic(1, l))) <= half:
            return i
    raise AssertionError("unreachable: streams are infinite")


def sum_alternating(s: AltSeries, sign0: int = 1) -> Real:
    """The real ``sign0 * sum_i (-1)**i * n_i / d_i``.

    At precision ``2**k`` the partial sum stops at ``c = find_cutoff(s, k)``
    and every quotient is computed to ``2**l`` with ``l = k - (c + 1)``:
    the ``c`` division errors add up to at most ``2**(k-1)`` and the tail
    contributes at most another ``2**(k-1)``.
    """
    if sign0 not in (1, -1):
        raise ValueError("sign0 must be 1 or -1")

    def approx(k):
        c = find_cutoff(s, k)
        l = k - (c + 1)
        total = ZERO
        for i, (n, d) in zip(range(c), s.term_stream()):
            q = app_div(n, d, l)
            total = dy_add(total, q if i % 2 == 0 else dy_neg(q))
        return total if sign0 == 1 else dy_neg(total)

    return Real(approx)
