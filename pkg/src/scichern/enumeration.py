"""Enumeration of admissible degree tuples and the equal-degree reduction oracle."""
from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .chern_core import (
    ChernData,
    DegreeTuple,
    chern_numbers,
    chern_numbers_equal,
    power_sums,
    power_sums_of,
)
from .errors import BudgetTooSmall


def _fixed_length(total: int, n: int, lo: int) -> Iterator[tuple[int, ...]]:
    # nondecreasing n-tuples >= lo summing to total, lexicographic
    if n == 1:
        if total >= lo:
            yield (total,)
        return
    for first in range(lo, total // n + 1):
        for rest in _fixed_length(total - first, n - 1, first):
            yield (first,) + rest


def partitions(s1: int) -> Iterator[DegreeTuple]:
    """Every partition of ``s1`` exactly once, ordered by length then lexicographically."""
    if s1 < 1:
        raise ValueError(f"s1 must be >= 1, got {s1}")
    for n in range(1, s1 + 1):
        for parts in _fixed_length(s1, n, 1):
            yield DegreeTuple._sorted(parts)


@dataclass(frozen=True)
class PointCloud:
    s1_max: int
    entries: tuple[tuple[DegreeTuple, ChernData], ...]
    _by_point: dict = field(default=None, repr=False, compare=False)
    _ints: list = field(default=None, repr=False, compare=False)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def points(self) -> list:
        return [ch.point for _, ch in self.entries]

    def witnesses(self) -> dict:
        """Ratio point -> all tuples realizing it (in enumeration order)."""
        if self._by_point is None:
            by_point: dict = {}
            for t, ch in self.entries:
                by_point.setdefault(ch.point, []).append(t)
            object.__setattr__(self, "_by_point", by_point)
        return self._by_point

    def integer_chern(self) -> list[tuple[int, int, int]]:
        """``(c1^3, c1c2, c3)`` as plain ints (integer tuples give integer Chern numbers)."""
        if self._ints is None:
            ints = [(ch.c1_cubed.numerator, ch.c1c2.numerator, ch.c3.numerator)
                    for _, ch in self.entries]
            object.__setattr__(self, "_ints", ints)
        return self._ints

    def restrict(self, lo: int, hi: int) -> list[tuple[DegreeTuple, ChernData]]:
        return [(t, ch) for t, ch in self.entries if lo <= t.s1 <= hi]


@functools.lru_cache(maxsize=8)
def enumerate_points(s1_max: int) -> PointCloud:
    if s1_max < 5:
        raise BudgetTooSmall(f"s1_max must be >= 5, got {s1_max}")
    entries = []
    for s1 in range(5, s1_max + 1):
        for t in partitions(s1):
            entries.append((t, chern_numbers(power_sums(t))))
    return PointCloud(s1_max, tuple(entries))


@dataclass(frozen=True)
class ReductionProblem:
    m: int
    lam: Fraction
    mu: Fraction
    nu: Fraction

    def value(self, ch: ChernData) -> Fraction:
        return ch.functional(self.lam, self.mu, self.nu)


@dataclass(frozen=True)
class ReductionResult:
    holds: bool
    integer_min: Fraction
    equal_degree_min: Fraction
    integer_witness: DegreeTuple
    equal_degree_witness: tuple[int, Fraction]  # (n, d)


def reduction_checks(m: int, funcs) -> list[ReductionResult]:
    """Run :func:`reduction_check` for several ``(lam, mu, nu)`` at once.

    Chern data of each partition is computed a single time.
    """
    if m < 5:
        raise ValueError(f"m must be >= 5, got {m}")
    funcs = [tuple(Fraction(c) for c in f) for f in funcs]
    # clear denominators so the partition scan runs on plain ints
    scales = [math.lcm(*(c.denominator for c in f)) for f in funcs]
    ifuncs = [tuple(int(c * k) for c in f) for f, k in zip(funcs, scales)]
    int_min: list = [None] * len(funcs)
    int_wit: list = [None] * len(funcs)
    for t in partitions(m):
        ch = chern_numbers(power_sums(t))
        a, b, c = ch.c1_cubed.numerator, ch.c1c2.numerator, ch.c3.numerator
        for i, (lam, mu, nu) in enumerate(ifuncs):
            v = lam * a + mu * b + nu * c
            if int_min[i] is None or v < int_min[i]:
                int_min[i], int_wit[i] = v, t
    int_min = [Fraction(v, k) for v, k in zip(int_min, scales)]
    eq = [(n, chern_numbers_equal(n, Fraction(m, n))) for n in range(1, m + 1)]
    out = []
    for i, (lam, mu, nu) in enumerate(funcs):
        eq_min, eq_wit = None, None
        for n, ch in eq:
            v = ch.functional(lam, mu, nu)
            if eq_min is None or v < eq_min:
                eq_min, eq_wit = v, (n, Fraction(m, n))
        out.append(ReductionResult(int_min[i] >= eq_min, int_min[i], eq_min,
                                   int_wit[i], eq_wit))
    return out


def reduction_check(p: ReductionProblem) -> ReductionResult:
    """Compare the functional's minimum over integer partitions of ``p.m`` with
    its minimum over equal-degree instances ``n*d = m``."""
    return reduction_checks(p.m, [(p.lam, p.mu, p.nu)])[0]


def sample_real_tuples(m: int, count: int, seed: int, *,
                       bits: int = 16) -> list[tuple[Fraction, ...]]:
    """Random dyadic tuples with every part >= 1 and sum exactly ``m``.

    The number of parts is drawn uniformly from ``1..m``; the slack ``m - n`` is
    split at ``n - 1`` sorted dyadic cut points.
    """
    rng = random.Random(f"{seed}:{m}")
    scale = 1 << bits
    out = []
    for _ in range(count):
        n = rng.randint(1, m)
        slack = (m - n) * scale
        cuts = sorted(rng.randint(0, slack) for _ in range(n - 1))
        bounds = [0, *cuts, slack]
        out.append(tuple(1 + Fraction(hi - lo, scale) for lo, hi in zip(bounds, bounds[1:])))
    return out


def sampled_value(p: ReductionProblem, parts) -> Fraction:
    return p.value(chern_numbers(power_sums_of(parts)))
