"""Exact Chern numbers of complete intersection threefolds, corner points and edge lines.

A degree tuple ``(d_1, ..., d_n)`` with ``d_i >= 1`` stands for the threefold cut
out of P^{n+3} by hypersurfaces of degrees ``d_i + 1``.  Everything here is exact:
rationals are :class:`fractions.Fraction`, which is kept in canonical form
(positive denominator, coprime terms) by construction.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from .errors import InvalidIndex, InvariantBreach, ParseError

Rational = Fraction
RatioPoint = tuple[Fraction, Fraction]

#: Tag for the limit corner p_inf and the limit line L_inf.
INF = math.inf

CornerIndex = Union[int, float]

HALF = Fraction(1, 2)
SIXTH = Fraction(1, 6)


def as_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction.

    Floats are rejected: they would smuggle rounding into exact code paths.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"refusing non-exact value {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    text = str(value).strip()
    try:
        num, sep, den = text.partition("/")
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational {value!r}") from exc


def fmt_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"`` (``"p"`` when integral)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def fmt_decimal(q: Fraction, digits: int = 6) -> str:
    """Display-only decimal rendering with ``digits`` significant digits."""
    return f"{float(q):.{digits}g}"


def is_canonical(q) -> bool:
    if isinstance(q, int):
        return True
    return (isinstance(q, Fraction) and q.denominator > 0
            and math.gcd(q.numerator, q.denominator) == 1)


@dataclass(frozen=True, order=True)
class DegreeTuple:
    """Canonical (sorted) multiset of excess degrees ``d_i >= 1``."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(sorted(int(p) for p in parts))
        if not parts:
            raise ValueError("a degree tuple needs at least one part")
        if parts[0] < 1:
            raise ValueError(f"parts must be >= 1, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def _sorted(cls, parts: tuple[int, ...]) -> "DegreeTuple":
        # caller guarantees parts are sorted ints >= 1
        self = object.__new__(cls)
        object.__setattr__(self, "parts", parts)
        return self

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def s1(self) -> int:
        return sum(self.parts)

    @property
    def ample(self) -> bool:
        return self.s1 >= 5

    def label(self) -> str:
        return ";".join(map(str, self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"DegreeTuple({self.parts})"


class PowerSums(NamedTuple):
    s1: Fraction
    s2: Fraction
    s3: Fraction


def power_sums_of(parts: Iterable) -> PowerSums:
    """Power sums of arbitrary exact numbers (ints or Fractions)."""
    s1 = s2 = s3 = 0
    for d in parts:
        d2 = d * d
        s1 += d
        s2 += d2
        s3 += d2 * d
    return PowerSums(s1, s2, s3)


def power_sums(t: DegreeTuple) -> PowerSums:
    return power_sums_of(t.parts)


def chern_classes(s1, s2, s3):
    """``(c1, c2, c3)`` as expressions in the power sums.

    Only ring operations and multiplication by Fraction constants are used, so
    the same code evaluates numbers and builds polynomials.
    """
    c1 = 4 - s1
    sq = s1 * s1 + s2
    c2 = sq * HALF - 3 * (s1 - 2)
    c3 = -(s1 * s1 * s1 + 3 * s1 * s2 + 2 * s3) * SIXTH + sq - 3 * s1 + 4
    return c1, c2, c3


@dataclass(frozen=True)
class ChernData:
    c1: Fraction
    c2: Fraction
    c3: Fraction
    c1_cubed: Fraction
    c1c2: Fraction
    x: Fraction
    y: Fraction

    @property
    def point(self) -> RatioPoint:
        return (self.x, self.y)

    def functional(self, lam, mu, nu) -> Fraction:
        """``lam*c1^3 + mu*c1c2 + nu*c3``."""
        return lam * self.c1_cubed + mu * self.c1c2 + nu * self.c3


def _integral(v) -> bool:
    return isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)


def chern_numbers(s: PowerSums) -> ChernData:
    if all(_integral(v) for v in s):
        # integer power sums give integer Chern numbers; the divisions are exact
        s1, s2, s3 = (int(v) for v in s)
        sq = s1 * s1 + s2
        c1 = 4 - s1
        c2 = sq // 2 - 3 * (s1 - 2)
        c3 = -((s1 * s1 * s1 + 3 * s1 * s2 + 2 * s3) // 6) + sq - 3 * s1 + 4
        c1_cubed = c1 * c1 * c1
        c1c2 = c1 * c2
        if c1c2 == 0:
            raise InvariantBreach(f"c1*c2 vanishes for power sums {tuple(s)}")
        return ChernData(Fraction(c1), Fraction(c2), Fraction(c3), Fraction(c1_cubed),
                         Fraction(c1c2), Fraction(c1_cubed, c1c2), Fraction(c3, c1c2))
    c1, c2, c3 = chern_classes(*(Fraction(v) for v in s))
    c1_cubed = c1 ** 3
    c1c2 = c1 * c2
    if c1c2 == 0:
        raise InvariantBreach(f"c1*c2 vanishes for power sums {tuple(s)}")
    return ChernData(c1, c2, c3, c1_cubed, c1c2, c1_cubed / c1c2, c3 / c1c2)


def chern_of(t: DegreeTuple | Iterable[int]) -> ChernData:
    if not isinstance(t, DegreeTuple):
        t = DegreeTuple(t)
    return chern_numbers(power_sums(t))


def chern_numbers_equal(n: int, d) -> ChernData:
    """Chern data of the equal-degree instance: n parts all equal to ``d``."""
    d = as_rational(d)
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    return chern_numbers(PowerSums(n * d, n * d ** 2, n * d ** 3))


# --- corners --------------------------------------------------------------

# Coordinates of the sporadic corners; coordinates are authoritative.
_SPORADIC_CORNERS: dict[int, RatioPoint] = {
    1: (Fraction(1, 16), Fraction(43, 8)),
    2: (Fraction(1, 10), Fraction(19, 5)),
    3: (Fraction(1, 8), Fraction(13, 4)),
    4: (Fraction(1, 6), Fraction(8, 3)),
    5: (Fraction(1, 3), Fraction(23, 12)),
}

_SPORADIC_WITNESSES: dict[int, DegreeTuple] = {
    1: DegreeTuple((5,)),
    2: DegreeTuple((2, 3)),
    3: DegreeTuple((1, 2, 2)),
    4: DegreeTuple((1, 1, 1, 1, 1)),
    5: DegreeTuple((2, 2, 2)),
}

P_INF: RatioPoint = (Fraction(2), Fraction(1, 3))


def all_ones_point(n: int) -> RatioPoint:
    """Closed-form ratio point of the tuple ``(1,)*n``, n >= 5."""
    if n < 5:
        raise InvalidIndex(f"closed form needs n >= 5, got {n}")
    q = n * n - 5 * n + 12
    x = Fraction(2 * (n - 4) ** 2, q)
    y = Fraction(n ** 3 - 3 * n ** 2 + 14 * n - 24, 3 * (n - 4) * q)
    return (x, y)


def _check_index(m) -> None:
    if m == INF:
        return
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidIndex(f"corner index must be an integer >= 1 or INF, got {m!r}")


def corner(m: CornerIndex) -> RatioPoint:
    """Corner ``p_m`` of the hull; ``corner(INF)`` is the limit point."""
    _check_index(m)
    if m == INF:
        return P_INF
    if m <= 5:
        return _SPORADIC_CORNERS[m]
    return all_ones_point(m)


def corner_witness(m: int) -> DegreeTuple:
    """A degree tuple realizing ``corner(m)``."""
    _check_index(m)
    if m == INF:
        raise InvalidIndex("the limit corner has no witness tuple")
    if m <= 5:
        return _SPORADIC_WITNESSES[m]
    return DegreeTuple((1,) * m)


# --- lines ----------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    """``y = k*x + b``."""

    k: Fraction
    b: Fraction

    @classmethod
    def through(cls, p: RatioPoint, q: RatioPoint) -> "Line":
        if p[0] == q[0]:
            raise ValueError(f"vertical line through {p} and {q}")
        k = (q[1] - p[1]) / (q[0] - p[0])
        return cls(k, p[1] - k * p[0])

    def at(self, x) -> Fraction:
        return self.k * x + self.b


def _closed_form_line(m: int) -> Line:
    den = (m - 4) * (m - 3) * (3 * m * m - 5 * m - 20)
    k = Fraction(-28 * m + m ** 2 + 4 * m ** 3 - m ** 4, den)
    b = Fraction(-120 + 254 * m + 3 * m ** 2 - 50 * m ** 3 + 9 * m ** 4, 3 * den)
    return Line(k, b)


LINE_INF = Line(Fraction(-1, 3), Fraction(1))


def edge_line(m: CornerIndex) -> Line:
    """``L_{p_1 p_inf}`` for m = 0, ``L_{p_m p_{m+1}}`` for m >= 1, ``L_inf`` for INF."""
    if m == INF:
        return LINE_INF
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise InvalidIndex(f"line index must be 0, a positive integer or INF, got {m!r}")
    if m == 0:
        return Line.through(corner(1), P_INF)
    if m <= 5:
        return Line.through(corner(m), corner(m + 1))
    return _closed_form_line(m)


class Side(enum.Enum):
    ABOVE = "above"
    ON = "on"
    BELOW = "below"


def side_of_line(p: RatioPoint, line: Line) -> Side:
    diff = p[1] - line.at(p[0])
    if diff > 0:
        return Side.ABOVE
    if diff < 0:
        return Side.BELOW
    return Side.ON


# --- reference constants (tabulated values, checked against recomputation) ---

REFERENCE_LINES: dict[int, tuple[Fraction, Fraction]] = {
    0: (Fraction(-242, 93), Fraction(515, 93)),
    1: (Fraction(-42), Fraction(8)),
    2: (Fraction(-22), Fraction(6)),
    3: (Fraction(-14), Fraction(5)),
    4: (Fraction(-9, 2), Fraction(41, 12)),
    5: (Fraction(-13, 5), Fraction(3)),
}

# (label string, tuple read literally from the label)
REFERENCE_CORNER_LABELS: dict[int, tuple[str, tuple[int, ...]]] = {
    1: ("Q(1;5)", (5,)),
    2: ("Q(2;2,3)", (2, 3)),
    3: ("Q(3;2,3,3)", (2, 3, 3)),
    4: ("Q(5;1,1,1,1,1)", (1, 1, 1, 1, 1)),
    5: ("Q(3;2,2,2)", (2, 2, 2)),
}


def _witnesses_for(point: RatioPoint, s1_max: int = 12) -> list[DegreeTuple]:
    from .enumeration import partitions

    return [t for s1 in range(5, s1_max + 1) for t in partitions(s1)
            if chern_of(t).point == point]


def reference_discrepancies() -> list[dict]:
    """Compare the reference tables against recomputation.

    Returns one record per disagreement; each record carries the printed and
    recomputed values as exact strings.
    """
    found = []
    for m, (label, literal) in REFERENCE_CORNER_LABELS.items():
        printed = corner(m)
        literal_point = chern_of(literal).point
        if literal_point != printed:
            found.append({
                "id": f"corner_label_p{m}",
                "kind": "corner_label",
                "index": m,
                "label": label,
                "printed_point": [fmt_rational(v) for v in printed],
                "label_tuple_point": [fmt_rational(v) for v in literal_point],
                "witnesses": [t.label() for t in _witnesses_for(printed)],
                "resolution": "coordinates kept, label flagged",
            })
    for m, (k, b) in REFERENCE_LINES.items():
        line = edge_line(m)
        if (line.k, line.b) != (k, b):
            found.append({
                "id": f"line_coefficients_{m}",
                "kind": "line_coefficients",
                "index": m,
                "printed": [fmt_rational(k), fmt_rational(b)],
                "recomputed": [fmt_rational(line.k), fmt_rational(line.b)],
                "printed_passes_through": [
                    side_of_line(corner(j), Line(k, b)) is Side.ON for j in (m, m + 1)
                ] if m >= 1 else None,
                "resolution": "recomputed line through the corners is used",
            })
    return found
