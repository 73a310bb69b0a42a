"""Exact planar convex hull of ratio points and comparison with the corner chain."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .chern_core import (
    ChernData,
    DegreeTuple,
    Line,
    RatioPoint,
    Side,
    all_ones_point,
    corner,
    corner_witness,
    edge_line,
)
from .enumeration import PointCloud
from .errors import BudgetMismatch


def cross(o: RatioPoint, a: RatioPoint, b: RatioPoint) -> Fraction:
    """Twice the signed area of (o, a, b); > 0 for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _homogeneous(p: RatioPoint) -> tuple[int, int, int]:
    # (X, Y, W) with W > 0 and p = (X/W, Y/W)
    x, y = p
    w = x.denominator * y.denominator
    return (x.numerator * y.denominator, y.numerator * x.denominator, w)


def _sort_key(p: RatioPoint):
    # integer floors decide almost every comparison; exact Fractions break ties
    x, y = p
    return ((x.numerator << 64) // x.denominator, x,
            (y.numerator << 64) // y.denominator, y)


def _orient(a, b, c) -> int:
    # sign of the 3x3 determinant; equals sign(cross) since every W > 0
    ax, ay, aw = a
    bx, by, bw = b
    cx, cy, cw = c
    det = (ax * (by * cw - bw * cy) - ay * (bx * cw - bw * cx)
           + aw * (bx * cy - by * cx))
    return (det > 0) - (det < 0)


def _half_chain(hs: Sequence[tuple[int, int, int]], order: Iterable[int]) -> list[int]:
    chain: list[int] = []
    for i in order:
        while len(chain) >= 2 and _orient(hs[chain[-2]], hs[chain[-1]], hs[i]) <= 0:
            chain.pop()
        chain.append(i)
    return chain


@dataclass(frozen=True)
class Hull:
    """Counterclockwise hull starting at the lexicographically smallest vertex.

    ``lower_chain`` runs left to right, ``upper_chain`` right to left; both
    include the two extreme vertices.
    """

    vertices: tuple[RatioPoint, ...]
    lower_chain: tuple[RatioPoint, ...]
    upper_chain: tuple[RatioPoint, ...]
    witnesses: Optional[dict] = field(default=None, compare=False, repr=False)
    s1_max: Optional[int] = field(default=None, compare=False)

    def contains(self, p: RatioPoint) -> bool:
        """Inside or on the boundary (exact)."""
        vs = self.vertices
        if len(vs) == 1:
            return p == vs[0]
        if len(vs) == 2:
            a, b = vs
            return (cross(a, b, p) == 0
                    and min(a, b) <= p <= max(a, b))
        return all(cross(vs[i], vs[(i + 1) % len(vs)], p) >= 0 for i in range(len(vs)))


def convex_hull(points: Iterable[RatioPoint]) -> Hull:
    """Monotone-chain hull with an exact orientation predicate.

    Duplicates are merged and collinear boundary points dropped.
    """
    pts = sorted(set(points), key=_sort_key)
    if not pts:
        raise ValueError("convex hull of an empty set")
    if len(pts) == 1:
        return Hull((pts[0],), (pts[0],), (pts[0],))
    hs = [_homogeneous(p) for p in pts]
    lower = [pts[i] for i in _half_chain(hs, range(len(pts)))]
    upper = [pts[i] for i in _half_chain(hs, range(len(pts) - 1, -1, -1))]
    vertices = lower[:-1] + upper[:-1]
    return Hull(tuple(vertices), tuple(lower), tuple(upper))


def hull_of(cloud: PointCloud) -> Hull:
    """Hull of an enumerated cloud, carrying witness tuples for each vertex."""
    h = convex_hull(cloud.points())
    return Hull(h.vertices, h.lower_chain, h.upper_chain,
                witnesses=cloud.witnesses(), s1_max=cloud.s1_max)


@dataclass
class CornerReport:
    matched: list[tuple[int, list[DegreeTuple]]]
    extra_vertices: list[RatioPoint]
    missing: list[int]
    truncation_artifacts: list[RatioPoint]

    @property
    def ok(self) -> bool:
        return not self.extra_vertices and not self.missing


def _corner_index(p: RatioPoint, limit: int) -> Optional[int]:
    for m in range(1, 6):
        if corner(m) == p:
            return m
    # all-ones corners have x strictly increasing in n
    for n in range(6, limit + 1):
        if all_ones_point(n) == p:
            return n
    return None


def corner_report(h: Hull, m_max: int) -> CornerReport:
    """Match corners p_1..p_{m_max} against hull vertices.

    Lower-chain vertices that are not corners are extras.  Interior upper-chain
    vertices strictly below the line through p_1 and p_inf come from the finite
    budget and are listed as truncation artifacts.
    """
    if h.s1_max is not None and h.s1_max < m_max:
        raise BudgetMismatch(f"hull built with s1_max={h.s1_max} < m_max={m_max}")
    limit = max(m_max, h.s1_max or 0, 6)
    wit = h.witnesses or {}
    vertex_set = set(h.vertices)
    matched, missing = [], []
    for m in range(1, m_max + 1):
        p = corner(m)
        if p in vertex_set:
            matched.append((m, list(wit.get(p, [corner_witness(m)]))))
        else:
            missing.append(m)
    extras = [p for p in h.lower_chain if _corner_index(p, limit) is None]
    top = edge_line(0)
    artifacts = []
    for p in h.upper_chain[1:-1]:
        if p == corner(1):
            continue
        if p[1] < top.at(p[0]):
            artifacts.append(p)
        else:
            extras.append(p)
    return CornerReport(matched, extras, missing, artifacts)


@dataclass
class HalfplaneResult:
    ok: bool
    on_line: list
    violations: list


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def halfplane_check(entries: Iterable, line: Line, required_side: Side) -> HalfplaneResult:
    """Check every point lies on ``required_side`` of ``line`` or on it.

    ``entries`` is a PointCloud or any iterable of ``(label, point)`` or
    ``(label, ChernData)`` pairs.  For a PointCloud the test runs on the integer
    functional ``L*(c3 - k*c1^3 - b*c1c2)``, whose sign is opposite to that of
    ``y - k*x - b`` because ``c1c2 < 0``.
    """
    if required_side is Side.ON:
        raise ValueError("required side must be ABOVE or BELOW")
    want = 1 if required_side is Side.ABOVE else -1
    on_line, violations = [], []
    if isinstance(entries, PointCloud):
        L = line.k.denominator * line.b.denominator
        K, B = int(line.k * L), int(line.b * L)
        labels = entries.entries
        for i, (c1_cubed, c1c2, c3) in enumerate(entries.integer_chern()):
            sign = -_sign(L * c3 - K * c1_cubed - B * c1c2)
            if sign == 0:
                on_line.append(labels[i][0])
            elif sign != want:
                violations.append(labels[i][0])
        return HalfplaneResult(not violations, on_line, violations)
    for label, item in entries:
        if isinstance(item, ChernData):
            item = item.point
        sign = _sign(item[1] - line.at(item[0]))
        if sign == 0:
            on_line.append(label)
        elif sign != want:
            violations.append(label)
    return HalfplaneResult(not violations, on_line, violations)
