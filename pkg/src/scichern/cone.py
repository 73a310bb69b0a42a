"""The cone of linear inequalities ``l1*c1^3 + l2*c1c2 + l3*c3 >= 0`` valid on every
ample complete intersection threefold.

Dividing by ``c1c2 < 0`` turns membership into ``h(x, y) = l1*x + l2 + l3*y <= 0``
on the closed hull of the ratio points, i.e. at every corner ``p_n`` and at the
limit ``p_inf``.  The corners with ``n >= 5`` share one closed form, so the
infinite tail is decided by the sign of a single cubic in ``n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .chern_core import (
    INF,
    DegreeTuple,
    RatioPoint,
    as_rational,
    chern_of,
    corner,
    corner_witness,
    edge_line,
    fmt_rational,
)
from .certificates import (
    CounterexampleAt,
    IntegerPositivityCert,
    integer_positivity,
)
from .enumeration import PointCloud, enumerate_points
from .errors import NotRepresentable
from .polys import UniPoly
from .results import StepReport


class ConeVector(NamedTuple):
    l1: Fraction
    l2: Fraction
    l3: Fraction

    @classmethod
    def of(cls, *values) -> "ConeVector":
        return cls(*(as_rational(v) for v in values))

    def __add__(self, other):
        return ConeVector(*(a + b for a, b in zip(self, other)))

    def scale(self, w) -> "ConeVector":
        return ConeVector(*(w * a for a in self))

    def on_point(self, p: RatioPoint) -> Fraction:
        """``h(p) = l1*x + l2 + l3*y``."""
        return self.l1 * p[0] + self.l2 + self.l3 * p[1]

    def on_chern(self, ch) -> Fraction:
        return ch.functional(self.l1, self.l2, self.l3)

    def to_list(self) -> list[str]:
        return [fmt_rational(v) for v in self]


EdgeKey = object  # 0, m >= 1, or INF


def edge(m) -> ConeVector:
    line = edge_line(m)
    if m == 0:
        return ConeVector(-line.k, -line.b, Fraction(1))
    return ConeVector(line.k, line.b, Fraction(-1))


@dataclass(frozen=True)
class EdgeSet:
    m_max: int
    vectors: dict  # key -> ConeVector, keys 0, 1..m_max, INF

    def __getitem__(self, key) -> ConeVector:
        return self.vectors[key]

    def keys(self) -> list:
        return list(self.vectors)


def edges(m_max: int = 200) -> EdgeSet:
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    vecs = {0: edge(0)}
    for m in range(1, m_max + 1):
        vecs[m] = edge(m)
    vecs[INF] = edge(INF)
    return EdgeSet(m_max, vecs)


def _det3(a, b, c) -> Fraction:
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _solve3(cols: Sequence[ConeVector], v: ConeVector) -> Optional[tuple[Fraction, ...]]:
    """Cramer's rule for ``sum w_i cols[i] = v``; None if singular."""
    a, b, c = cols
    det = _det3(a, b, c)
    if det == 0:
        return None
    return (_det3(v, b, c) / det, _det3(a, v, c) / det, _det3(a, b, v) / det)


# --- membership -------------------------------------------------------------


def tail_numerator(v: ConeVector) -> UniPoly:
    """``3 (n-4)(n^2-5n+12) * h(p_n)`` as a polynomial in ``n`` (valid for n >= 5)."""
    n = UniPoly.x()
    q = n * n - 5 * n + 12
    return ((n - 4) ** 3 * (6 * v.l1) + (n - 4) * q * (3 * v.l2)
            + (n ** 3 - 3 * n * n + 14 * n - 24) * v.l3)


@dataclass
class TailAnalysis:
    poly: UniPoly  # -(cleared h), must be >= 0 for n >= 5
    certificate: Optional[IntegerPositivityCert]
    violation_at: Optional[int]
    limit_value: Fraction  # h(p_inf)
    equality_at: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "cleared_poly": self.poly.to_str("n"),
            "certified": self.certificate is not None,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "violation_at": self.violation_at,
            "limit_value": fmt_rational(self.limit_value),
            "equality_at": self.equality_at,
        }


@dataclass
class MembershipVerdict:
    vector: ConeVector
    member: bool
    sup: Optional[Fraction]
    corner_values: dict
    tail: TailAnalysis
    certificate: Optional[dict] = None
    counterexample: Optional[DegreeTuple] = None
    equality_corners: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "vector": self.vector.to_list(),
            "member": self.member,
            "sup": None if self.sup is None else fmt_rational(self.sup),
            "corner_values": {str(k): fmt_rational(v) for k, v in self.corner_values.items()},
            "equality_corners": [str(k) for k in self.equality_corners],
            "certificate": self.certificate,
            "counterexample": self.counterexample.label() if self.counterexample else None,
            "tail": self.tail.to_dict(),
        }


def _analyse_tail(v: ConeVector) -> TailAnalysis:
    poly = -tail_numerator(v)
    limit = v.on_point(corner(INF))
    if poly.is_zero():
        return TailAnalysis(poly, None, None, limit, equality_at=[])
    if poly.leading < 0:
        # terminates: past every real root the sign is the leading sign
        n = 5
        while poly(n) >= 0:
            n += 1
        return TailAnalysis(poly, None, n, limit)
    res = integer_positivity(poly, 5)
    if isinstance(res, CounterexampleAt):
        return TailAnalysis(poly, None, res.at, limit)
    return TailAnalysis(poly, res, None, limit, equality_at=res.zeros)


def contains(v, m_max: int = 200) -> MembershipVerdict:
    """Decide whether ``v`` is a valid inequality on every ample complete intersection.

    Members also get edge weights from :func:`certificate` when the edge fan up
    to ``m_max`` reaches them.
    """
    v = v if isinstance(v, ConeVector) else ConeVector.of(*v)
    values = {m: v.on_point(corner(m)) for m in range(1, 6)}
    tail = _analyse_tail(v)
    if tail.violation_at is not None and tail.violation_at not in values:
        m = tail.violation_at if tail.violation_at >= 6 else 4
        values[m] = v.on_point(corner(m))
    values[INF] = tail.limit_value
    finite_ok = all(h <= 0 for k, h in values.items() if k != INF)
    tail_ok = tail.poly.is_zero() or tail.certificate is not None
    member = finite_ok and tail_ok and tail.limit_value <= 0
    finite = {k: h for k, h in values.items() if k != INF}
    verdict = MembershipVerdict(v, member, None, values, tail)
    if member:
        verdict.sup = max(max(finite.values()), tail.limit_value)
        eq = [k for k, h in values.items() if h == 0]
        eq += [n for n in tail.equality_at if n >= 6]
        verdict.equality_corners = eq
        try:
            verdict.certificate = {"weights": weights_to_dict(certificate(v, m_max)),
                                   "m_max": m_max}
        except NotRepresentable:
            verdict.certificate = {"weights": None, "m_max": m_max,
                                   "note": "needs edges beyond m_max"}
    else:
        worst = max(finite, key=lambda k: (finite[k], -k))
        verdict.sup = None
        verdict.counterexample = corner_witness(worst)
    return verdict


# --- edge certificates ------------------------------------------------------


def certificate(v, m_max: int = 200) -> dict:
    """Nonnegative weights on ``e_0`` and two adjacent edges summing exactly to ``v``.

    The cross-section of the cone is a convex polygon with vertices
    ``e_0, e_1, e_2, ...`` accumulating at ``e_inf``; it is fanned from ``e_0``
    into triangles ``(e_0, e_j, e_{j+1})`` plus the closing triangle
    ``(e_0, e_{m_max}, e_inf)``.
    """
    v = v if isinstance(v, ConeVector) else ConeVector.of(*v)
    es = edges(m_max)
    if all(c == 0 for c in v):
        return {}
    fans = [(0, j, j + 1) for j in range(1, m_max)] + [(0, m_max, INF)]
    for keys in fans:
        w = _solve3([es[k] for k in keys], v)
        if w is not None and all(x >= 0 for x in w):
            return {k: x for k, x in zip(keys, w) if x != 0}
    raise NotRepresentable(f"{v.to_list()} is not in the fan of edges up to m_max={m_max}")


def combine(weights: dict) -> ConeVector:
    out = ConeVector(Fraction(0), Fraction(0), Fraction(0))
    for k, w in weights.items():
        out = out + edge(k).scale(w)
    return out


def edge_key_str(k) -> str:
    return "inf" if k == INF else str(k)


def weights_to_dict(weights: dict) -> dict:
    return {edge_key_str(k): fmt_rational(w) for k, w in weights.items()}


def edges_strictly_convex(m_max: int = 200) -> bool:
    """Every consecutive triple of edges turns the same way in the cross-section,
    so each listed edge is extreme among its neighbours."""
    es = edges(m_max)
    seq = [es[k] for k in [0, *range(1, m_max + 1), INF]]
    signs = {
        (d > 0) - (d < 0)
        for d in (_det3(seq[i - 1], seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))
    }
    return len(signs) == 1 and 0 not in signs


# --- the corollary ----------------------------------------------------------

LOWER = ConeVector(Fraction(-86), Fraction(0), Fraction(1))   # c3 - 86 c1^3 >= 0
UPPER = ConeVector(Fraction(1, 6), Fraction(0), Fraction(-1))  # c1^3/6 - c3 >= 0
ONE_EIGHTEENTH = ConeVector(Fraction(1, 18), Fraction(0), Fraction(-1))

IDENTITY_LOWER = {0: Fraction(744, 229), 1: Fraction(515, 229)}
IDENTITY_UPPER = {0: Fraction(93, 422), INF: Fraction(515, 422)}


def corollary_check(cloud: Optional[PointCloud] = None, s1_max: int = 40) -> StepReport:
    rep = StepReport("corollary")
    rep.add("identity_lower", combine(IDENTITY_LOWER) == LOWER,
            weights=weights_to_dict(IDENTITY_LOWER), target=LOWER.to_list())
    rep.add("identity_upper", combine(IDENTITY_UPPER) == UPPER,
            weights=weights_to_dict(IDENTITY_UPPER), target=UPPER.to_list())
    rep.add("certificate_lower", certificate(LOWER) == IDENTITY_LOWER,
            weights=weights_to_dict(certificate(LOWER)))
    rep.add("certificate_upper", certificate(UPPER) == IDENTITY_UPPER,
            weights=weights_to_dict(certificate(UPPER)))
    for name, vec in (("lower", LOWER), ("upper", UPPER), ("one_eighteenth", ONE_EIGHTEENTH)):
        verdict = contains(vec)
        rep.add(f"member_{name}", verdict.member,
                equality_corners=[edge_key_str(k) for k in verdict.equality_corners])
    cloud = cloud if cloud is not None else enumerate_points(s1_max)
    eq_lower, bad_lower, bad_upper, bad_18 = [], [], [], []
    for t, ch in cloud:
        lo = ch.c3 - 86 * ch.c1_cubed
        if lo < 0:
            bad_lower.append(t.label())
        elif lo == 0:
            eq_lower.append(t.label())
        if not ch.c1_cubed / 6 - ch.c3 > 0:
            bad_upper.append(t.label())
        if not ch.c1_cubed / 18 - ch.c3 > 0:
            bad_18.append(t.label())
    rep.add("sweep_lower", not bad_lower and eq_lower == ["5"], s1_max=cloud.s1_max,
            equality=eq_lower, violations=bad_lower[:10])
    rep.add("sweep_upper_strict", not bad_upper, s1_max=cloud.s1_max, violations=bad_upper[:10])
    rep.add("sweep_one_eighteenth_strict", not bad_18, s1_max=cloud.s1_max,
            violations=bad_18[:10])
    return rep


def duality_check(cloud: PointCloud, es: EdgeSet) -> list:
    """Edges whose functional is negative somewhere on the cloud (should be none)."""
    ints = cloud.integer_chern()
    bad = []
    for key, e in es.vectors.items():
        den = math.lcm(*(c.denominator for c in e))
        a, b, c = (int(x * den) for x in e)
        if any(a * c1c + b * c1c2 + c * c3 < 0 for c1c, c1c2, c3 in ints):
            bad.append(key)
    return bad


def chern_vector(t) -> tuple[Fraction, Fraction, Fraction]:
    ch = chern_of(t)
    return (ch.c1_cubed, ch.c1c2, ch.c3)
