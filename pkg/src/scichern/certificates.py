"""Positivity certificates behind the three supporting-line arguments.

Three kinds of certificate are produced, each re-checkable by substitution:

* :class:`IntegerPositivityCert` -- ``p(k) >= 0`` (or ``> 0``) for every integer
  ``k >= N``: positive leading coefficient, a rigorous bound on the real roots,
  and an exact scan of every integer between ``N`` and that bound.
* :class:`TaylorPositivityCert` -- a cubic whose value and first three
  derivatives are positive at ``s0`` is positive on ``[s0, oo)``.
* endpoint minima of a concave quadratic (:func:`quad_endpoint_min`).
"""
from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .chern_core import (
    Side,
    chern_classes,
    corner,
    corner_witness,
    edge_line,
    fmt_rational,
)
from .enumeration import PointCloud, enumerate_points
from .errors import (
    DenominatorSignChange,
    ExpansionMismatch,
    NegativeLeadingCoefficient,
    NotCubic,
    WrongConcavity,
)
from .hull import halfplane_check
from .polys import BiPoly, UniPoly
from .results import StepReport

# --- root bounds -----------------------------------------------------------


def cauchy_bound(p: UniPoly) -> Fraction:
    """``1 + max|a_i| / |a_n|``."""
    if p.degree < 1:
        return Fraction(0)
    lead = abs(p.leading)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


def _iroot_ceil(n: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= n."""
    if n <= 0:
        return 0
    r = 1 << ((n.bit_length() + k - 1) // k)  # r**k >= n
    lo, hi = 0, r
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _root_upper(q: Fraction, k: int, denom: int = 256) -> Fraction:
    # rational t with t >= q**(1/k), within 1/denom
    target = q * denom ** k
    n = -((-target.numerator) // target.denominator)
    return Fraction(_iroot_ceil(n, k), denom)


def fujiwara_bound(p: UniPoly) -> Fraction:
    """``2 * max(|a_{n-i}/a_n|^(1/i), |a_0/(2 a_n)|^(1/n))`` rounded up to a rational."""
    n = p.degree
    if n < 1:
        return Fraction(0)
    lead = abs(p.leading)
    parts = []
    for i in range(1, n + 1):
        a = abs(p.coeffs[n - i]) / lead
        if i == n:
            a /= 2
        if a:
            parts.append(_root_upper(a, i))
    return 2 * max(parts, default=Fraction(0))


def root_bound(p: UniPoly) -> tuple[Fraction, str]:
    """The smaller of the Cauchy and Fujiwara bounds, with its name.

    Both bound the modulus of every complex root.
    """
    c, f = cauchy_bound(p), fujiwara_bound(p)
    return (c, "cauchy") if c <= f else (f, "fujiwara")


# --- integer positivity ----------------------------------------------------


def _digest(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class IntegerPositivityCert:
    poly: UniPoly
    start: int
    root_bound: Fraction
    bound_method: str
    scanned: list[tuple[int, Fraction]]
    strict: bool = False
    leading_sign: int = 1

    @property
    def zeros(self) -> list[int]:
        return [k for k, v in self.scanned if v == 0]

    def check(self) -> bool:
        """Re-derive the certificate from scratch."""
        p = self.poly
        if p.is_zero() or p.leading <= 0:
            return False
        bound, _ = root_bound(p)
        if bound > self.root_bound:
            return False
        top = max(self.start, math.ceil(self.root_bound))
        values = {k: p(k) for k in range(self.start, top + 1)}
        if dict(self.scanned) != values:
            return False
        return all(v > 0 if self.strict else v >= 0 for v in values.values())

    def revalidate(self, seed: int = 0, count: int = 100, span: int = 10 ** 6) -> bool:
        """Spot-check the claim at ``count`` random integers >= start."""
        rng = random.Random(seed)
        for _ in range(count):
            k = self.start + rng.randint(0, span)
            v = self.poly(k)
            if v < 0 or (self.strict and v == 0):
                return False
        return True

    def to_dict(self) -> dict:
        out = {
            "kind": "integer_positivity",
            "poly": [fmt_rational(c) for c in self.poly.coeffs],
            "from": self.start,
            "strict": self.strict,
            "root_bound": fmt_rational(self.root_bound),
            "bound_method": self.bound_method,
            "scan_range": [self.start, max(self.start, math.ceil(self.root_bound))],
            "zeros": self.zeros,
        }
        out["digest"] = _digest(out)
        return out


@dataclass
class CounterexampleAt:
    poly: UniPoly
    at: int
    value: Fraction

    def __bool__(self):
        return False


def integer_positivity(poly: UniPoly, start: int, *,
                       strict: bool = False) -> Union[IntegerPositivityCert, CounterexampleAt]:
    """Certify ``poly(k) >= 0`` (``> 0`` if strict) for all integers ``k >= start``.

    Beyond the root bound the polynomial has no real zero, so its sign there is
    the sign of the leading coefficient; below it every integer is evaluated.
    """
    if poly.is_zero():
        raise ValueError("zero polynomial")
    if poly.leading < 0:
        raise NegativeLeadingCoefficient(f"leading coefficient {poly.leading} < 0")
    bound, method = root_bound(poly)
    top = max(start, math.ceil(bound))
    scanned = []
    for k in range(start, top + 1):
        v = poly(k)
        if v < 0 or (strict and v == 0):
            return CounterexampleAt(poly, k, v)
        scanned.append((k, v))
    return IntegerPositivityCert(poly, start, bound, method, scanned, strict)


# --- Taylor positivity of cubics -------------------------------------------


@dataclass
class TaylorPositivityCert:
    cubic: UniPoly
    base: Fraction
    values: tuple[Fraction, Fraction, Fraction, Fraction]

    def check(self) -> bool:
        return (self.cubic.degree <= 3
                and tuple(self.cubic.derivative(j)(self.base) for j in range(4)) == self.values
                and all(v > 0 for v in self.values))

    def revalidate(self, seed: int = 0, count: int = 100) -> bool:
        rng = random.Random(seed)
        for _ in range(count):
            s = self.base + Fraction(rng.randint(0, 10 ** 6), rng.randint(1, 1000))
            if self.cubic(s) <= 0:
                return False
        return True

    def to_dict(self) -> dict:
        out = {
            "kind": "taylor_positivity",
            "cubic": [fmt_rational(c) for c in self.cubic.coeffs],
            "base": fmt_rational(self.base),
            "values": [fmt_rational(v) for v in self.values],
        }
        out["digest"] = _digest(out)
        return out


@dataclass
class TaylorFailure:
    cubic: UniPoly
    base: Fraction
    values: tuple

    def __bool__(self):
        return False


def taylor_positivity(cubic: UniPoly, s0) -> Union[TaylorPositivityCert, TaylorFailure]:
    if cubic.degree > 3:
        raise ValueError(f"degree {cubic.degree} > 3")
    s0 = Fraction(s0)
    values = tuple(cubic.derivative(j)(s0) for j in range(4))
    if all(v > 0 for v in values):
        return TaylorPositivityCert(cubic, s0, values)
    return TaylorFailure(cubic, s0, values)


# --- concave quadratics ----------------------------------------------------


@dataclass(frozen=True)
class EndpointMin:
    left: Fraction
    right: Fraction

    @property
    def minimum(self) -> Fraction:
        return min(self.left, self.right)


def quad_endpoint_min(q: UniPoly, lo, hi) -> EndpointMin:
    """Minimum of a concave quadratic over ``[lo, hi]``: one of the endpoints."""
    if q.degree != 2 or q.leading >= 0:
        raise WrongConcavity(f"need a quadratic with negative leading term, got {q.to_str('d')}")
    return EndpointMin(q(lo), q(hi))


# --- step 1: the upper line through p_1 and p_inf --------------------------

S = BiPoly.u()  # s1
D = BiPoly.v()  # common degree d (step 1) or m (symbolic step 2)

STEP1_REFERENCE = BiPoly({
    (0, 0): 3500, (1, 0): -2625, (1, 1): -937, (1, 2): -31, (2, 0): 422, (2, 1): 211,
}) * Fraction(1, 93)
STEP1_AT_ONE = UniPoly((3500, -3593, 633)) * Fraction(1, 93)
STEP1_AT_S = UniPoly((700, -525, -103, 36)) * Fraction(5, 93)


def equal_degree_functional(lam, mu, nu) -> BiPoly:
    """``lam*c1^3 + mu*c1c2 + nu*c3`` of the equal-degree instance as a polynomial
    in ``(s1, d)``, using ``s2 = s1*d`` and ``s3 = s1*d^2``."""
    c1, c2, c3 = chern_classes(S, S * D, S * D * D)
    return c1 * c1 * c1 * lam + c1 * c2 * mu + c3 * nu


def build_step1_poly() -> BiPoly:
    line = edge_line(0)
    f = equal_degree_functional(-line.k, -line.b, 1)
    if f != STEP1_REFERENCE:
        raise ExpansionMismatch(f"symbolic expansion {f} != reference {STEP1_REFERENCE}")
    return f


def _cert_detail(cert) -> dict:
    if cert:
        return {"certificate": cert.to_dict()}
    return {"counterexample": {"at": cert.at, "value": fmt_rational(cert.value)}}


def _x_range_of_cloud(cloud: PointCloud) -> tuple[Fraction, Fraction]:
    xs = [ch.x for _, ch in cloud]
    return min(xs), max(xs)


def verify_step1(cloud: Optional[PointCloud] = None) -> StepReport:
    """Every ratio point lies below ``L_{p_1 p_inf}`` and has ``1/16 <= x <= 2``."""
    rep = StepReport("step1")
    try:
        f = build_step1_poly()
        rep.add("expansion_matches_reference", True, terms=len(f.terms))
    except ExpansionMismatch as exc:
        rep.add("expansion_matches_reference", False, error=str(exc))
        return rep
    # concavity in d: the d^2 coefficient is -31*s1/93
    d2 = f.coeff_v(2)
    conc = integer_positivity(-d2, 5, strict=True)
    rep.add("concave_in_d", bool(conc), d2_coefficient=d2.to_str(), **_cert_detail(conc))
    at_one, at_s = f.at_v(1), f.at_v(UniPoly.x())
    rep.add("endpoint_d_equals_1", at_one == STEP1_AT_ONE, poly=at_one.to_str())
    rep.add("endpoint_d_equals_s1", at_s == STEP1_AT_S, poly=at_s.to_str())
    q5 = quad_endpoint_min(f.at_u(5), 1, 5)
    rep.add("endpoint_min_at_s1_5", q5.minimum == 0,
            left=fmt_rational(q5.left), right=fmt_rational(q5.right))
    quad = integer_positivity(at_one * 93, 5)
    cubic = integer_positivity(at_s * Fraction(93, 5), 5)
    rep.add("quadratic_endpoint_nonnegative", bool(quad), **_cert_detail(quad))
    rep.add("cubic_endpoint_nonnegative", bool(cubic),
            equality_at=cubic.zeros if cubic else None, **_cert_detail(cubic))
    # x >= 1/16  <=>  32(s1-4)^2 >= s1^2 + s2 - 6 s1 + 12, worst case s2 = s1^2
    left = integer_positivity(UniPoly((50, -25, 3)), 5)
    rep.add("x_range_left", bool(left), equality_at=left.zeros if left else None,
            **_cert_detail(left))
    # x <= 2  <=>  s2 >= 4 - 2 s1, worst case s2 = s1
    right = integer_positivity(UniPoly((-4, 3)), 5)
    rep.add("x_range_right", bool(right), **_cert_detail(right))
    if cloud is not None:
        lo, hi = _x_range_of_cloud(cloud)
        rep.add("x_range_on_cloud", Fraction(1, 16) <= lo and hi <= 2,
                x_min=fmt_rational(lo), x_max=fmt_rational(hi), s1_max=cloud.s1_max)
        hp = halfplane_check(cloud, edge_line(0), Side.BELOW)
        rep.add("cloud_below_line_0", hp.ok, s1_max=cloud.s1_max,
                on_line=[t.label() for t in hp.on_line],
                violations=[t.label() for t in hp.violations[:10]])
    return rep


# --- step 2: the lower lines through p_m, p_{m+1}, m >= 6 ------------------


def _denominator(m):
    return (m - 4) * (m - 3) * (3 * m * m - 5 * m - 20)


def threshold(m: int) -> Fraction:
    """Smallest s1 at which the vertex of the quadratic in d lies at d >= 1."""
    b = edge_line(m).b
    return (12 * b - 2) / (3 * b - 3)


def _quadratic_parts(m: int) -> tuple[UniPoly, UniPoly, UniPoly]:
    line = edge_line(m)
    f = equal_degree_functional(line.k, line.b, -1)
    return f.coeff_v(2), f.coeff_v(1), f.coeff_v(0)


def build_g(m: int) -> UniPoly:
    """``12 D(m)^2`` times the value at the vertex in ``d`` of the step-2 functional,
    as a polynomial in ``s1``."""
    if m < 6:
        raise ValueError(f"m must be >= 6, got {m}")
    a, b, c = _quadratic_parts(m)
    if a != UniPoly((0, Fraction(1, 3))):
        raise ExpansionMismatch(f"d^2 coefficient {a} != s1/3")
    vertex_value = c - (b * b).exact_div(a * 4)
    g = vertex_value * (12 * _denominator(m) ** 2)
    if g.degree != 3:
        raise NotCubic(f"g({m}, s1) has degree {g.degree}")
    return g


def case_one_poly(m: int) -> UniPoly:
    """The step-2 functional at ``d = 1`` as a polynomial in s1 (the all-ones points)."""
    line = edge_line(m)
    return equal_degree_functional(line.k, line.b, -1).at_v(1)


def build_g_symbolic() -> BiPoly:
    """``g(m, s1)`` as an integer polynomial in ``(s1, m)``, built from the closed
    forms of ``k_m, b_m`` with the denominators cleared by hand."""
    s, m = S, D
    den = _denominator(m)
    nk = -28 * m + m ** 2 + 4 * m ** 3 - m ** 4
    nb = -120 + 254 * m + 3 * m ** 2 - 50 * m ** 3 + 9 * m ** 4
    # 3D * (d-free part) and 6D * (d-coefficient / s1)
    c_3d = (3 * nk * (4 - s) ** 3 + nb * (4 - s) * (s * s * Fraction(1, 2) - 3 * s + 6)
            + 3 * den * (s ** 3 * Fraction(1, 6) - s * s + 3 * s - 4))
    b_6d = 3 * den * s - 6 * den + nb * (4 - s)
    return 4 * den * c_3d - s * b_6d * b_6d * Fraction(1, 4)


def _threshold_symbolic() -> tuple[UniPoly, UniPoly]:
    m = UniPoly.x()
    den = _denominator(m)
    nb = -120 + 254 * m + 3 * m ** 2 - 50 * m ** 3 + 9 * m ** 4
    return 4 * nb - 2 * den, nb - 3 * den


def symbolic_derivative_polys() -> list[tuple[int, UniPoly, UniPoly, int]]:
    """For j = 0..3: ``(j, P_j, den, e)`` with
    ``d^j g / ds1^j (m, threshold(m)) = P_j(m) / den(m)^e``."""
    g = build_g_symbolic()
    num, den = _threshold_symbolic()
    out = []
    for j in range(4):
        gj = g.derivative_u(j)
        e = gj.degree_u()
        p = UniPoly()
        for i in range(e + 1):
            p = p + gj.coeff_u(i) * num ** i * den ** (e - i)
        out.append((j, p, den, e))
    return out


def _above_or_on(entries, m):
    return halfplane_check(entries, edge_line(m), Side.ABOVE)


def verify_step2(m_range=range(6, 201), finite_sweep_s1_max: int = 10,
                 case_one_s1_max: int = 40, cloud: Optional[PointCloud] = None) -> StepReport:
    """Lower lines ``L_{p_m p_{m+1}}`` for each m in ``m_range`` (m >= 6)."""
    rep = StepReport("step2")
    sweep = enumerate_points(finite_sweep_s1_max)
    ones = [(corner_witness(n), corner(n)) for n in range(6, case_one_s1_max + 1)]
    ones.insert(0, (corner_witness(4), corner(4)))
    failed_m, tested = [], []
    certs = {}
    for m in m_range:
        tested.append(m)
        ok = True
        g = build_g(m)
        b = edge_line(m).b
        ok &= b > 1  # threshold formula assumes 3b - 3 > 0
        t = threshold(m)
        base = t if m >= 10 else t + 1
        if m < 10:
            ok &= t < 10
            # s1 >= 11 is covered by the cubic once threshold + 1 <= 11
            ok &= base <= 11
            hp = _above_or_on(sweep, m)
            ok &= hp.ok
            rep.add(f"finite_sweep_m{m}", hp.ok, s1_range=[5, finite_sweep_s1_max],
                    threshold=fmt_rational(t), threshold_below_10=t < 10,
                    on_line=[w.label() for w in hp.on_line],
                    violations=[w.label() for w in hp.violations])
        cert = taylor_positivity(g, base)
        ok &= bool(cert)
        case_one = integer_positivity(case_one_poly(m), 5)
        ok &= bool(case_one)
        case_one_pts = _above_or_on(ones, m)
        ok &= case_one_pts.ok
        certs[m] = (cert, case_one)
        if not ok:
            failed_m.append(m)
    rep.add("taylor_and_case_one_all_m", not failed_m,
            m_range=[tested[0], tested[-1]] if tested else [],
            count=len(tested), failed=failed_m,
            digest=_digest([[c.to_dict()["digest"] if c else None for c in pair]
                            for pair in certs.values()]))
    if cloud is not None:
        bad = [m for m in tested if m <= cloud.s1_max and not _above_or_on(cloud, m).ok]
        rep.add("cloud_above_lines", not bad, s1_max=cloud.s1_max,
                m_checked=[m for m in tested if m <= cloud.s1_max], failed=bad)
    rep.certificates.update(certs)
    return rep


def verify_step2_symbolic_m(start: int = 10, cross_check_to: int = 200) -> StepReport:
    """Taylor positivity at threshold(m) for every m >= 10 at once, as polynomials in m."""
    rep = StepReport("step2_symbolic")
    den_cert = integer_positivity(_denominator(UniPoly.x()), start, strict=True)
    rep.add("line_denominator_positive", bool(den_cert), **_cert_detail(den_cert))
    polys = symbolic_derivative_polys()
    thr_den = polys[0][2]
    td_cert = integer_positivity(thr_den, start, strict=True)
    if not td_cert:
        raise DenominatorSignChange(f"threshold denominator {thr_den.to_str('m')} "
                                    f"is not positive at m={td_cert.at}")
    rep.add("threshold_denominator_positive", True, **_cert_detail(td_cert))
    sym_g = build_g_symbolic()
    agree = all(sym_g.at_v(m) == build_g(m) for m in range(6, cross_check_to + 1))
    rep.add("symbolic_g_matches_per_m", agree, m_range=[6, cross_check_to])
    for j, p, den, e in polys:
        cert = integer_positivity(p, start, strict=True)
        rep.add(f"derivative_{j}_positive", bool(cert), degree=p.degree,
                denominator_power=e, **_cert_detail(cert))
    mismatches = []
    for m in range(start, cross_check_to + 1):
        g, t = build_g(m), threshold(m)
        for j, p, den, e in polys:
            if p(m) / den(m) ** e != g.derivative(j)(t):
                mismatches.append((m, j))
    rep.add("symbolic_matches_per_m_values", not mismatches,
            m_range=[start, cross_check_to], mismatches=mismatches[:10])
    return rep


# --- step 3: the sporadic corners ------------------------------------------


def verify_step3(cloud: Optional[PointCloud] = None) -> StepReport:
    """Points with ``x <= 4/9`` have ``s1 <= 9`` and lie above lines 1..5."""
    rep = StepReport("step3")
    rep.add("p6_x_is_4_9", corner(6)[0] == Fraction(4, 9))
    chain = integer_positivity(UniPoly((24, -12, 1)), 10, strict=True)
    rep.add("s1_sq_minus_12s1_plus_24_positive", bool(chain), **_cert_detail(chain))
    tail = integer_positivity(UniPoly((120, -60, 5)), 10, strict=True)
    rep.add("tail_x_above_4_9", bool(tail), **_cert_detail(tail))
    slopes = [edge_line(i).k for i in range(1, 7)]
    rep.add("slopes_increasing", all(a < b for a, b in zip(slopes, slopes[1:])),
            slopes=[fmt_rational(k) for k in slopes])
    finite = enumerate_points(9)
    equalities = {}
    ok = True
    for i in range(1, 6):
        hp = _above_or_on(finite, i)
        ok &= hp.ok
        equalities[str(i)] = [w.label() for w in hp.on_line]
    rep.add("sweep_s1_5_to_9", ok, s1_range=[5, 9], equality_witnesses=equalities)
    if cloud is not None:
        third = Fraction(4, 9)
        tail_bad = [t.label() for t, ch in cloud if t.s1 >= 10 and ch.x <= third]
        rep.add("cloud_tail_x_above_4_9", not tail_bad, s1_max=cloud.s1_max,
                violations=tail_bad[:10])
        head = {t for t, ch in cloud if ch.x <= third}
        rep.add("x_at_most_4_9_implies_s1_at_most_9", all(t.s1 <= 9 for t in head),
                count=len(head))
    rep.notes.append("the tail bound uses s2 <= s1^2, valid because every d_i >= 1")
    return rep
