"""Acceptance criteria, exact comparisons throughout.

Every test is named ``test_criterion_NN_*``; a per-criterion PASS/FAIL line is
printed in the terminal summary (see conftest.py).
"""
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import chern_ratios_from_series, jarvis_hull, sympy_equal_degree_functional
from scichern import certificates as cert
from scichern.chern_core import (
    INF,
    Side,
    as_rational,
    chern_of,
    edge_line,
    is_canonical,
    reference_discrepancies,
)
from scichern.cone import LOWER, UPPER, combine, contains, edge
from scichern.enumeration import enumerate_points, reduction_checks
from scichern.hull import convex_hull, corner_report, halfplane_check
from scichern.polys import BiPoly, UniPoly
from scichern.report import check_reduction


def ones_formula(n):
    """Corner of the all-ones tuple of length n, written out independently."""
    q = n * n - 5 * n + 12
    return (F(2 * (n - 4) ** 2, q), F(n ** 3 - 3 * n ** 2 + 14 * n - 24, 3 * (n - 4) * q))


SPORADIC = {
    (5,): (F(1, 16), F(43, 8)),
    (2, 3): (F(1, 10), F(19, 5)),
    (1, 2, 2): (F(1, 8), F(13, 4)),
    (1, 1, 1, 1, 1): (F(1, 6), F(8, 3)),
    (2, 2, 2): (F(1, 3), F(23, 12)),
}


def expected_lower_chain(s1_max):
    pts = list(SPORADIC.values()) + [ones_formula(n) for n in range(6, s1_max + 1)]
    return set(pts)


def line_through(p, q):
    k = (q[1] - p[1]) / (q[0] - p[0])
    return k, p[1] - k * p[0]


# --- 1 ------------------------------------------------------------------------


@pytest.mark.parametrize("t", list(SPORADIC))
def test_criterion_01_sporadic_corners(t):
    assert chern_of(t).point == SPORADIC[t]
    assert chern_ratios_from_series(t) == SPORADIC[t]


def test_criterion_01_all_ones_corners():
    for n in range(6, 41):
        assert chern_of((1,) * n).point == ones_formula(n), n
    for n in (6, 13, 40):
        assert chern_ratios_from_series((1,) * n) == ones_formula(n)


# --- 2 ------------------------------------------------------------------------


def test_criterion_02_lower_hull_is_corner_set(hull40):
    assert set(hull40.lower_chain) == expected_lower_chain(40)
    assert len(hull40.lower_chain) == 40
    rep = corner_report(hull40, 40)
    assert rep.extra_vertices == [] and rep.missing == []


# --- 3 ------------------------------------------------------------------------

TABLE = {
    0: (F(-242, 93), F(515, 93)),
    1: (F(-42), F(8)),
    2: (F(-22), F(6)),
    3: (F(-14), F(5)),
    4: (F(-9, 2), F(41, 12)),
}


def test_criterion_03_table_lines():
    for m, kb in TABLE.items():
        line = edge_line(m)
        assert (line.k, line.b) == kb, m


def test_criterion_03_closed_form_lines():
    for m in range(6, 201):
        line = edge_line(m)
        assert (line.k, line.b) == line_through(ones_formula(m), ones_formula(m + 1)), m


def test_criterion_03_line_5_and_discrepancies():
    line = edge_line(5)
    assert (line.k, line.b) == (F(-13, 4), F(3))
    assert line_through(SPORADIC[(2, 2, 2)], ones_formula(6)) == (F(-13, 4), F(3))
    found = reference_discrepancies()
    assert len(found) == 2
    by_kind = {d["kind"]: d for d in found}
    lines = by_kind["line_coefficients"]
    assert lines["index"] == 5
    assert lines["printed"][0] == "-13/5" and lines["recomputed"] == ["-13/4", "3"]
    label = by_kind["corner_label"]
    assert label["label"] == "Q(3;2,3,3)"
    assert label["witnesses"] == ["1;2;2"]


def test_criterion_03_report_has_two_discrepancies(default_report):
    assert len(default_report["discrepancies"]) == 2


# --- 4 ------------------------------------------------------------------------


def test_criterion_04_step1_expansion():
    reference = BiPoly({(0, 0): 3500, (1, 0): -2625, (1, 1): -937, (1, 2): -31,
                      (2, 0): 422, (2, 1): 211}) * F(1, 93)
    f = cert.build_step1_poly()
    assert f == reference
    k0, b0 = TABLE[0]
    poly, s, d = sympy_equal_degree_functional(-k0, -b0, 1)
    assert {k: F(str(v)) for k, v in poly.terms()} == f.terms


def test_criterion_04_step1_certificates(cloud40):
    quad = cert.integer_positivity(UniPoly((3500, -3593, 633)), 5)
    assert quad and quad.check()
    cubic = cert.integer_positivity(UniPoly((700, -525, -103, 36)), 5)
    assert cubic and cubic.check()
    assert cubic.zeros == [5]
    hp = halfplane_check(cloud40, edge_line(0), Side.BELOW)
    assert hp.ok and hp.violations == []
    assert [t.label() for t in hp.on_line] == ["5"]


# --- 5 ------------------------------------------------------------------------


def test_criterion_05_taylor_per_m():
    for m in range(10, 201):
        c = cert.taylor_positivity(cert.build_g(m), cert.threshold(m))
        assert c and c.check(), m
    for m in (6, 7, 8, 9):
        t = cert.threshold(m)
        assert t < 10
        c = cert.taylor_positivity(cert.build_g(m), t + 1)
        assert c and c.check(), m


def test_criterion_05_symbolic_m():
    for j, p, den, e in cert.symbolic_derivative_polys():
        c = cert.integer_positivity(p, 10, strict=True)
        assert c and c.check(), j
    den_ok = cert.integer_positivity(cert.symbolic_derivative_polys()[0][2], 10, strict=True)
    assert den_ok
    rep = cert.verify_step2_symbolic_m()
    assert rep.passed, rep.failures()


def test_criterion_05_finite_sweep():
    small = enumerate_points(10)
    for m in (6, 7, 8, 9):
        hp = halfplane_check(small, edge_line(m), Side.ABOVE)
        assert hp.ok, (m, [t.label() for t in hp.violations])


# --- 6 ------------------------------------------------------------------------


def test_criterion_06_step3(cloud40):
    c = cert.integer_positivity(UniPoly((120, -60, 5)), 10, strict=True)
    assert c and c.check()
    small = enumerate_points(9)
    for i in range(1, 6):
        assert halfplane_check(small, edge_line(i), Side.ABOVE).ok, i
    for t, ch in cloud40:
        if t.s1 >= 10:
            assert ch.x > F(4, 9), t


# --- 7 ------------------------------------------------------------------------


def test_criterion_07_cone_identities():
    assert edge(0).scale(F(744, 229)) + edge(1).scale(F(515, 229)) == (F(-86), 0, 1)
    assert edge(0).scale(F(93, 422)) + edge(INF).scale(F(515, 422)) == (F(1, 6), 0, F(-1))
    assert combine({0: F(744, 229), 1: F(515, 229)}) == LOWER
    assert combine({0: F(93, 422), INF: F(515, 422)}) == UPPER


def test_criterion_07_membership():
    assert contains((-86, 0, 1)).member
    assert contains((F(1, 6), 0, -1)).member
    v = contains((0, 0, 1))
    assert not v.member
    assert v.counterexample.parts == (5,)


# --- 8 ------------------------------------------------------------------------


def test_criterion_08_corollary_sweep(cloud40):
    equal = []
    for (t, _), (c1_cubed, c1c2, c3) in zip(cloud40.entries, cloud40.integer_chern()):
        lower = c3 - 86 * c1_cubed
        assert lower >= 0, t
        if lower == 0:
            equal.append(t.parts)
        assert F(c1_cubed, 6) - c3 > 0, t
        assert F(c1_cubed, 18) - c3 > 0, t
    assert equal == [(5,)]


# --- 9 ------------------------------------------------------------------------


def reduction_triples():
    out = [(-TABLE[0][0], -TABLE[0][1], F(1))]
    for j in range(1, 13):
        line = edge_line(j)
        out.append((line.k, line.b, F(-1)))
    return out


def test_criterion_09_integer_vs_equal_degree():
    triples = reduction_triples()
    for m in range(5, 31):
        for (lam, mu, nu), res in zip(triples, reduction_checks(m, triples)):
            assert res.holds, (m, lam, mu, nu)
            assert res.integer_min >= res.equal_degree_min


def test_criterion_09_random_real_tuples():
    rep = check_reduction(seed=0)
    assert rep.passed, rep.failures()
    assert rep.check("random_real_tuples").detail["samples"] == 10_000


# --- 10 -----------------------------------------------------------------------


pts = st.lists(st.tuples(st.fractions(min_value=-5, max_value=5, max_denominator=12),
                         st.fractions(min_value=-5, max_value=5, max_denominator=12)),
               min_size=1, max_size=40)


@settings(max_examples=200, derandomize=True, deadline=None)
@given(pts, st.randoms(use_true_random=False))
def test_criterion_10_hull_idempotent_and_permutation_invariant(points, rnd):
    h = convex_hull(points)
    assert convex_hull(h.vertices) == h
    shuffled = list(points)
    rnd.shuffle(shuffled)
    assert convex_hull(shuffled) == h
    assert set(h.vertices) == jarvis_hull(points)


def test_criterion_10_certificate_revalidation():
    step2 = cert.verify_step2(range(6, 201))
    certs = [c for pair in step2.certificates.values() for c in pair]
    certs.append(cert.integer_positivity(UniPoly((3500, -3593, 633)), 5))
    certs.append(cert.integer_positivity(UniPoly((700, -525, -103, 36)), 5))
    certs.append(cert.integer_positivity(UniPoly((120, -60, 5)), 10, strict=True))
    for j, p, den, e in cert.symbolic_derivative_polys():
        certs.append(cert.integer_positivity(p, 10, strict=True))
    # Taylor and Case-I per m, three step-1/3 polynomials, four symbolic ones
    assert len(certs) == 2 * 195 + 3 + 4
    rng = random.Random(2024)
    for c in certs:
        assert c
        assert c.revalidate(seed=rng.randrange(2 ** 32), count=100)
        # independent spot check without the certificate's own helper
        if isinstance(c, cert.IntegerPositivityCert):
            for _ in range(100):
                k = c.start + rng.randint(0, 10 ** 6)
                assert c.poly(k) >= 0
        else:
            for _ in range(100):
                s = c.base + F(rng.randint(0, 10 ** 6), rng.randint(1, 1000))
                assert c.cubic(s) > 0


def _rationals_in(obj):
    if isinstance(obj, (F, int)) and not isinstance(obj, bool):
        yield obj
    elif isinstance(obj, (tuple, list)):
        for o in obj:
            yield from _rationals_in(o)
    elif isinstance(obj, dict):
        for o in obj.values():
            yield from _rationals_in(o)


def _canonical_text(s: str) -> bool:
    q = as_rational(s)
    return s == (str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}")


def test_criterion_10_canonical_rationals(cloud40, hull40, default_report):
    for _, ch in cloud40.entries[:: 97]:
        assert all(is_canonical(v) for v in (ch.c1, ch.c2, ch.c3, ch.x, ch.y))
    assert all(is_canonical(v) for p in hull40.vertices for v in p)
    for m in [0, 1, 5, 6, 50, INF]:
        line = edge_line(m)
        assert is_canonical(line.k) and is_canonical(line.b)
    assert all(is_canonical(v) for v in _rationals_in(cert.build_g(7).coeffs))
    v = contains((F(2, 4), 0, -1))
    assert all(is_canonical(x) for x in v.vector)
    # every rational in the serialized report is a canonical "p/q" string
    strings = []

    def walk(o):
        if isinstance(o, str) and o.lstrip("-").replace("/", "").isdigit():
            strings.append(o)
        elif isinstance(o, list):
            for x in o:
                walk(x)
        elif isinstance(o, dict):
            for k, x in o.items():
                if k != "digest":
                    walk(x)

    walk(default_report)
    assert strings
    assert all(_canonical_text(s) for s in strings)


def test_criterion_10_yau_invariant(cloud40):
    for (t, _), (c1_cubed, c1c2, _c3) in zip(cloud40.entries, cloud40.integer_chern()):
        assert 3 * c1_cubed - 8 * c1c2 >= 0, t


def test_criterion_10_report_all_pass(default_report):
    bad = [k for k, s in default_report["steps"].items() if s["status"] != "PASS"]
    assert bad == []
