from fractions import Fraction as F

import pytest
import sympy as sp

from oracles import sympy_equal_degree_functional
from scichern import certificates as cert
from scichern.chern_core import edge_line
from scichern.errors import NegativeLeadingCoefficient, WrongConcavity
from scichern.polys import BiPoly, UniPoly


def test_root_bounds_dominate_real_roots():
    x = sp.Symbol("x")
    for coeffs in [(3500, -3593, 633), (700, -525, -103, 36), (120, -60, 5), (-10, 1)]:
        p = UniPoly(coeffs)
        roots = sp.Poly(sum(c * x ** i for i, c in enumerate(coeffs)), x).real_roots()
        bound, _ = cert.root_bound(p)
        assert all(abs(r) <= bound for r in roots)
        assert bound <= cert.cauchy_bound(p)


def test_integer_positivity_examples():
    q = cert.integer_positivity(UniPoly((3500, -3593, 633)), 5)
    assert q and q.zeros == []
    c = cert.integer_positivity(UniPoly((700, -525, -103, 36)), 5)
    assert c and c.zeros == [5]
    bad = cert.integer_positivity(UniPoly((-10, 1)), 5)
    assert not bad and bad.at == 5
    strict = cert.integer_positivity(UniPoly((700, -525, -103, 36)), 5, strict=True)
    assert not strict and strict.at == 5


def test_integer_positivity_errors():
    with pytest.raises(NegativeLeadingCoefficient):
        cert.integer_positivity(UniPoly((1, -1)), 0)
    with pytest.raises(ValueError):
        cert.integer_positivity(UniPoly(), 0)


def test_tampered_certificate_fails_check():
    c = cert.integer_positivity(UniPoly((3500, -3593, 633)), 5)
    c.scanned = c.scanned[:-1]
    assert not c.check()


def test_taylor_positivity():
    ok = cert.taylor_positivity(cert.build_g(10), cert.threshold(10))
    assert ok and ok.check() and ok.revalidate(seed=1)
    assert cert.taylor_positivity(cert.build_g(7), cert.threshold(7) + 1)
    fail = cert.taylor_positivity(UniPoly((0, -1, 0, 1)), 0)
    assert not fail and fail.values[0] == 0
    with pytest.raises(ValueError):
        cert.taylor_positivity(UniPoly((0, 0, 0, 0, 1)), 0)


def test_quad_endpoint_min():
    f = cert.build_step1_poly()
    e = cert.quad_endpoint_min(f.at_u(5), 1, 5)
    assert (e.left, e.right, e.minimum) == (F(1360, 93), 0, 0)
    f10 = cert.quad_endpoint_min(f.at_u(10), 1, 10)
    assert f10.left == cert.STEP1_AT_ONE(10) and f10.right == cert.STEP1_AT_S(10)
    with pytest.raises(WrongConcavity):
        cert.quad_endpoint_min(UniPoly((0, 0, 1)), 1, 2)


def test_step1_slices():
    f = cert.build_step1_poly()
    assert f(5, 5) == 0
    assert f.at_v(1) == UniPoly((3500, -3593, 633)) * F(1, 93)
    assert f.at_v(UniPoly.x()) == UniPoly((700, -525, -103, 36)) * F(5, 93)


def test_threshold_values():
    assert edge_line(6).b == F(66, 29)
    assert cert.threshold(6) == F(734, 111)
    assert all(cert.threshold(m) < 10 for m in (6, 7, 8, 9))
    assert cert.build_g(10).degree == 3


def test_g_matches_sympy_vertex_value():
    for m in (6, 11, 57):
        line = edge_line(m)
        poly, s, d = sympy_equal_degree_functional(line.k, line.b, -1)
        expr = poly.as_expr()
        a, b, c = (expr.coeff(d, j) for j in (2, 1, 0))
        vertex = sp.expand(sp.cancel(c - b ** 2 / (4 * a)))
        den = (m - 4) * (m - 3) * (3 * m * m - 5 * m - 20)
        want = sp.Poly(sp.expand(vertex * 12 * den ** 2), s).all_coeffs()[::-1]
        assert [F(str(x)) for x in want] == list(cert.build_g(m).coeffs)


def test_symbolic_g_specialises_to_per_m():
    g = cert.build_g_symbolic()
    assert isinstance(g, BiPoly)
    for m in (6, 10, 123):
        assert g.at_v(m) == cert.build_g(m)


def test_verify_steps_pass(cloud40):
    assert cert.verify_step1(cloud40).passed
    assert cert.verify_step2(range(6, 31), cloud=cloud40).passed
    assert cert.verify_step2_symbolic_m(cross_check_to=40).passed
    rep3 = cert.verify_step3(cloud40)
    assert rep3.passed
    eq = rep3.check("sweep_s1_5_to_9").detail["equality_witnesses"]
    assert {"5", "2;3"} <= set(eq["1"])
    assert "2;2;2" in eq["4"] and "2;2;2" in eq["5"]


def test_step2_certificates_revalidate():
    rep = cert.verify_step2(range(6, 40))
    for m, (taylor, case_one) in rep.certificates.items():
        assert taylor.revalidate(seed=m, count=100)
        assert case_one.revalidate(seed=m, count=100)
        assert taylor.check() and case_one.check()


def test_certificate_digests_are_stable():
    a = cert.integer_positivity(UniPoly((120, -60, 5)), 10, strict=True).to_dict()
    b = cert.integer_positivity(UniPoly((120, -60, 5)), 10, strict=True).to_dict()
    assert a == b and len(a["digest"]) == 16
