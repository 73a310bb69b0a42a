import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import jarvis_hull
from scichern.chern_core import Side, corner, edge_line
from scichern.enumeration import enumerate_points
from scichern.errors import BudgetMismatch
from scichern.hull import convex_hull, corner_report, cross, halfplane_check, hull_of

coords = st.fractions(min_value=-3, max_value=3, max_denominator=7)
point_lists = st.lists(st.tuples(coords, coords), min_size=1, max_size=30)


def test_square_with_interior_and_collinear_points():
    pts = [(F(0), F(0)), (F(2), F(0)), (F(2), F(2)), (F(0), F(2)),
           (F(1), F(1)), (F(1), F(0)), (F(0), F(0))]
    h = convex_hull(pts)
    assert set(h.vertices) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    assert h.lower_chain == ((0, 0), (2, 0), (2, 2))
    assert h.contains((F(1), F(0))) and not h.contains((F(3), F(1)))


def test_degenerate_inputs():
    assert convex_hull([(F(1), F(1))]).vertices == ((1, 1),)
    seg = convex_hull([(F(0), F(0)), (F(1), F(1)), (F(2), F(2))])
    assert set(seg.vertices) == {(0, 0), (2, 2)}
    with pytest.raises(ValueError):
        convex_hull([])


def test_nearly_collinear_points_decided_exactly():
    eps = F(1, 10 ** 30)
    pts = [(F(0), F(0)), (F(1), eps), (F(2), F(0))]
    assert len(convex_hull(pts).vertices) == 3
    pts[1] = (F(1), F(0))
    assert len(convex_hull(pts).vertices) == 2


@settings(max_examples=150, derandomize=True, deadline=None)
@given(point_lists)
def test_matches_gift_wrapping(points):
    assert set(convex_hull(points).vertices) == jarvis_hull(points)


@settings(max_examples=150, derandomize=True, deadline=None)
@given(point_lists, st.integers(0, 2 ** 16))
def test_idempotent_and_order_free(points, seed):
    h = convex_hull(points)
    assert convex_hull(h.vertices) == h
    shuffled = list(points)
    random.Random(seed).shuffle(shuffled)
    assert convex_hull(shuffled) == h
    for p in points:
        assert h.contains(p)


@settings(max_examples=100, derandomize=True, deadline=None)
@given(point_lists)
def test_vertices_counterclockwise(points):
    vs = convex_hull(points).vertices
    if len(vs) >= 3:
        n = len(vs)
        assert all(cross(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) > 0 for i in range(n))


def test_small_budget_hull_corners():
    cloud = enumerate_points(5)
    h = hull_of(cloud)
    rep = corner_report(h, 4)
    assert [m for m, _ in rep.matched] == [1, 2, 3, 4]
    assert rep.ok
    with pytest.raises(BudgetMismatch):
        corner_report(h, 6)


def test_corner_witnesses_from_hull():
    cloud = enumerate_points(12)
    rep = corner_report(hull_of(cloud), 12)
    wit = dict(rep.matched)
    assert [t.parts for t in wit[3]] == [(1, 2, 2)]
    assert [t.parts for t in wit[5]] == [(2, 2, 2)]


def test_upper_chain_truncation_is_reported(hull40):
    rep = corner_report(hull40, 40)
    assert rep.extra_vertices == []
    assert all(p[1] < edge_line(0).at(p[0]) for p in rep.truncation_artifacts)


def test_halfplane_check_cloud_and_pairs_agree():
    cloud = enumerate_points(10)
    pairs = [(t, ch) for t, ch in cloud]
    for m in (1, 3, 6):
        a = halfplane_check(cloud, edge_line(m), Side.ABOVE)
        b = halfplane_check(pairs, edge_line(m), Side.ABOVE)
        assert a.ok and b.ok and a.on_line == b.on_line


def test_halfplane_check_finds_violations():
    cloud = enumerate_points(8)
    res = halfplane_check(cloud, edge_line(0), Side.ABOVE)
    assert not res.ok and res.violations
    with pytest.raises(ValueError):
        halfplane_check(cloud, edge_line(0), Side.ON)


def test_step2_sweep_on_line_witnesses_for_m6():
    res = halfplane_check(enumerate_points(10), edge_line(6), Side.ABOVE)
    labels = {t.label() for t in res.on_line}
    assert {";".join(["1"] * 6), ";".join(["1"] * 7)} <= labels
    assert corner(6) != corner(7)
