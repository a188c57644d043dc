import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schubert_tanner.field import build_field
from schubert_tanner.geometry import (
    GeometryError,
    GeometryTooLarge,
    bruhat_leq,
    coordinate_point,
    delta,
    downward_closure,
    enumerate_grassmannian,
    full_downset,
    gaussian_binomial,
    geometric_closure,
    geometry_from_points,
    grassmannian,
    incidence_graph,
    index_tuples,
    is_downward_closed,
    is_geometric_subspace,
    j_set,
    line_through,
    order_ideals,
    parse_point,
    plucker,
    plucker_line_is_projective_line,
    plucker_span_rank,
    point_from_rows,
    schubert_union_points,
    star_clique,
    top_clique,
)
from schubert_tanner.tanner import is_k_closed, k_closure


def test_gaussian_binomials():
    assert gaussian_binomial(5, 0, 3) == 1
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 2, 3) == 130


@pytest.mark.parametrize("l,m,q", [(1, 2, 2), (2, 4, 2), (2, 4, 3), (3, 3, 2), (1, 3, 3), (2, 5, 2)])
def test_point_counts(l, m, q):
    pts = enumerate_grassmannian(l, m, build_field(q))
    assert len(pts) == len(set(pts)) == gaussian_binomial(m, l, q)


def test_size_cap(gf2):
    with pytest.raises(GeometryTooLarge):
        enumerate_grassmannian(2, 4, gf2, cap=10)


def test_plucker_of_coordinate_points(gf3):
    for alpha in index_tuples(2, 4):
        pv = plucker(gf3, coordinate_point(alpha, 4))
        assert pv.support() == [alpha] and pv[alpha] == 1


def test_plucker_by_hand(gf2):
    w = point_from_rows(gf2, [[1, 0, 0, 1], [0, 1, 1, 0]])
    assert plucker(gf2, w).values == (1, 1, 0, 0, 1, 1)


@pytest.mark.parametrize("q", [2, 3])
def test_plucker_injective(q):
    fld = build_field(q)
    pts = enumerate_grassmannian(2, 4, fld)
    assert len({plucker(fld, p).values for p in pts}) == len(pts)


def test_line_counts(gf2, gf3):
    g2 = grassmannian(2, 4, gf2)
    assert len(g2.lines) == 105
    assert all(len(ln.points) == 3 for ln in g2.lines)
    assert all(len(v) == 9 for v in g2.lines_through.values())
    assert all(len(ln.points) == 4 for ln in grassmannian(2, 4, gf3).lines)
    g12 = grassmannian(1, 2, gf2)
    assert len(g12.lines) == 1 and set(g12.lines[0].points) == set(g12.points)


@pytest.mark.parametrize("q", [2, 3])
def test_lines_are_plucker_lines(q):
    fld = build_field(q)
    assert all(plucker_line_is_projective_line(fld, ln) for ln in grassmannian(2, 4, fld).lines)


def test_non_collinear_triple_fails(gf2):
    g = grassmannian(2, 4, gf2)
    a = coordinate_point((1, 2), 4)
    b = coordinate_point((3, 4), 4)  # a + b = GF(2)^4, not adjacent
    c = coordinate_point((1, 3), 4)
    assert line_through(g, a, b) is None
    assert plucker_span_rank(gf2, [a, b, c]) == 3
    assert not plucker_line_is_projective_line(gf2, [a, b, c])


def test_bruhat_and_closure():
    assert bruhat_leq((2, 4), (2, 4))
    assert bruhat_leq((1, 3), (2, 4))
    assert not bruhat_leq((1, 4), (2, 3)) and not bruhat_leq((2, 3), (1, 4))
    s = downward_closure([(2, 4)], 2, 4)
    assert s.members == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4))


def test_order_ideals_of_i24():
    ideals = order_ideals(2, 4)
    assert len(ideals) == 7
    assert len(order_ideals(2, 4, include_empty=True)) == 8
    assert all(is_downward_closed(s.members, 2, 4) for s in ideals)
    assert len({s.members for s in ideals}) == 7


def test_order_ideals_brute_force():
    # every subset of I(2,5) tested for downward closure
    elems = index_tuples(2, 5)
    count = sum(
        1
        for r in range(1, len(elems) + 1)
        for sub in itertools.combinations(elems, r)
        if is_downward_closed(sub, 2, 5)
    )
    assert len(order_ideals(2, 5)) == count


def test_bad_tuples():
    with pytest.raises(GeometryError):
        downward_closure([(3, 2)], 2, 4)
    with pytest.raises(GeometryError):
        downward_closure([(1, 5)], 2, 4)


@pytest.mark.parametrize("q", [2, 3])
def test_schubert_union_point_counts(q):
    fld = build_field(q)
    for s in order_ideals(2, 4):
        pts = schubert_union_points(s, fld).points
        assert len(pts) == sum(q ** delta(b) for b in s.members)


def test_schubert_examples(gf2):
    assert len(schubert_union_points(full_downset(2, 4), gf2).points) == 35
    single = schubert_union_points(downward_closure([(1, 2)], 2, 4), gf2)
    assert single.points == (coordinate_point((1, 2), 4),)
    s = downward_closure([(2, 4)], 2, 4)
    assert len(schubert_union_points(s, gf2).points) == 19
    assert len(j_set(s)) == 5


def test_incidence_graphs(gf2):
    g = grassmannian(2, 4, gf2)
    graph = g.graph
    assert (len(graph.v1), len(graph.v2), graph.n_prime) == (35, 105, 3)
    assert all(len(v) == 9 for v in graph.constraints_of.values())
    one = geometry_from_points(g, [g.points[0]], "point")
    assert incidence_graph(one).v2 == ()
    line = g.lines[0]
    lg = incidence_graph(geometry_from_points(g, line.points, "line"))
    assert len(lg.v2) == 1 and len(lg.nbr[lg.v2[0]]) == 3


@pytest.mark.parametrize("q", [2, 3])
def test_schubert_unions_are_geometric(q):
    fld = build_field(q)
    g = grassmannian(2, 4, fld)
    for s in order_ideals(2, 4):
        geo = schubert_union_points(s, fld)
        assert is_geometric_subspace(g, geo.points)
        assert geometric_closure(g, j_set(s)).point_set == geo.point_set


def test_two_points_close_to_line(gf3):
    g = grassmannian(2, 4, gf3)
    line = g.lines[7]
    assert geometric_closure(g, line.points[:2]).point_set == set(line.points)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_two_closed_iff_geometric(seed, size):
    fld = build_field(2)
    g = grassmannian(2, 4, fld)
    rng = random.Random(seed)
    pts = set(rng.sample(g.points, size))
    assert is_k_closed(g.graph, 2, pts) == is_geometric_subspace(g, pts)
    z, _ = k_closure(g.graph, 2, pts)
    assert is_geometric_subspace(g, z)


def test_cliques(gf2):
    g = grassmannian(2, 4, gf2)
    sp = point_from_rows(gf2, [[1, 0, 0, 0]])
    t = point_from_rows(gf2, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])
    star, top = star_clique(g, sp), top_clique(g, t)
    assert len(star) == 7 and len(top) == 7
    meet = set(star) & set(top)
    assert len(meet) == 3
    assert any(set(ln.points) == meet for ln in g.lines)


def test_point_label_round_trip(gf3):
    for p in enumerate_grassmannian(2, 4, gf3)[::7]:
        assert parse_point(p.label()) == p
