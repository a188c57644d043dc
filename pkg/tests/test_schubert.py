import random

import pytest

from schubert_tanner import schubert as sc
from schubert_tanner.code import (
    Codeword,
    LinearCode,
    doubly_extended_rs,
    dual,
    is_information_set,
    is_mds,
    min_distance_bruteforce,
    weight_distribution,
)
from schubert_tanner.field import build_field, field_of_order
from schubert_tanner.geometry import (
    coordinate_point,
    downward_closure,
    full_downset,
    grassmannian,
    j_set,
    order_ideals,
    schubert_union_points,
)
from schubert_tanner.tanner import maximal_tanner_code

S24 = downward_closure([(2, 4)], 2, 4)


def test_grassmann_parameters():
    p = sc.grassmann_parameters(2, 4, 2)
    assert (p.n, p.dim, p.d, p.line_count, p.lines_per_point) == (35, 6, 16, 105, 9)
    p3 = sc.grassmann_parameters(2, 4, 3)
    assert (p3.n, p3.dim, p3.d) == (130, 6, 81)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_c12_is_doubly_extended_rs(q):
    fld = field_of_order(q)
    c = sc.grassmann_code(1, 2, fld)
    assert (c.n, c.k, min_distance_bruteforce(c)) == (q + 1, 2, q)
    assert is_mds(c)
    # a point of G(1,2) is spanned by one row (x, y); label it by that row
    rs = doubly_extended_rs(fld)
    assert c.relabel({p: p.rows[0] for p in c.coords}).reorder(rs.coords) == rs


def test_weight_distributions(gf2, gf3):
    assert weight_distribution(sc.grassmann_code(2, 4, gf2)) == {0: 1, 16: 35, 20: 28}
    assert weight_distribution(sc.grassmann_code(2, 4, gf3)) == {0: 1, 81: 260, 90: 468}


def test_schubert_union_examples(gf2):
    assert sc.schubert_union_code(full_downset(2, 4), gf2) == sc.grassmann_code(2, 4, gf2)
    c = sc.schubert_union_code(S24, gf2)
    assert (c.n, c.k) == (19, 5)
    assert is_information_set(c, j_set(S24))


@pytest.mark.parametrize("q", [2, 3])
def test_components_are_rs(q):
    fld = build_field(q)
    spec = sc.schubert_tanner_spec(full_downset(2, 4), fld)
    for u in spec.graph.v2[:: 7]:
        cu = spec.components[u]
        assert (cu.n, cu.k, min_distance_bruteforce(cu)) == (q + 1, 2, q)
        assert cu == sc.line_component_code(fld, u)


@pytest.mark.parametrize("q", [2, 3])
def test_tanner_equality_all_ideals(q):
    fld = build_field(q)
    for s in order_ideals(2, 4):
        assert maximal_tanner_code(sc.schubert_tanner_spec(s, fld)) == sc.schubert_union_code(s, fld)


def test_tanner_equality_other_grassmannians(gf2):
    for l, m in [(1, 3), (2, 3), (1, 4)]:
        for s in order_ideals(l, m):
            assert maximal_tanner_code(sc.schubert_tanner_spec(s, gf2)) == sc.schubert_union_code(s, gf2)


def test_apartment_closure(gf2, gf3):
    assert sc.closure_of_apartment(downward_closure([(1, 2)], 2, 4), gf2)
    for fld in (gf2, gf3):
        assert all(sc.closure_of_apartment(s, fld) for s in order_ideals(2, 4))


def test_zero_message(gf3):
    msg = {p: 0 for p in j_set(S24)}
    word, _ = sc.encode_schubert(S24, msg, gf3)
    assert word.weight == 0


def test_random_messages_match_matrix(gf3):
    spec = sc.schubert_tanner_spec(S24, gf3)
    rng = random.Random(7)
    for _ in range(100):
        msg = {p: rng.randrange(3) for p in j_set(S24)}
        word, state = sc.encode_schubert(S24, msg, gf3, spec)
        assert word == sc.matrix_encode(S24, msg, gf3)
        assert state.t <= len(spec.graph.v2)


@pytest.mark.parametrize("q", [2, 3])
def test_unit_message_of_maximal_element(q):
    # e_beta for the maximal beta lengthens to a word supported in Omega_beta
    fld = build_field(q)
    s = downward_closure([(1, 4), (2, 3)], 2, 4)
    for beta in s.maximal_elements:
        w_beta = coordinate_point(beta, 4)
        msg = {p: int(p == w_beta) for p in j_set(s)}
        word, _ = sc.encode_schubert(s, msg, fld)
        cell = schubert_union_points(downward_closure([beta], 2, 4), fld).point_set
        assert {a for a, v in zip(word.coords, word.values) if v} <= cell


def test_min_distance_examples(gf2):
    assert sc.min_distance_formula(full_downset(2, 4), 2) == 16
    assert sc.min_distance_formula(S24, 2) == 8
    assert sc.min_distance_formula(downward_closure([(1, 4), (2, 3)], 2, 4), 2) == 4
    for s in order_ideals(2, 4):
        assert sc.verify_min_distance(s, gf2)


def test_dual_examples(gf2):
    full = sc.dual_checks(full_downset(2, 4), gf2)
    assert (full.n, full.dual_dim, full.triple_rank) == (35, 29, 29)
    assert full.passed and full.min_weight_three
    part = sc.dual_checks(S24, gf2)
    assert (part.n, part.dual_dim, part.triple_rank) == (19, 14, 14)
    assert not sc.dual_checks(downward_closure([(1, 2)], 2, 4), gf2).applicable


def test_line_triples_are_dual_words(gf3):
    code = sc.schubert_union_code(S24, gf3)
    d = dual(code)
    for row in sc.triple_matrix(S24, gf3)[:20]:
        assert d.contains(row) and sum(1 for v in row if v) == 3


def test_low_weight_detector(gf2, gf3):
    code = sc.grassmann_code(2, 4, gf2)
    assert sc.low_weight_dual_words(code) == (False, False)
    # a zero column gives a weight-1 dual word, proportional columns a weight-2 one
    assert sc.low_weight_dual_words(LinearCode(gf3, "abc", [[1, 2, 0]])) == (True, True)
    assert sc.low_weight_dual_words(LinearCode(gf3, "abc", [[1, 2, 1], [0, 0, 1]])) == (False, True)


def test_support_structure(gf2):
    g = grassmannian(2, 4, gf2)
    code = sc.grassmann_code(2, 4, gf2)
    zero = Codeword(code.coords, (0,) * code.n)
    rep = sc.support_structure_checks(zero, g)
    assert rep.line_hits == {0} and rep.passed
    for c in code.codewords():
        if c.weight == 16:
            rep = sc.support_structure_checks(c, g)
            assert rep.line_hits <= {0, 2} and rep.passed


def test_clique_families(gf2):
    tops, stars = sc.clique_families(grassmannian(2, 4, gf2))
    assert len(tops) == 15 and len(stars) == 15
    assert all(len(c) == 7 for c in tops + stars)


def test_eisfeld_values(gf2, gf3):
    b = sc.eisfeld_bounds(2, 4, gf2)
    assert (b.theta0, b.theta1, b.theta_ell, b.lower, b.upper) == (18, 3, -3, 14, 20)
    b3 = sc.eisfeld_bounds(2, 4, gf3)
    assert (b3.lower, b3.upper) == (78, 90)


def test_eisfeld_pair_count(gf2):
    g = grassmannian(2, 4, gf2)
    code = sc.grassmann_code(2, 4, gf2)
    c = next(c for c in code.codewords() if c.weight == 16)
    rep = sc.verify_eisfeld(c, g)
    assert rep.a1_direct == rep.a1_formula == 144
    assert rep.passed


def test_eisfeld_needs_small_l(gf2):
    with pytest.raises(ValueError):
        sc.eisfeld_bounds(3, 4, gf2)


def test_dual_coverage_spot_check(gf2):
    assert sc.dual_coverage(S24, gf2, samples=19) == (19, 19)
    assert sc.dual_coverage(downward_closure([(1, 2)], 2, 4), gf2) == (0, 1)
