from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from distk import constructions as c
from distk.canon import canonical_form, is_isomorphic
from distk.graph import (
    Graph,
    diameter,
    distance_k_graph,
    edge_count,
    is_bipartite,
    is_triangle_free,
)


def k_minus_matching(m: int) -> Graph:
    """K_{m,m} minus a perfect matching."""
    return Graph.from_edges(2 * m, [(i, m + j) for i in range(m) for j in range(m) if i != j])


# -- bound oracles -------------------------------------------------------------

@pytest.mark.parametrize("n,v", [(5, 5), (9, 17), (6, 7)])
def test_ex2_bound(n, v):
    assert c.ex2_bound(n) == v


def test_ex2_bound_range():
    with pytest.raises(c.ConstructionError):
        c.ex2_bound(4)


@pytest.mark.parametrize("n,v,proven", [(18, 64, True), (9, 12, False), (4, 1, False)])
def test_ex3_bound(n, v, proven):
    assert c.ex3_bound(n) == c.Bound(v, proven)


def test_tu_bound():
    assert c.tu_bound(9, 3) == Fraction(49, 4)
    assert c.tu_bound(8, 3) == 9
    for k in range(3, 9):
        assert c.tu_bound(k + 1, k) == 1
    with pytest.raises(c.ConstructionError):
        c.tu_bound(3, 3)
    with pytest.raises(c.ConstructionError):
        c.tu_bound(9, 2)


@pytest.mark.parametrize("n,v", [(5, 5), (7, 10), (9, 17)])
def test_kp_bound(n, v):
    assert c.kp_nonbipartite_bound(n) == v


@pytest.mark.parametrize("n", range(5, 40))
def test_ex2_equals_kp_bound(n):
    assert c.ex2_bound(n) == c.kp_nonbipartite_bound(n)


# -- G2 extremal ----------------------------------------------------------------

def test_g2_extremal_n5_is_c5():
    g = c.build(c.G2Extremal(5, 2, 1))
    g2 = distance_k_graph(g, 2)
    assert edge_count(g2) == 5 and is_triangle_free(g2)
    assert is_isomorphic(g, Graph.cycle(5))


def test_g2_auxiliary_vertex_order():
    spec = c.G2Extremal(7, 3, 1)
    aux = c.g2_auxiliary(spec)
    # A = {0,1,2}, B' = {3}, B'' = {4,5}, a2 = 6
    assert aux.neighbors(6) == [0, 3]
    assert aux.neighbors(0) == [4, 5, 6]
    assert aux.neighbors(1) == [3, 4, 5]


@pytest.mark.parametrize("n", range(5, 12))
def test_g2_extremal_family_properties(n):
    for spec in c.g2_extremal_specs(n):
        g = c.build(spec)
        aux = c.g2_auxiliary(spec)
        assert diameter(g) == 2
        g2 = distance_k_graph(g, 2)
        assert g2 == aux
        assert is_triangle_free(aux) and not is_bipartite(aux)
        assert edge_count(g2) == c.ex2_bound(n)


def test_g2_family_sizes():
    # oracle: dedupe every parameter choice by brute pairwise isomorphism
    from oracles import brute_isomorphic

    for n in (5, 6, 7):
        reps = []
        for spec in c.g2_extremal_specs(n):
            g = c.build(spec)
            if not any(brute_isomorphic(g, r) for r in reps):
                reps.append(g)
        fam = c.enumerate_g2_extremal_family(n)
        assert len(fam) == len(reps)
    assert len(c.enumerate_g2_extremal_family(5)) == 1
    assert is_isomorphic(c.enumerate_g2_extremal_family(5)[0], Graph.cycle(5))


def test_g2_family_is_sorted_and_distinct():
    fam = c.enumerate_g2_extremal_family(9)
    certs = [canonical_form(g) for g in fam]
    assert certs == sorted(set(certs))


@pytest.mark.parametrize("spec,msg", [
    (c.G2Extremal(4, 2, 1), "n >= 5"),
    (c.G2Extremal(7, 2, 1), "sizeA - sizeB"),
    (c.G2Extremal(7, 3, 3), "sizeB'"),
    (c.G2Extremal(7, 3, 0), "sizeB'"),
])
def test_g2_invalid(spec, msg):
    with pytest.raises(c.ConstructionError, match=msg):
        c.build(spec)


# -- double broom / spider ----------------------------------------------------------

def test_double_broom_n9():
    g = c.build(c.DoubleBroom(9, 3, 3, 4))
    assert edge_count(g) == 8  # a tree
    g3 = distance_k_graph(g, 3)
    assert edge_count(g3) == 12 == c.ex3_bound(9).value


@given(st.integers(3, 7), st.integers(1, 5), st.integers(1, 5))
def test_double_broom_distance_graph(k, a, b):
    n = a + b + k - 1
    g = c.build(c.DoubleBroom(n, k, a, b))
    gk = distance_k_graph(g, k)
    assert edge_count(gk) == a * b
    leaves_a = set(range(k - 1, k - 1 + a))
    leaves_b = set(range(k - 1 + a, n))
    assert {frozenset(e) for e in gk.edges()} == {frozenset((x, y)) for x in leaves_a for y in leaves_b}
    assert all(gk.degree(v) == 0 for v in range(k - 1))


def test_double_broom_invalid():
    with pytest.raises(c.ConstructionError, match="a \\+ b"):
        c.build(c.DoubleBroom(9, 3, 3, 3))
    with pytest.raises(c.ConstructionError, match="a >= 1"):
        c.build(c.DoubleBroom(3, 3, 0, 1))


def test_spider_n9_legs_of_length_two():
    g = c.build(c.Spider(9, 4, (1, 1, 1, 1)))
    g3 = distance_k_graph(g, 3)
    assert edge_count(g3) == 12
    target = k_minus_matching(4).disjoint_union(Graph.empty(1))
    assert is_isomorphic(g3, target)


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13])
def test_spider_length_two_legs_odd_n(n):
    legs = (n - 1) // 2
    g3 = distance_k_graph(c.build(c.Spider(n, legs, (1,) * legs)), 3)
    assert is_isomorphic(g3, k_minus_matching(legs).disjoint_union(Graph.empty(1)))


@pytest.mark.parametrize("n", range(5, 13))
def test_all_spiders_and_balanced_brooms_hit_the_bound(n):
    specs = c.balanced_double_brooms(n) + c.spiders(n)
    assert len(c.balanced_double_brooms(n)) >= 1
    for spec in specs:
        g3 = distance_k_graph(c.build(spec), 3)
        assert is_triangle_free(g3)
        assert edge_count(g3) == c.ex3_bound(n).value, spec


def test_spider_round_robin():
    assert c.Spider.round_robin(10) == c.Spider(10, 5, (1, 1, 1, 1, 0))
    assert c.Spider.round_robin(12, 6) == c.Spider(12, 6, (1, 1, 1, 1, 1, 0))


@pytest.mark.parametrize("spec,msg", [
    (c.Spider(9, 3, (2, 2, 1)), "legs ="),
    (c.Spider(9, 4, (1, 1, 1)), "one entry per leg"),
    (c.Spider(9, 4, (2, 1, 1, 1)), "sum to"),
    (c.Spider(9, 4, (3, 1, 1, -1)), "nonnegative"),
])
def test_spider_invalid(spec, msg):
    with pytest.raises(c.ConstructionError, match=msg):
        c.build(spec)


# -- Turán, t-broom ----------------------------------------------------------------

def test_turan():
    g = c.build(c.Turan(7, 3))
    assert edge_count(g) == 16
    assert is_isomorphic(c.build(c.Turan(6, 2)), Graph.complete_bipartite(3, 3))
    with pytest.raises(c.ConstructionError):
        c.build(c.Turan(3, 4))


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7])
@pytest.mark.parametrize("counts", [(1,), (2, 1), (1, 2, 3), (2, 2, 1, 1)])
def test_t_broom_distance_graph_is_complete_multipartite(k, counts):
    spec = c.TBroom(k, len(counts), counts)
    g = c.build(spec)
    assert g.n == spec.n
    gk = distance_k_graph(g, k)
    total = sum(counts)
    leaves = range(g.n - total, g.n)
    arm = [i for i, m in enumerate(counts) for _ in range(m)]
    expected = {frozenset((leaves[i], leaves[j])) for i, j in combinations(range(total), 2) if arm[i] != arm[j]}
    assert {frozenset(e) for e in gk.edges()} == expected


def test_t_broom_is_tree_for_even_k():
    g = c.build(c.TBroom(6, 3, (2, 1, 1)))
    assert edge_count(g) == g.n - 1


@pytest.mark.parametrize("spec", [c.TBroom(2, 1, (1,)), c.TBroom(4, 2, (1,)), c.TBroom(5, 1, (0,))])
def test_t_broom_invalid(spec):
    with pytest.raises(c.ConstructionError):
        c.build(spec)


# -- determinism and JSON ----------------------------------------------------------------

@pytest.mark.parametrize("spec", [
    c.Turan(8, 3), c.G2Extremal(8, 3, 2), c.DoubleBroom(10, 4, 3, 4),
    c.TBroom(5, 3, (1, 2, 2)), c.Spider(10, 5, (0, 1, 2, 1, 0)),
])
def test_build_is_deterministic_and_json_round_trips(spec):
    assert c.build(spec) == c.build(spec)
    assert c.spec_from_json(c.spec_to_json(spec)) == spec


def test_json_errors():
    with pytest.raises(c.ConstructionError):
        c.spec_from_json('{"variant": "hexagon", "n": 3}')
    with pytest.raises(c.ConstructionError):
        c.spec_from_json('{"variant": "spider", "n": 9}')
    with pytest.raises(c.ConstructionError):
        c.spec_from_json('{"variant": "turan", "n": 9.5, "r": 2}')
