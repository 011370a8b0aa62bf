import random
from fractions import Fraction

import pytest

from gbs import indices
from gbs.graphs import GraphError, parse_graph
from gbs.words import GbsGroup, random_closed_word

from conftest import bs_text


def oracle_relative_order(group, source_vertex, target_vertex, bound=1000):
    """Minimal k > 0 with a_source^k inside <a_target>, by exponent search."""
    a = group.vertex_generator(source_vertex)
    for k in range(1, bound + 1):
        if group.as_vertex_power(a ** k, target_vertex) is not None:
            return k
    raise AssertionError("oracle bound exceeded")


def test_geodesic_k_empty_path(bs23):
    assert indices.geodesic_k(bs23.graph, bs23.spanning, []) == 1


def test_geodesic_k_gbs2(gbs2):
    w = gbs2.graph.edge_id("w")
    assert indices.geodesic_k(gbs2.graph, gbs2.spanning, [w]) == 2
    assert indices.geodesic_k(gbs2.graph, gbs2.spanning, [w ^ 1]) == 3
    # oracle: [G_Q : G_Q cap G_P] and the reverse
    assert oracle_relative_order(gbs2, "Q", "P") == 2
    assert oracle_relative_order(gbs2, "P", "Q") == 3


def test_geodesic_k_two_step_chain(chain3):
    g = chain3.graph
    path = [g.edge_id("w1"), g.edge_id("w2")]
    # k_1 = m_1 = 2; k_2 = 2*3/gcd(2, 2) = 3
    assert indices.geodesic_k(g, chain3.spanning, path) == 3
    assert oracle_relative_order(chain3, "R", "P") == 3


def test_geodesic_k_rejects_non_tree(bs23):
    with pytest.raises(GraphError):
        indices.geodesic_k(bs23.graph, bs23.spanning, [0])


def test_geodesic_k_matches_oracle_on_all_tree_paths(gbs2, chain3):
    for group in (gbs2, chain3):
        g = group.graph
        for p in range(g.n_vertices):
            for q in range(g.n_vertices):
                path = group.tree_path(p, q)
                k = indices.geodesic_k(g, group.spanning, path)
                assert k == oracle_relative_order(
                    group, g.vertices[q] if path else g.vertices[p],
                    g.vertices[p])


def oracle_kappa(group, edge):
    """[iota_bar(G_y) : iota_bar cap iota] by exponent search <= 1000."""
    graph = group.graph
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    a_t = group.vertex_generator(graph.terminus[e])
    b_o = group.vertex_generator(graph.origin[e])
    alpha_y = graph.alpha[e]
    alpha_bar = graph.alpha[e ^ 1]
    kappa_bar = None
    for j in range(1, 1001):
        if group.cyclic_membership(b_o ** (alpha_bar * j),
                                   graph.terminus[e], abs(alpha_y)) is not None:
            kappa_bar = j
            break
    kappa = None
    for j in range(1, 1001):
        if group.cyclic_membership(a_t ** (alpha_y * j),
                                   graph.origin[e], abs(alpha_bar)) is not None:
            kappa = j
            break
    return kappa, kappa_bar


def test_kappa_examples(bs23, gbs2):
    assert indices.kappa_pair(bs23.graph, bs23.spanning, "y") == (2, 3)
    g22, s22 = parse_graph(bs_text(2, 2))
    assert indices.kappa_pair(g22, s22, "y") == (1, 1)
    assert indices.kappa_pair(gbs2.graph, gbs2.spanning, "y") == (5, 6)
    assert indices.k_prime_pair(gbs2.graph, gbs2.spanning, "y") == (20, 30)


def test_kappa_matches_oracle_everywhere(bs23, gbs2, chain3, two_vertex):
    for group in (bs23, gbs2, chain3, two_vertex):
        for i, name in enumerate(group.graph.edge_names):
            got = indices.kappa_pair(group.graph, group.spanning, name)
            assert got == oracle_kappa(group, name)


def oracle_big_n(group, edge, bound=200):
    graph = group.graph
    e = graph.edge_id(edge) if isinstance(edge, str) else edge
    a = group.vertex_generator(graph.terminus[e])
    t = group.edge_generator(e)
    t2 = t * t
    for j in range(1, bound + 1):
        if group.as_vertex_power(t2 * a ** j * t2.inverse(),
                                 graph.origin[e]) is not None:
            return j
    raise AssertionError("oracle bound exceeded")


def test_big_n_pinned_values(bs23):
    assert indices.big_N(bs23.graph, bs23.spanning, "y") == 9
    g24, s24 = parse_graph(bs_text(2, 4))
    assert indices.big_N(g24, s24, "y") == 8


def test_big_n_grid_matches_oracle(gbs2):
    for n in range(2, 5):
        for m in range(2, 5):
            graph, spanning = parse_graph(bs_text(n, m))
            group = GbsGroup(graph, spanning)
            assert indices.big_N(graph, spanning, "y") == oracle_big_n(group, "y")
    assert indices.big_N(gbs2.graph, gbs2.spanning, "y") == oracle_big_n(gbs2, "y") == 24


def test_big_n_rejects_tree_edge(gbs2):
    with pytest.raises(GraphError):
        indices.big_N(gbs2.graph, gbs2.spanning, "w")


def test_modular_examples(bs23):
    a = bs23.vertex_generator("P")
    t = bs23.edge_generator("y")
    assert indices.modular_value(a) == 1
    assert indices.modular_value(t) == Fraction(2, 3)
    r1 = a * t.inverse() * a * t
    assert indices.modular_value(r1) == 1


def test_modular_is_homomorphism(bs23, gbs2):
    rng = random.Random(31)
    for group in (bs23, gbs2):
        for _ in range(500):
            g = random_closed_word(group, rng, 5, 6)
            h = random_closed_word(group, rng, 5, 6)
            assert indices.modular_value(g * h) == \
                indices.modular_value(g) * indices.modular_value(h)


def test_vertex_index_examples(bs23):
    t = bs23.edge_generator("y")
    assert indices.vertex_index(bs23.identity(), "P") == 1
    assert indices.vertex_index(t, "P") == 3
    assert indices.vertex_index(t.inverse(), "P") == 2


def test_vertex_index_linear_scan_oracle(bs23, gbs2):
    rng = random.Random(37)
    for group in (bs23, gbs2):
        a_by_vertex = {v: group.vertex_generator(v)
                       for v in range(group.graph.n_vertices)}
        for _ in range(25):
            g = random_closed_word(group, rng, 3, 4)
            v = rng.randrange(group.graph.n_vertices)
            got = indices.vertex_index(g, v)
            a = a_by_vertex[v]
            for k in range(1, got + 1):
                member = group.as_vertex_power(g * a ** k * g.inverse(), v)
                assert (member is not None) == (k == got)


def test_modular_matches_index_ratio(bs23):
    rng = random.Random(41)
    for _ in range(60):
        g = random_closed_word(bs23, rng, 5, 6)
        q = indices.modular_value(g)
        ratio = Fraction(indices.vertex_index(g.inverse(), "P"),
                         indices.vertex_index(g, "P"))
        assert abs(q) == ratio


def test_theorem_grid():
    for n in range(1, 5):
        for m in range(1, 5):
            graph, spanning = parse_graph(bs_text(n, m))
            verdict = indices.check_theorem(graph, spanning)
            assert verdict.not_a_tree
            assert verdict.all_groups_z
            assert verdict.exists_kappa_mismatch == (n != m)
            assert verdict.all_proper == (n >= 2 and m >= 2)
            assert verdict.sufficient_conditions_met == (n != m and n >= 2 and m >= 2)


def test_theorem_verdict_fields(bs23, two_vertex):
    v = indices.check_theorem(bs23.graph, bs23.spanning)
    assert v.witness_edge == "y"
    d = v.to_json_dict()
    assert set(d) == {"not_a_tree", "all_groups_z", "exists_kappa_mismatch",
                      "witness_edge", "all_proper", "sufficient_conditions_met"}
    tv = indices.check_theorem(two_vertex.graph, two_vertex.spanning)
    assert not tv.not_a_tree and not tv.sufficient_conditions_met


def test_index_report_serialization(gbs2):
    rep = indices.index_report(gbs2.graph, gbs2.spanning)
    d = rep.to_json_dict()
    assert set(d) == {"not_a_tree", "kappa", "proper", "witness_edge",
                      "sufficient_conditions_met", "big_N"}
    assert d["kappa"]["y"] == [5, 6]
    assert d["big_N"] == {"y": 24}
    assert d["proper"]["~y"] is True


def test_intersection_law_bs23(bs23):
    """<a_lf> cap t^-n <a^6> t^n with a_lf = a^3: exponents 2, 3, 9.

    The geometric law gcd(N,M) * |M/gcd|^n (here 3^n for (N, M) = (2, 3))
    holds from n = 1 on; at n = 0 the intersection is plainly <a_lf^N>.
    """
    a = bs23.vertex_generator("P")
    t = bs23.edge_generator("y")
    expected = [2, 3, 9]
    for n in range(3):
        tn = t ** n
        found = None
        for j in range(1, 100):
            x = tn * a ** (3 * j) * tn.inverse()
            r = bs23.as_vertex_power(x, "P")
            if r is not None and r % 6 == 0:
                found = j
                break
        assert found == expected[n]
        if n >= 1:
            assert found == 1 * 3 ** n
