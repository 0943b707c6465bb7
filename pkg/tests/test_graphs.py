import random
from itertools import combinations

import networkx as nx

from dynacount import parse_program
from dynacount.generators import random_program
from dynacount.graphs import INCIDENCE, PRIMAL, build_graph, incidence_graph, primal_graph

from conftest import exact_treewidth


def named_edges(p, g):
    return {frozenset(g.label(v, p) for v in e) for e in g.edges()}


def test_incidence_single_rule():
    p = parse_program("a :- not b.")
    g = incidence_graph(p)
    assert g.n == 3
    assert named_edges(p, g) == {frozenset({"a", "r0"}), frozenset({"b", "r0"})}


def test_incidence_two_stars():
    p = parse_program("a. b.")
    assert named_edges(p, incidence_graph(p)) == {frozenset({"a", "r0"}), frozenset({"b", "r1"})}


def test_incidence_two_coloring_instance():
    text = """
    color(v1,red) | color(v1,blue).
    color(v2,red) | color(v2,blue).
    :- edge(v1,v2), color(v1,red), color(v2,red).
    :- edge(v1,v2), color(v1,blue), color(v2,blue).
    """
    p = parse_program(text)
    assert (p.num_atoms, p.num_rules) == (5, 4)
    got = named_edges(p, incidence_graph(p))
    # one edge per atom occurrence
    expected = {
        frozenset({"color(v1,red)", "r0"}), frozenset({"color(v1,blue)", "r0"}),
        frozenset({"color(v2,red)", "r1"}), frozenset({"color(v2,blue)", "r1"}),
        frozenset({"edge(v1,v2)", "r2"}), frozenset({"color(v1,red)", "r2"}),
        frozenset({"color(v2,red)", "r2"}),
        frozenset({"edge(v1,v2)", "r3"}), frozenset({"color(v1,blue)", "r3"}),
        frozenset({"color(v2,blue)", "r3"}),
    }
    assert got == expected


def test_primal_triangle():
    p = parse_program("a | b :- c.")
    assert named_edges(p, primal_graph(p)) == {frozenset("ab"), frozenset("ac"), frozenset("bc")}


def test_primal_fact_has_no_edges():
    g = primal_graph(parse_program("a."))
    assert g.n == 1 and g.num_edges() == 0


def test_structural_invariants():
    rng = random.Random(5)
    for _ in range(300):
        p = random_program(rng, max_atoms=10, max_rules=12)
        inc, pri = incidence_graph(p), primal_graph(p)
        assert inc.num_edges() == sum(len(r.atoms) for r in p.rules)
        for u, v in inc.edges():
            assert inc.is_rule_vertex(u) != inc.is_rule_vertex(v)
        for r in p.rules:
            for a, b in combinations(r.atoms, 2):
                assert b in pri.adj[a]


def test_incidence_treewidth_bounded_by_primal_plus_one():
    rng = random.Random(8)
    checked = 0
    while checked < 200:
        p = random_program(rng, max_atoms=6, max_rules=6)
        if p.num_atoms + p.num_rules > 13:
            continue
        inc, pri = build_graph(p, INCIDENCE), build_graph(p, PRIMAL)
        assert exact_treewidth(inc.n, inc.edges()) <= exact_treewidth(pri.n, pri.edges()) + 1
        checked += 1


def test_exact_treewidth_helper_agrees_on_known_graphs():
    assert exact_treewidth(4, nx.complete_graph(4).edges) == 3
    assert exact_treewidth(6, nx.cycle_graph(6).edges) == 2
    assert exact_treewidth(9, nx.convert_node_labels_to_integers(nx.grid_2d_graph(3, 3)).edges) == 3


def test_dot_output_labels_rules():
    p = parse_program("a :- b.")
    dot = incidence_graph(p).to_dot(p)
    assert "shape=box" in dot and '"a"' in dot and "--" in dot
