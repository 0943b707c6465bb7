import random

import networkx as nx
import pytest

from dynacount import MalformedNiceTD, parse_program
from dynacount.decomposition import (NodeKind, NodeType, TreeDecomposition, classify_node,
                                     decompose, elimination_ordering, normalize, validate)
from dynacount.generators import TGridParams, gen_asp_tgrid, random_program
from dynacount.graphs import INCIDENCE, PRIMAL, ProblemGraph, build_graph


def graph(nxg):
    nxg = nx.convert_node_labels_to_integers(nxg)
    return ProblemGraph.from_edges(nxg.number_of_nodes(), nxg.edges)


def random_graph(rng):
    n = rng.randint(1, 200)
    p = rng.uniform(0.5, 6) / max(n - 1, 1)
    return graph(nx.gnp_random_graph(n, min(p, 1.0), seed=rng.randrange(2**31)))


@pytest.mark.parametrize("heuristic", ["min-fill", "min-degree"])
def test_triangle_width_two(heuristic):
    assert decompose(graph(nx.complete_graph(3)), heuristic).width == 2


@pytest.mark.parametrize("heuristic", ["min-fill", "min-degree"])
def test_tree_width_one(heuristic):
    tree = nx.random_labeled_tree(30, seed=4) if hasattr(nx, "random_labeled_tree") \
        else nx.random_tree(30, seed=4)
    assert decompose(graph(tree), heuristic).width == 1


def test_tgrid_primal_width_below_twenty():
    p = gen_asp_tgrid(TGridParams(3, 40, 0.85, seed=1))
    # recorded by running min-fill with seed 0
    assert decompose(build_graph(p, PRIMAL), "min-fill", 0).width == 6


@pytest.mark.parametrize("heuristic,seed,primal,incidence", [
    ("min-fill", 0, 6, 6), ("min-fill", 1, 6, 6), ("min-fill", 2, 6, 6),
    ("min-degree", 0, 8, 7), ("min-degree", 1, 7, 6), ("min-degree", 2, 7, 7),
])
def test_tgrid_recorded_widths(heuristic, seed, primal, incidence):
    p = gen_asp_tgrid(TGridParams(3, 40, 0.85, seed=1))
    assert decompose(build_graph(p, PRIMAL), heuristic, seed).width == primal
    assert decompose(build_graph(p, INCIDENCE), heuristic, seed).width == incidence


def test_single_bag_normalizes_to_chain():
    td = TreeDecomposition([{0}], [()], 0, num_atoms=1)
    ntd = normalize(td)
    assert [k.type for k in ntd.kinds] == [NodeType.LEAF, NodeType.AI, NodeType.AR]
    assert ntd.width == 0


def test_two_bag_path_normalizes_with_single_deltas():
    td = TreeDecomposition.from_parents([{0, 1}, {1, 2}], [1, -1], num_atoms=3)
    ntd = normalize(td)
    assert ntd.width == 1
    assert ntd.bags[ntd.root] == frozenset()
    for t in range(len(ntd)):
        if len(ntd.children[t]) == 1:
            assert len(ntd.bags[t] ^ ntd.bags[ntd.children[t][0]]) == 1
    g = ProblemGraph.from_edges(3, [(0, 1), (1, 2)])
    assert validate(ntd, g) == []


def test_classify_join_ri_leaf():
    td = TreeDecomposition([{0}, {0}, {0}, {0, 2}, set()], [(), (), (0, 1), (2,), ()], 3,
                           num_atoms=2)
    assert classify_node(td, 2).type is NodeType.JOIN
    assert classify_node(td, 3) == NodeKind(NodeType.RI, 0)
    assert classify_node(td, 4).type is NodeType.LEAF
    with pytest.raises(MalformedNiceTD):
        classify_node(td, 0)


def test_validate_missing_edge():
    g = ProblemGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    td = TreeDecomposition.from_parents([{0, 1}, {1, 2}], [1, -1], num_atoms=3)
    diags = validate(td, g)
    assert [d.condition for d in diags] == ["ii"]


def test_validate_disconnected_occurrence():
    g = ProblemGraph.from_edges(3, [(0, 1), (1, 2)])
    td = TreeDecomposition.from_parents([{0, 1}, {1, 2}, {0}], [1, -1, 1], num_atoms=3)
    assert [d.condition for d in validate(td, g)] == ["iii"]


def test_validate_nice_conditions():
    g = ProblemGraph.from_edges(2, [(0, 1)])
    td = TreeDecomposition([{0, 1}], [()], 0, num_atoms=2)
    conds = {d.condition for d in validate(td, g, nice=True)}
    assert conds == {"nice-empty", "nice"}


def test_random_graphs_validate_and_normalize():
    rng = random.Random(99)
    for _ in range(60):
        g = random_graph(rng)
        for h in ("min-fill", "min-degree"):
            td = decompose(g, h, rng.randrange(3))
            assert validate(td, g) == []
            ntd = normalize(td)
            assert ntd.width <= td.width
            assert validate(ntd, g) == []


def test_primal_decompositions_have_no_rule_nodes():
    rng = random.Random(12)
    for _ in range(100):
        p = random_program(rng, max_atoms=10, max_rules=12)
        ntd = normalize(decompose(build_graph(p, PRIMAL), "min-fill", 0))
        for t in range(len(ntd)):
            assert classify_node(ntd, t).type not in (NodeType.RI, NodeType.RR)


def test_incidence_nice_kinds_match_classification():
    p = parse_program("a | b :- c. :- a, not d.")
    g = build_graph(p, INCIDENCE)
    ntd = normalize(decompose(g))
    assert validate(ntd, g) == []
    counts = ntd.kind_counts()
    # every element is forgotten exactly once below the empty root
    assert counts["RR"] == p.num_rules
    assert counts["AR"] == p.num_atoms
    assert counts["RI"] >= counts["RR"] and counts["AI"] >= counts["AR"]


def test_determinism():
    rng = random.Random(1)
    for _ in range(20):
        g = random_graph(rng)
        for h in ("min-fill", "min-degree"):
            a, b = decompose(g, h, 2), decompose(g, h, 2)
            assert a.bags == b.bags and a.children == b.children
            assert normalize(a).to_pace(g.n) == normalize(b).to_pace(g.n)
            assert elimination_ordering(g, h, 2) == elimination_ordering(g, h, 2)


def test_unknown_heuristic():
    with pytest.raises(ValueError):
        elimination_ordering(graph(nx.path_graph(3)), "min-width")


def test_empty_graph():
    td = decompose(ProblemGraph(0))
    assert td.width == -1 and len(normalize(td)) == 1


def test_pace_format():
    td = TreeDecomposition.from_parents([{0, 1}, {1, 2}], [1, -1], num_atoms=3)
    assert td.to_pace(3) == "s td 2 2 3\nb 1 1 2\nb 2 2 3\n2 1\n"
