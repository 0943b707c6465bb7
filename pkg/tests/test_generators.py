import random
from itertools import product

import networkx as nx
import pytest

from dynacount import count, count_answer_sets_bruteforce, parse_program
from dynacount.generators import (TGridParams, binomial_sigma, cnf_to_asp, count_cnf_models,
                                  count_exists_forall, encode_graph_problem, gen_2asp_tgrid,
                                  gen_2qbf_tgrid, gen_asp_tgrid, gen_sat_tgrid, qbf_to_asp,
                                  to_dimacs)
from dynacount.parser import render_program


def test_single_cell_gives_three_clauses():
    params = TGridParams(2, 2, 1.0, seed=0)
    clauses = gen_sat_tgrid(params)
    assert len(clauses) == 3
    assert {v for c in clauses for v, _ in c} == set(params.variables)
    assert to_dimacs(params, clauses).splitlines()[1] == "p cnf 4 3"


def test_clauses_follow_triangles():
    for clause in gen_sat_tgrid(TGridParams(4, 6, 1.0, seed=3)):
        cells = [v for v, _ in clause]
        (i, j) = cells[0]
        assert len(set(cells)) == 3
        assert all(i - 1 <= a <= i and j - 1 <= b <= j for a, b in cells)


def test_clause_count_within_three_sigma():
    params = [TGridParams(3, 40, 0.85, seed=s) for s in range(100)]
    mean = 3 * 0.85 * 2 * 39
    assert params[0].expected_clauses() == pytest.approx(198.9)
    # clauses come in triples per selected cell, so the binomial is over cells
    sigma = 3 * binomial_sigma(2 * 39, 0.85)
    counts = [len(gen_sat_tgrid(p)) for p in params]
    assert all(abs(c - mean) <= 3 * sigma for c in counts)
    assert abs(sum(counts) / len(counts) - mean) <= 3 * sigma / 10


def test_determinism():
    a = TGridParams(3, 10, 0.5, seed=8, q=0.4)
    assert gen_sat_tgrid(a) == gen_sat_tgrid(a)
    assert render_program(gen_2asp_tgrid(a)) == render_program(gen_2asp_tgrid(a))
    assert gen_sat_tgrid(a) != gen_sat_tgrid(TGridParams(3, 10, 0.5, seed=9))


def test_invalid_params():
    with pytest.raises(ValueError):
        TGridParams(0, 3, 0.5)
    with pytest.raises(ValueError):
        TGridParams(2, 3, 0.0)


X, Y = (1, 1), (1, 2)


def test_toy_clause_correspondence():
    clauses = [((X, True), (Y, True))]
    prog = cnf_to_asp([X, Y], clauses)
    assert count_answer_sets_bruteforce(prog) == count_cnf_models([X, Y], clauses) == 3


def test_frozen_instance_correspondence():
    params = TGridParams(2, 2, 1.0, seed=11)
    clauses = gen_sat_tgrid(params)
    assert count_cnf_models(params.variables, clauses) == 11
    assert count_answer_sets_bruteforce(gen_asp_tgrid(params)) == 11


def test_no_clauses_leaves_variables_free():
    params = next(TGridParams(2, 3, 0.05, seed=s) for s in range(100)
                  if not gen_sat_tgrid(TGridParams(2, 3, 0.05, seed=s)))
    assert count(gen_asp_tgrid(params), "prim") == 2 ** 6


def test_saturation_toy():
    clauses = [((X, True), (Y, True))]
    assert count_exists_forall([X], [Y], clauses) == 1
    prog = qbf_to_asp([X], [Y], clauses)
    assert count_answer_sets_bruteforce(prog) == 1
    for alg in ("inc", "prim", "invprim"):
        assert count(prog, alg) == 1


def test_saturation_without_universals_matches_plain_encoding():
    params = TGridParams(2, 3, 0.9, seed=5, q=1.0)
    exists, forall, _ = gen_2qbf_tgrid(params)
    assert forall == []
    assert count(gen_2asp_tgrid(params), "inc") == count(gen_asp_tgrid(params), "inc")


def test_saturation_unsatisfiable():
    clauses = [((X, True),), ((X, False),)]
    assert count_answer_sets_bruteforce(qbf_to_asp([X], [Y], clauses)) == 0


def test_saturation_random():
    rng = random.Random(4)
    for _ in range(40):
        params = TGridParams(2, rng.randint(2, 4), rng.choice([0.3, 0.6, 1.0]),
                             seed=rng.randrange(10**6), q=rng.choice([0.3, 0.5, 0.8]))
        e, f, c = gen_2qbf_tgrid(params)
        assert count(qbf_to_asp(e, f, c), "prim") == count_exists_forall(e, f, c)


def test_three_coloring_triangle_and_k4():
    assert count(encode_graph_problem("3col", nx.complete_graph(3)), "inc") == 6
    assert count(encode_graph_problem("3col", nx.complete_graph(4)), "inc") == 0


def test_two_coloring_cycles():
    assert count(encode_graph_problem("2col", nx.cycle_graph(6)), "prim") == 2
    assert count(encode_graph_problem("2col", nx.cycle_graph(5)), "prim") == 0


def test_vertex_cover_and_dominating_set():
    assert count(encode_graph_problem("svc", nx.Graph([("u", "v")])), "inc") == 2
    assert count(encode_graph_problem("ds", nx.path_graph(["a", "b", "c"])), "inc") == 2


def test_dominating_set_matches_enumeration():
    rng = random.Random(2)
    for _ in range(20):
        g = nx.gnp_random_graph(rng.randint(1, 7), 0.4, seed=rng.randrange(1000))
        nodes = list(g.nodes)
        dom = []
        for bits in product((0, 1), repeat=len(nodes)):
            s = {v for v, b in zip(nodes, bits) if b}
            if all(v in s or s & set(g[v]) for v in nodes):
                dom.append(frozenset(s))
        minimal = [s for s in dom if not any(o < s for o in dom)]
        assert count(encode_graph_problem("ds", g), "prim") == len(minimal)


def test_three_colorings_divisible_by_six():
    rng = random.Random(10)
    for _ in range(15):
        g = nx.gnp_random_graph(rng.randint(2, 7), 0.5, seed=rng.randrange(1000))
        if g.number_of_edges() == 0:
            continue
        assert count(encode_graph_problem("3col", g), "invprim") % 6 == 0


def test_encoding_schema_and_vertex_names():
    g = nx.Graph([("Alice", "b"), ("b", "c")])
    prog = encode_graph_problem("3col", g)
    heads = {a for r in prog.rules for a in r.head}
    assert len(heads) == 3 * 3
    assert "col(v0,1)" in {prog.atom_name(a) for a in heads}
    parse_program(render_program(prog))


def test_unknown_problem():
    with pytest.raises(ValueError):
        encode_graph_problem("4col", nx.path_graph(2))


def test_tgrid_program_round_trip():
    prog = gen_asp_tgrid(TGridParams(3, 40, 0.85, seed=1))
    back = parse_program(render_program(prog))
    assert render_program(back) == render_program(prog)
    assert back.num_atoms == prog.num_atoms == 240
