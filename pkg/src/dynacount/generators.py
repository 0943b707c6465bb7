"""Benchmark instance generators: TGrid families and graph-problem encodings.

All random draws come from ``random.Random(seed)`` (Mersenne Twister) in a
fixed order, so an instance is a pure function of its parameters:

1. cells ``(i, j)`` with ``2 <= i <= k`` and ``2 <= j <= l`` in row-major order;
   per cell one ``random() < p`` clause coin, and only if it succeeds, nine
   sign coins ``random() < 0.5`` (``True`` = positive) in listed literal order;
2. (2ASP only) per grid variable in row-major order one ``random() < q``
   coin placing it in the existential block.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from itertools import product

import networkx as nx

from .program import GroundProgram, ProgramBuilder

Var = tuple  # (i, j)
Literal = tuple  # (Var, positive: bool)


@dataclass(frozen=True)
class TGridParams:
    k: int
    l: int
    p: float
    seed: int = 0
    q: float = 1.0

    def __post_init__(self):
        if self.k < 1 or self.l < 1:
            raise ValueError("k and l must be positive")
        if not 0 < self.p <= 1:
            raise ValueError("p must lie in (0, 1]")
        if not 0 < self.q <= 1:
            raise ValueError("q must lie in (0, 1]")

    @property
    def variables(self) -> list:
        return [(i, j) for i in range(1, self.k + 1) for j in range(1, self.l + 1)]

    def expected_clauses(self) -> float:
        return 3 * self.p * max(self.k - 1, 0) * max(self.l - 1, 0)


def _triangle_clauses(i: int, j: int):
    return (
        ((i, j), (i - 1, j), (i, j - 1)),
        ((i, j), (i - 1, j), (i - 1, j - 1)),
        ((i, j), (i - 1, j - 1), (i, j - 1)),
    )


def _draw_clauses(params: TGridParams, rng: random.Random) -> list:
    clauses = []
    for i in range(2, params.k + 1):
        for j in range(2, params.l + 1):
            if not rng.random() < params.p:
                continue
            signs = [rng.random() < 0.5 for _ in range(9)]
            for c, cells in enumerate(_triangle_clauses(i, j)):
                clauses.append(tuple(zip(cells, signs[3 * c:3 * c + 3])))
    return clauses


def gen_sat_tgrid(params: TGridParams) -> list:
    """Random 3-CNF over the k x l grid; a clause is a tuple of ``((i, j), sign)``."""
    return _draw_clauses(params, random.Random(params.seed))


def _var(v: Var) -> str:
    return f"x({v[0]},{v[1]})"


def _neg(v: Var) -> str:
    return f"nx({v[0]},{v[1]})"


def _false_atom(lit: Literal) -> str:
    """Atom that is true exactly when the literal is false."""
    v, positive = lit
    return _neg(v) if positive else _var(v)


def _true_atom(lit: Literal) -> str:
    v, positive = lit
    return _var(v) if positive else _neg(v)


def _guess(b: ProgramBuilder, v: Var) -> None:
    b.rule(head=[_var(v), _neg(v)])
    b.rule(pos=[_var(v), _neg(v)])


def cnf_to_asp(variables, clauses) -> GroundProgram:
    """Answer sets of the result correspond one-to-one to models of the CNF."""
    b = ProgramBuilder()
    for v in variables:
        _guess(b, v)
    for clause in clauses:
        b.rule(pos=[_false_atom(lit) for lit in clause])
    return b.build()


def gen_asp_tgrid(params: TGridParams) -> GroundProgram:
    return cnf_to_asp(params.variables, gen_sat_tgrid(params))


def gen_2qbf_tgrid(params: TGridParams):
    """``(exists_vars, forall_vars, clauses)`` of a random 2QBF ``∃X ∀Y F``."""
    rng = random.Random(params.seed)
    clauses = _draw_clauses(params, rng)
    exists, forall = [], []
    for v in params.variables:
        (exists if rng.random() < params.q else forall).append(v)
    return exists, forall, clauses


def qbf_to_asp(exists, forall, clauses) -> GroundProgram:
    """Saturation encoding; answer sets correspond to ``σ`` over ``exists``
    such that every extension to ``forall`` satisfies all clauses.

    ``w`` is derived once every clause holds (via per-clause atoms ``s(c)``
    and the chain ``g(c)``); deriving ``w`` saturates the universal guesses and
    ``:- not w`` keeps only saturated candidates.
    """
    b = ProgramBuilder()
    for v in exists:
        _guess(b, v)
    for v in forall:
        b.rule(head=[_var(v), _neg(v)])
        b.rule(head=[_var(v)], pos=["w"])
        b.rule(head=[_neg(v)], pos=["w"])
    for c, clause in enumerate(clauses):
        for lit in clause:
            b.rule(head=[f"s({c})"], pos=[_true_atom(lit)])
        b.rule(head=[f"g({c})"], pos=[f"s({c})"] + ([f"g({c - 1})"] if c else []))
    b.rule(head=["w"], pos=[f"g({len(clauses) - 1})"] if clauses else [])
    b.rule(neg=["w"])
    return b.build()


def gen_2asp_tgrid(params: TGridParams) -> GroundProgram:
    return qbf_to_asp(*gen_2qbf_tgrid(params))


def count_cnf_models(variables, clauses) -> int:
    """Count models by enumerating every assignment."""
    variables = list(variables)
    total = 0
    for bits in product((False, True), repeat=len(variables)):
        val = dict(zip(variables, bits))
        if all(any(val[v] == s for v, s in c) for c in clauses):
            total += 1
    return total


def count_exists_forall(exists, forall, clauses) -> int:
    """Number of assignments to ``exists`` under which every assignment to
    ``forall`` satisfies the clauses (plain enumeration of both blocks)."""
    total = 0
    for ebits in product((False, True), repeat=len(exists)):
        val = dict(zip(exists, ebits))
        ok = True
        for fbits in product((False, True), repeat=len(forall)):
            val.update(zip(forall, fbits))
            if not all(any(val[v] == s for v, s in c) for c in clauses):
                ok = False
                break
        total += ok
    return total


def to_dimacs(params: TGridParams, clauses) -> str:
    lines = [f"c sat-tgrid k={params.k} l={params.l} p={params.p} seed={params.seed}",
             f"p cnf {params.k * params.l} {len(clauses)}"]
    for clause in clauses:
        lits = [((i - 1) * params.l + j) * (1 if s else -1) for (i, j), s in clause]
        lines.append(" ".join(map(str, lits)) + " 0")
    return "\n".join(lines) + "\n"


# -- graph problems ----------------------------------------------------------

PROBLEMS = ("2col", "3col", "ds", "svc")
_CONST = re.compile(r"([a-z][A-Za-z0-9_']*|-?[0-9]+)\Z")


def _constants(g: nx.Graph) -> dict:
    """Vertex -> constant usable inside an atom; invalid names become ``v<k>``."""
    out, used = {}, set()
    for k, v in enumerate(g.nodes):
        name = str(v)
        if not _CONST.match(name) or name in used:
            name = f"v{k}"
            while name in used:
                name += "_"
        used.add(name)
        out[v] = name
    return out


def encode_graph_problem(problem: str, g: nx.Graph) -> GroundProgram:
    """Ground program whose answer sets are the solutions of ``problem`` on ``g``.

    ``2col``/``3col``: proper colorings; ``svc``: subset-minimal vertex covers;
    ``ds``: minimal dominating sets.
    """
    name = _constants(g)
    b = ProgramBuilder()
    if problem in ("2col", "3col"):
        colors = range(1, 3 if problem == "2col" else 4)
        for v in g.nodes:
            b.rule(head=[f"col({name[v]},{c})" for c in colors])
        for u, v in g.edges:
            for c in colors:
                b.rule(pos=[f"col({name[u]},{c})", f"col({name[v]},{c})"])
    elif problem == "svc":
        for u, v in g.edges:
            b.rule(head=[f"in({name[u]})", f"in({name[v]})"])
    elif problem == "ds":
        for v in g.nodes:
            closed = [v, *sorted(g.neighbors(v), key=str)]
            b.rule(head=[f"d({name[u]})" for u in closed])
    else:
        raise ValueError(f"unknown problem {problem!r}; expected one of {PROBLEMS}")
    return b.build()


# -- random programs for testing ---------------------------------------------

def random_program(rng: random.Random, max_atoms: int = 8, max_rules: int = 10,
                   disjunction: bool = True, negation: bool = True) -> GroundProgram:
    """Small random program; every atom is declared even if no rule uses it."""
    n_atoms = rng.randint(1, max_atoms)
    n_rules = rng.randint(0, max_rules)
    names = [f"a{i}" for i in range(n_atoms)]
    b = ProgramBuilder()
    for n in names:
        b.atom(n)
    for _ in range(n_rules):
        size = rng.randint(1, min(4, n_atoms))
        atoms = rng.sample(names, size)
        head, pos, neg = [], [], []
        for a in atoms:
            roll = rng.random()
            if roll < 0.45 and (disjunction or not head):
                head.append(a)
            elif roll < 0.75 or not negation:
                pos.append(a)
            else:
                neg.append(a)
        b.rule(head, pos, neg)
    return b.build()


def random_cnf_program(rng: random.Random, max_vars: int = 8, max_clauses: int = 12):
    """``(program, n_atoms)`` where every clause becomes a constraint ``:- ~c``.

    Variables are plain atoms, so the classical model count of the program is
    the model count of the CNF.
    """
    n = rng.randint(1, max_vars)
    b = ProgramBuilder()
    for i in range(n):
        b.atom(f"v{i}")
    for _ in range(rng.randint(0, max_clauses)):
        width = rng.randint(1, min(3, n))
        vs = rng.sample(range(n), width)
        pos, neg = [], []
        for v in vs:
            # clause literal v (positive) is violated when v is false
            (neg if rng.random() < 0.5 else pos).append(f"v{v}")
        b.rule(pos=pos, neg=neg)
    return b.build()


def binomial_sigma(n: int, p: float) -> float:
    return math.sqrt(n * p * (1 - p))
