"""Incidence and primal graphs of ground programs."""

from __future__ import annotations

from itertools import combinations

from .program import GroundProgram

INCIDENCE = "incidence"
PRIMAL = "primal"


class ProblemGraph:
    """Simple undirected graph over integer vertices.

    Atom ``a`` is vertex ``a``; in the incidence form rule ``r`` is vertex
    ``num_atoms + r``. A plain graph (``kind=None``) has no rule vertices.
    """

    def __init__(self, n_vertices: int, num_atoms: int | None = None, kind: str | None = None):
        self.adj: list[set[int]] = [set() for _ in range(n_vertices)]
        self.num_atoms = n_vertices if num_atoms is None else num_atoms
        self.kind = kind

    @classmethod
    def from_edges(cls, n_vertices: int, edges) -> "ProblemGraph":
        g = cls(n_vertices)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop on vertex {u}")
        self.adj[u].add(v)
        self.adj[v].add(u)

    @property
    def n(self) -> int:
        return len(self.adj)

    def vertices(self) -> range:
        return range(len(self.adj))

    def edges(self):
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def is_rule_vertex(self, v: int) -> bool:
        return v >= self.num_atoms

    def rule_of(self, v: int) -> int:
        return v - self.num_atoms

    def label(self, v: int, program: GroundProgram | None = None) -> str:
        if self.is_rule_vertex(v):
            return f"r{self.rule_of(v)}"
        return program.atom_name(v) if program is not None else str(v)

    def to_dot(self, program: GroundProgram | None = None) -> str:
        lines = [f"graph {self.kind or 'g'} {{"]
        for v in self.vertices():
            shape = "box" if self.is_rule_vertex(v) else "ellipse"
            label = self.label(v, program).replace('"', '\\"')
            lines.append(f'  {v} [label="{label}", shape={shape}];')
        lines.extend(f"  {u} -- {v};" for u, v in self.edges())
        lines.append("}")
        return "\n".join(lines) + "\n"


def incidence_graph(p: GroundProgram) -> ProblemGraph:
    g = ProblemGraph(p.num_atoms + p.num_rules, p.num_atoms, INCIDENCE)
    for r in p.rules:
        for a in r.atoms:
            g.add_edge(a, p.num_atoms + r.id)
    return g


def primal_graph(p: GroundProgram) -> ProblemGraph:
    g = ProblemGraph(p.num_atoms, p.num_atoms, PRIMAL)
    for r in p.rules:
        for a, b in combinations(sorted(r.atoms), 2):
            g.add_edge(a, b)
    return g


def build_graph(p: GroundProgram, kind: str) -> ProblemGraph:
    if kind == INCIDENCE:
        return incidence_graph(p)
    if kind == PRIMAL:
        return primal_graph(p)
    raise ValueError(f"unknown graph kind {kind!r}")
