"""Heuristic tree decompositions and their normalization into nice form."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

from .errors import MalformedNiceTD
from .graphs import ProblemGraph

HEURISTICS = ("min-fill", "min-degree")


class NodeType(str, Enum):
    LEAF = "LEAF"
    JOIN = "JOIN"
    AI = "AI"
    AR = "AR"
    RI = "RI"
    RR = "RR"


class NodeKind(NamedTuple):
    type: NodeType
    element: Optional[int] = None  # atom id for AI/AR, rule id for RI/RR


@dataclass(frozen=True)
class Diagnostic:
    condition: str
    message: str


class TreeDecomposition:
    """Rooted tree of bags; node ``root`` has no parent."""

    def __init__(self, bags, children, root: int, num_atoms: int, graph_kind=None):
        self.bags: list[frozenset] = [frozenset(b) for b in bags]
        self.children: list[tuple] = [tuple(c) for c in children]
        self.root = root
        self.num_atoms = num_atoms
        self.graph_kind = graph_kind

    @classmethod
    def from_parents(cls, bags, parent, num_atoms: int, graph_kind=None):
        children = [[] for _ in bags]
        root = None
        for t, p in enumerate(parent):
            if p < 0:
                root = t
            else:
                children[p].append(t)
        return cls(bags, children, root, num_atoms, graph_kind)

    def __len__(self):
        return len(self.bags)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def parents(self) -> list[int]:
        parent = [-1] * len(self.bags)
        for t, cs in enumerate(self.children):
            for c in cs:
                parent[c] = t
        return parent

    def postorder(self) -> list[int]:
        order, stack = [], [(self.root, False)]
        while stack:
            t, done = stack.pop()
            if done:
                order.append(t)
                continue
            stack.append((t, True))
            stack.extend((c, False) for c in reversed(self.children[t]))
        return order

    def to_pace(self, n_vertices: int) -> str:
        """PACE ``.td`` text: 1-based bag ids and vertex ids."""
        lines = [f"s td {len(self.bags)} {self.width + 1} {n_vertices}"]
        for t, bag in enumerate(self.bags):
            lines.append(" ".join(["b", str(t + 1)] + [str(v + 1) for v in sorted(bag)]))
        for t, cs in enumerate(self.children):
            lines.extend(f"{t + 1} {c + 1}" for c in cs)
        return "\n".join(lines) + "\n"


class NiceTreeDecomposition(TreeDecomposition):
    """Nice decomposition; nodes are numbered children-first, root last."""

    def __init__(self, bags, children, kinds, num_atoms: int, graph_kind=None):
        super().__init__(bags, children, len(bags) - 1, num_atoms, graph_kind)
        self.kinds: list[NodeKind] = list(kinds)

    def postorder(self) -> list[int]:
        return list(range(len(self.bags)))

    def kind_counts(self) -> dict:
        counts = {t.value: 0 for t in NodeType}
        for k in self.kinds:
            counts[k.type.value] += 1
        return counts


def elimination_ordering(g: ProblemGraph, heuristic: str = "min-fill", seed: int = 0):
    """Greedy elimination ordering; returns ``(order, bags)``.

    ``bags[i]`` is the eliminated vertex together with its neighbours at the
    time of elimination. Ties on the heuristic score are broken by a random
    vertex permutation drawn from ``random.Random(seed)``.
    """
    if heuristic not in HEURISTICS:
        raise ValueError(f"unknown heuristic {heuristic!r}")
    n = g.n
    adj = [set(s) for s in g.adj]
    tiebreak = list(range(n))
    random.Random(seed).shuffle(tiebreak)
    fill = heuristic == "min-fill"

    def score(v):
        nb = adj[v]
        if not fill:
            return len(nb)
        d = len(nb)
        inner = sum(len(adj[u] & nb) for u in nb) // 2
        return d * (d - 1) // 2 - inner

    current = [score(v) for v in range(n)]
    heap = [(current[v], tiebreak[v], v) for v in range(n)]
    heapq.heapify(heap)
    gone = [False] * n
    order, bags = [], []
    while heap:
        s, _, v = heapq.heappop(heap)
        if gone[v] or s != current[v]:
            continue
        gone[v] = True
        nb = adj[v]
        order.append(v)
        bags.append(frozenset(nb) | {v})
        for u in nb:
            adj[u].discard(v)
            adj[u] |= nb
            adj[u].discard(u)
        touched = set(nb)
        if fill:
            for u in nb:
                touched |= adj[u]
        adj[v] = set()
        for u in touched:
            if not gone[u]:
                s2 = score(u)
                if s2 != current[u]:
                    current[u] = s2
                    heapq.heappush(heap, (s2, tiebreak[u], u))
    return order, bags


def decompose(g: ProblemGraph, heuristic: str = "min-fill", seed: int = 0) -> TreeDecomposition:
    """Tree decomposition from the elimination cliques of a greedy ordering."""
    order, bags = elimination_ordering(g, heuristic, seed)
    if not order:
        return TreeDecomposition([frozenset()], [()], 0, g.num_atoms, g.kind)
    pos = {v: i for i, v in enumerate(order)}
    parent = []
    roots = []
    for i, (v, bag) in enumerate(zip(order, bags)):
        later = [pos[u] for u in bag if u != v]
        if later:
            parent.append(min(later))
        else:
            parent.append(-1)
            roots.append(i)
    # components are vertex-disjoint, so hanging them under one root is valid
    for r in roots[:-1]:
        parent[r] = roots[-1]
    return TreeDecomposition.from_parents(bags, parent, g.num_atoms, g.kind)


def _delta_kind(x: int, num_atoms: int, introduce: bool) -> NodeKind:
    if x < num_atoms:
        return NodeKind(NodeType.AI if introduce else NodeType.AR, x)
    return NodeKind(NodeType.RI if introduce else NodeType.RR, x - num_atoms)


def normalize(td: TreeDecomposition) -> NiceTreeDecomposition:
    """Nice decomposition of ``td`` with empty root and leaf bags.

    Between a child bag and its parent bag, elements are first removed (rules
    before atoms) and then introduced (atoms before rules), so the width never
    grows. Nodes with more than two children become chains of join nodes.
    """
    num_atoms = td.num_atoms
    bags: list[frozenset] = []
    children: list[tuple] = []
    kinds: list[NodeKind] = []

    def create(bag, kids, kind):
        bags.append(bag)
        children.append(kids)
        kinds.append(kind)
        return len(bags) - 1

    def chain(node, frm, to):
        bag = frm
        for x in sorted(frm - to, key=lambda x: (x < num_atoms, x)):
            bag = bag - {x}
            node = create(bag, (node,), _delta_kind(x, num_atoms, False))
        for x in sorted(to - frm, key=lambda x: (x >= num_atoms, x)):
            bag = bag | {x}
            node = create(bag, (node,), _delta_kind(x, num_atoms, True))
        return node

    empty = frozenset()
    top = {}
    for t in td.postorder():
        bag = td.bags[t]
        if not td.children[t]:
            leaf = create(empty, (), NodeKind(NodeType.LEAF))
            top[t] = chain(leaf, empty, bag)
            continue
        tops = [chain(top.pop(c), td.bags[c], bag) for c in td.children[t]]
        node = tops[0]
        for other in tops[1:]:
            node = create(bag, (node, other), NodeKind(NodeType.JOIN))
        top[t] = node
    root = top[td.root]
    root = chain(root, td.bags[td.root], empty)
    assert root == len(bags) - 1
    return NiceTreeDecomposition(bags, children, kinds, num_atoms, td.graph_kind)


def classify_node(ntd: TreeDecomposition, node: int) -> NodeKind:
    """Node kind derived from bags alone; raises ``MalformedNiceTD`` otherwise."""
    bag = ntd.bags[node]
    kids = ntd.children[node]
    if not kids:
        if bag:
            raise MalformedNiceTD(f"leaf {node} has non-empty bag")
        return NodeKind(NodeType.LEAF)
    if len(kids) == 2:
        if ntd.bags[kids[0]] == bag and ntd.bags[kids[1]] == bag:
            return NodeKind(NodeType.JOIN)
        raise MalformedNiceTD(f"join {node} has children with different bags")
    if len(kids) > 2:
        raise MalformedNiceTD(f"node {node} has {len(kids)} children")
    child = ntd.bags[kids[0]]
    added, removed = bag - child, child - bag
    if len(added) == 1 and not removed:
        return _delta_kind(next(iter(added)), ntd.num_atoms, True)
    if len(removed) == 1 and not added:
        return _delta_kind(next(iter(removed)), ntd.num_atoms, False)
    raise MalformedNiceTD(f"node {node} differs from its child in {len(added) + len(removed)} elements")


def validate(td: TreeDecomposition, g: ProblemGraph, nice: Optional[bool] = None) -> list[Diagnostic]:
    """Every violated decomposition condition, one diagnostic each.

    Nice-form conditions are checked for ``NiceTreeDecomposition`` inputs (or
    when ``nice=True``).
    """
    if nice is None:
        nice = isinstance(td, NiceTreeDecomposition)
    out: list[Diagnostic] = []
    n_nodes = len(td.bags)

    parent = [-1] * n_nodes
    for t, cs in enumerate(td.children):
        for c in cs:
            if parent[c] != -1 or c == td.root:
                out.append(Diagnostic("tree", f"node {c} has more than one parent"))
            parent[c] = t
    seen, stack = set(), [td.root] if n_nodes else []
    while stack:
        t = stack.pop()
        if t in seen:
            continue
        seen.add(t)
        stack.extend(td.children[t])
    if len(seen) != n_nodes:
        out.append(Diagnostic("tree", f"{n_nodes - len(seen)} nodes unreachable from the root"))

    covered = set()
    for bag in td.bags:
        covered |= bag
    for v in g.vertices():
        if v not in covered:
            out.append(Diagnostic("i", f"vertex {v} is in no bag"))

    holders = {}
    for t, bag in enumerate(td.bags):
        for v in bag:
            holders.setdefault(v, []).append(t)
    for u, v in g.edges():
        tu, tv = holders.get(u, ()), holders.get(v, ())
        small, other = (tu, v) if len(tu) <= len(tv) else (tv, u)
        if not any(other in td.bags[t] for t in small):
            out.append(Diagnostic("ii", f"edge {{{u},{v}}} is in no bag"))

    for v, ts in holders.items():
        tops = [t for t in ts if parent[t] < 0 or v not in td.bags[parent[t]]]
        if len(tops) > 1:
            out.append(Diagnostic("iii", f"nodes containing {v} are disconnected ({len(tops)} parts)"))

    if nice:
        if td.bags[td.root]:
            out.append(Diagnostic("nice-empty", "root bag is not empty"))
        for t in range(n_nodes):
            try:
                kind = classify_node(td, t)
            except MalformedNiceTD as exc:
                out.append(Diagnostic("nice", str(exc)))
                continue
            kinds = getattr(td, "kinds", None)
            if kinds is not None and kinds[t] != kind:
                out.append(Diagnostic("nice", f"node {t} labelled {kinds[t]} but is {kind}"))
    return out
