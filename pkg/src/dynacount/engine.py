"""Bottom-up evaluation of a nice tree decomposition with counted tuples."""

from __future__ import annotations

import gc
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

from .decomposition import NiceTreeDecomposition, NodeKind, NodeType
from .errors import GraphKindMismatch
from .program import GroundProgram


class Node(NamedTuple):
    """What a transition sees of one decomposition node.

    Bag elements are addressed by slots: an atom (or rule) keeps the same slot
    on every node whose bag contains it, and slots stay below the bag size, so
    tuple components are small bitmasks. ``bit`` is the slot bit of the
    introduced or removed atom/rule (taken from the child for removals).
    """

    kind: NodeKind
    atom_slot: dict
    rule_slot: dict
    bit: int
    atom_width: int


@dataclass(frozen=True)
class Algorithm:
    name: str
    graph_kind: str
    transition: Callable[[Node, list, GroundProgram], dict]
    accept: tuple | int


@dataclass
class RunStats:
    algorithm: str = ""
    width: int = 0
    nodes: int = 0
    max_table: int = 0
    tuples_total: int = 0
    times_ms: dict = field(default_factory=dict)


@contextmanager
def paused_gc():
    """Suspend the cycle collector.

    Tables, bags and graphs are acyclic (ints, tuples, frozensets), so
    collection passes only rescan a growing heap while millions of keys are
    allocated.
    """
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def merge_tuples(raw: Iterable[tuple]) -> dict:
    """Collapse ``(key, count)`` pairs into a table, summing counts per key."""
    table: dict = {}
    for key, n in raw:
        table[key] = table.get(key, 0) + n
    return table


def assign_slots(ntd: NiceTreeDecomposition):
    """Per-node slot maps for atoms and rules, assigned from the root down."""
    n_nodes = len(ntd)
    num_atoms = ntd.num_atoms
    atom_maps: list = [None] * n_nodes
    rule_maps: list = [None] * n_nodes
    parent = ntd.parents()
    width = 0
    for t in range(n_nodes - 1, -1, -1):
        p = parent[t]
        inherited_a = atom_maps[p] if p >= 0 else {}
        inherited_r = rule_maps[p] if p >= 0 else {}
        amap, rmap = {}, {}
        fresh = []
        for v in ntd.bags[t]:
            if v < num_atoms:
                if v in inherited_a:
                    amap[v] = inherited_a[v]
                else:
                    fresh.append(v)
            else:
                r = v - num_atoms
                if r in inherited_r:
                    rmap[r] = inherited_r[r]
                else:
                    fresh.append(v)
        if fresh:
            used_a, used_r = set(amap.values()), set(rmap.values())
            na = nr = 0
            for v in sorted(fresh):
                if v < num_atoms:
                    while na in used_a:
                        na += 1
                    amap[v] = na
                    used_a.add(na)
                else:
                    while nr in used_r:
                        nr += 1
                    rmap[v - num_atoms] = nr
                    used_r.add(nr)
        if amap:
            width = max(width, max(amap.values()) + 1)
        atom_maps[t], rule_maps[t] = amap, rmap
    return atom_maps, rule_maps, width


def traverse(ntd: NiceTreeDecomposition, alg: Algorithm, p: GroundProgram):
    """Run ``alg`` from the leaves to the root; return ``(count, RunStats)``.

    Child tables are dropped as soon as their parent table exists, so only
    the root table is alive at the end.
    """
    if ntd.graph_kind != alg.graph_kind:
        raise GraphKindMismatch(
            f"{alg.name} needs a {alg.graph_kind} decomposition, got {ntd.graph_kind}")
    stats = RunStats(algorithm=alg.name, width=ntd.width, nodes=len(ntd))
    t0 = time.perf_counter()
    if p.has_empty_rule():
        # the rule "⊥ ← ⊤" has no model; no vertex of the primal graph sees it
        stats.times_ms["dp"] = 0.0
        return 0, stats

    atom_maps, rule_maps, aw = assign_slots(ntd)
    with paused_gc():
        tables = _run(ntd, alg, p, atom_maps, rule_maps, aw, stats)
    root = tables[ntd.root]
    stats.times_ms["dp"] = (time.perf_counter() - t0) * 1000
    return root.get(alg.accept, 0), stats


def _run(ntd, alg, p, atom_maps, rule_maps, aw, stats) -> dict:
    tables: dict[int, dict] = {}
    for t in range(len(ntd)):
        kind = ntd.kinds[t]
        kids = ntd.children[t]
        bit = 0
        if kind.type is NodeType.AI:
            bit = 1 << atom_maps[t][kind.element]
        elif kind.type is NodeType.AR:
            bit = 1 << atom_maps[kids[0]][kind.element]
        elif kind.type is NodeType.RI:
            bit = 1 << rule_maps[t][kind.element]
        elif kind.type is NodeType.RR:
            bit = 1 << rule_maps[kids[0]][kind.element]
        node = Node(kind, atom_maps[t], rule_maps[t], bit, aw)
        child_tables = [tables.pop(c) for c in kids]
        table = alg.transition(node, child_tables, p)
        tables[t] = table
        stats.tuples_total += len(table)
        if len(table) > stats.max_table:
            stats.max_table = len(table)
    return tables
