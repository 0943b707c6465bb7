"""Per-node transitions of the INC, PRIM and INVPRIM counters and SAT mode.

Tuples are keyed by slot bitmasks (see ``engine.Node``):

* INC      ``(M, S, C)``: ``C`` is a frozenset of certificates ``A | R << atom_width``.
* PRIM     ``(M, C)``: ``C`` is a frozenset of atom masks ``A``.
* INVPRIM  ``(M, D)``: ``D`` holds the subsets of ``M`` that are dead, i.e.
  the complement of PRIM's ``C`` within all subsets of ``M``.
* SAT mode ``(M, S)`` on incidence or ``M`` on primal decompositions.

A certificate ``A`` stands for a partial interpretation strictly below the
partial model ``M`` that may still model the reduct; a tuple reaching the
empty root without certificates is an answer set.
"""

from __future__ import annotations

from functools import partial

from .decomposition import NodeType
from .engine import Algorithm, Node
from .graphs import INCIDENCE, PRIMAL
from .program import GroundProgram

EMPTY = frozenset()

LEAF, JOIN = NodeType.LEAF, NodeType.JOIN
AI, AR, RI, RR = NodeType.AI, NodeType.AR, NodeType.RI, NodeType.RR


def induced_rules(bag_atoms, p: GroundProgram) -> frozenset:
    """Rules all of whose atoms lie in ``bag_atoms``."""
    bag = frozenset(bag_atoms)
    return frozenset(r.id for r in p.rules if r.atoms and r.atoms <= bag)


def _masks(r, slot: dict):
    h = pm = n = 0
    for a in r.head:
        if a in slot:
            h |= 1 << slot[a]
    for a in r.pos_body:
        if a in slot:
            pm |= 1 << slot[a]
    for a in r.neg_body:
        if a in slot:
            n |= 1 << slot[a]
    return h, pm, n


def _bag_rules_with(node: Node, p: GroundProgram):
    """``(rule bit, head, pos, neg)`` for bag rules containing the new atom."""
    a = node.kind.element
    out = []
    for rid in p.atom_rules[a]:
        if rid in node.rule_slot:
            out.append((1 << node.rule_slot[rid],) + _masks(p.rules[rid], node.atom_slot))
    return out


def _induced_with(node: Node, p: GroundProgram):
    """``(head, pos, neg)`` for rules induced by the bag that contain the new atom."""
    a = node.kind.element
    slot = node.atom_slot
    out = []
    for rid in p.atom_rules[a]:
        r = p.rules[rid]
        if all(b in slot for b in r.atoms):
            out.append(_masks(r, slot))
    return out


def _sat_bits(m: int, rules) -> int:
    """Bits of rules whose bag restriction is modelled by ``m``."""
    bits = 0
    for rb, h, pm, n in rules:
        if m & h or pm & ~m or m & n:
            bits |= rb
    return bits


def _red_bits(a: int, m: int, rules) -> int:
    """Bits of rules whose reduct w.r.t. ``m`` (restricted) is modelled by ``a``."""
    bits = 0
    for rb, h, pm, n in rules:
        if m & n or a & h or pm & ~a:
            bits |= rb
    return bits


def _models_all(m: int, rules) -> bool:
    for h, pm, n in rules:
        if not (m & h or pm & ~m or m & n):
            return False
    return True


def _reduct_ok(a: int, m: int, rules) -> bool:
    for h, pm, n in rules:
        if not (m & n or a & h or pm & ~a):
            return False
    return True


def _add(table: dict, key, n: int) -> None:
    table[key] = table.get(key, 0) + n


def _by_model(table: dict) -> dict:
    index: dict = {}
    for key, n in table.items():
        index.setdefault(key[0], []).append((key, n))
    return index


def _subsets(m: int):
    sub = m
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & m


# -- INC ---------------------------------------------------------------------

def inc_transition(node: Node, child_tables: list, p: GroundProgram) -> dict:
    kind = node.kind.type
    if kind is LEAF:
        return {(0, 0, EMPTY): 1}
    aw = node.atom_width
    amask = (1 << aw) - 1
    out: dict = {}

    if kind is AI:
        abit = node.bit
        rules = _bag_rules_with(node, p)
        for (m, s, certs), n in child_tables[0].items():
            # a false
            s0 = s | _sat_bits(m, rules)
            c0 = frozenset(c | _red_bits(c & amask, m, rules) << aw for c in certs)
            _add(out, (m, s0, c0), n)
            # a true
            m1 = m | abit
            s1 = s | _sat_bits(m1, rules)
            c1 = set()
            for c in certs:
                a = c & amask
                c1.add(c | _red_bits(a, m1, rules) << aw)
                a |= abit
                c1.add(a | (c >> aw | _red_bits(a, m1, rules)) << aw)
            # m itself, with a flipped to false, becomes a strictly smaller
            # candidate; it inherits every rule the child model already satisfied
            c1.add(m | (s | _red_bits(m, m1, rules)) << aw)
            _add(out, (m1, s1, frozenset(c1)), n)
        return out

    if kind is AR:
        keep = ~node.bit
        for (m, s, certs), n in child_tables[0].items():
            _add(out, (m & keep, s, frozenset(c & keep for c in certs)), n)
        return out

    if kind is RI:
        rb = node.bit
        h, pm, ng = _masks(p.rules[node.kind.element], node.atom_slot)
        rules = [(rb, h, pm, ng)]
        for (m, s, certs), n in child_tables[0].items():
            s1 = s | _sat_bits(m, rules)
            c1 = frozenset(c | _red_bits(c & amask, m, rules) << aw for c in certs)
            _add(out, (m, s1, c1), n)
        return out

    if kind is RR:
        rb = node.bit
        cb = rb << aw
        for (m, s, certs), n in child_tables[0].items():
            if not s & rb:
                continue
            c1 = frozenset(c & ~cb for c in certs if c & cb)
            _add(out, (m, s & ~rb, c1), n)
        return out

    if kind is JOIN:
        left, right = child_tables
        right_index = _by_model(right)
        grouped = {}
        for (m, s1, certs1), n1 in left.items():
            partners = right_index.get(m)
            if not partners:
                continue
            g1 = _group_certs(certs1, aw, amask)
            for (_, s2, certs2), n2 in partners:
                key2 = certs2
                g2 = grouped.get(key2)
                if g2 is None:
                    g2 = grouped[key2] = _group_certs(certs2, aw, amask)
                c = set()
                small, big = (g1, g2) if len(g1) <= len(g2) else (g2, g1)
                for a, rs in small.items():
                    other = big.get(a)
                    if other:
                        for r1 in rs:
                            for r2 in other:
                                c.add(a | (r1 | r2) << aw)
                for r in g1.get(m, ()):
                    c.add(m | (r | s2) << aw)
                for r in g2.get(m, ()):
                    c.add(m | (r | s1) << aw)
                _add(out, (m, s1 | s2, frozenset(c)), n1 * n2)
        return out

    raise ValueError(f"INC cannot handle node type {kind}")


def _group_certs(certs, aw: int, amask: int) -> dict:
    g: dict = {}
    for c in certs:
        g.setdefault(c & amask, []).append(c >> aw)
    return g


# -- PRIM --------------------------------------------------------------------

def prim_transition(node: Node, child_tables: list, p: GroundProgram) -> dict:
    kind = node.kind.type
    if kind is LEAF:
        return {(0, EMPTY): 1}
    out: dict = {}

    if kind is AI:
        abit = node.bit
        rules = _induced_with(node, p)
        for (m, certs), n in child_tables[0].items():
            if _models_all(m, rules):
                _add(out, (m, frozenset(a for a in certs if _reduct_ok(a, m, rules))), n)
            m1 = m | abit
            if _models_all(m1, rules):
                c1 = set()
                for a in certs:
                    if _reduct_ok(a, m1, rules):
                        c1.add(a)
                    if _reduct_ok(a | abit, m1, rules):
                        c1.add(a | abit)
                if _reduct_ok(m, m1, rules):
                    c1.add(m)
                _add(out, (m1, frozenset(c1)), n)
        return out

    if kind is AR:
        keep = ~node.bit
        for (m, certs), n in child_tables[0].items():
            _add(out, (m & keep, frozenset(a & keep for a in certs)), n)
        return out

    if kind is JOIN:
        left, right = child_tables
        right_index = _by_model(right)
        for (m, c1), n1 in left.items():
            for (_, c2), n2 in right_index.get(m, ()):
                c = c1 & c2
                if m in c2 or m in c1:
                    c = c | {m}
                _add(out, (m, c), n1 * n2)
        return out

    raise ValueError(f"PRIM cannot handle node type {kind}")


# -- INVPRIM -----------------------------------------------------------------

def invprim_transition(node: Node, child_tables: list, p: GroundProgram) -> dict:
    kind = node.kind.type
    if kind is LEAF:
        return {(0, frozenset({0})): 1}
    out: dict = {}

    if kind is AI:
        abit = node.bit
        rules = _induced_with(node, p)
        for (m, dead), n in child_tables[0].items():
            if _models_all(m, rules):
                d0 = set(dead)
                if rules:
                    d0.update(a for a in _subsets(m) if not _reduct_ok(a, m, rules))
                _add(out, (m, frozenset(d0)), n)
            m1 = m | abit
            if _models_all(m1, rules):
                d1 = set()
                for a in _subsets(m):
                    if a == m:
                        if not _reduct_ok(m, m1, rules):
                            d1.add(m)
                    elif a in dead or not _reduct_ok(a, m1, rules):
                        d1.add(a)
                    if a in dead or not _reduct_ok(a | abit, m1, rules):
                        d1.add(a | abit)
                _add(out, (m1, frozenset(d1)), n)
        return out

    if kind is AR:
        abit = node.bit
        for (m, dead), n in child_tables[0].items():
            if not m & abit:
                _add(out, (m, dead), n)
                continue
            m0 = m & ~abit
            d0 = frozenset(b for b in _subsets(m0) if b in dead and b | abit in dead)
            _add(out, (m0, d0), n)
        return out

    if kind is JOIN:
        left, right = child_tables
        right_index = _by_model(right)
        for (m, d1), n1 in left.items():
            for (_, d2), n2 in right_index.get(m, ()):
                d = (d1 | d2) - {m}
                if m in d1 and m in d2:
                    d = d | {m}
                _add(out, (m, d), n1 * n2)
        return out

    raise ValueError(f"INVPRIM cannot handle node type {kind}")


# -- SAT mode ----------------------------------------------------------------

def sat_mode_transition(node: Node, child_tables: list, p: GroundProgram,
                        graph_kind: str = INCIDENCE) -> dict:
    """Classical model counting: INC/PRIM with the certificate logic dropped.

    On primal decompositions the ``S`` component stays 0.
    """
    kind = node.kind.type
    if kind is LEAF:
        return {(0, 0): 1}
    out: dict = {}

    if kind is AI:
        abit = node.bit
        if graph_kind == INCIDENCE:
            rules = _bag_rules_with(node, p)
            for (m, s), n in child_tables[0].items():
                _add(out, (m, s | _sat_bits(m, rules)), n)
                m1 = m | abit
                _add(out, (m1, s | _sat_bits(m1, rules)), n)
        else:
            rules = _induced_with(node, p)
            for (m, s), n in child_tables[0].items():
                if _models_all(m, rules):
                    _add(out, (m, 0), n)
                if _models_all(m | abit, rules):
                    _add(out, (m | abit, 0), n)
        return out

    if kind is AR:
        keep = ~node.bit
        for (m, s), n in child_tables[0].items():
            _add(out, (m & keep, s), n)
        return out

    if kind is RI:
        h, pm, ng = _masks(p.rules[node.kind.element], node.atom_slot)
        rules = [(node.bit, h, pm, ng)]
        for (m, s), n in child_tables[0].items():
            _add(out, (m, s | _sat_bits(m, rules)), n)
        return out

    if kind is RR:
        rb = node.bit
        for (m, s), n in child_tables[0].items():
            if s & rb:
                _add(out, (m, s & ~rb), n)
        return out

    if kind is JOIN:
        left, right = child_tables
        right_index = _by_model(right)
        for (m, s1), n1 in left.items():
            for (_, s2), n2 in right_index.get(m, ()):
                _add(out, (m, s1 | s2), n1 * n2)
        return out

    raise ValueError(f"SAT mode cannot handle node type {kind}")


INC = Algorithm("inc", INCIDENCE, inc_transition, (0, 0, EMPTY))
PRIM = Algorithm("prim", PRIMAL, prim_transition, (0, EMPTY))
INVPRIM = Algorithm("invprim", PRIMAL, invprim_transition, (0, frozenset({0})))
SATMODE = Algorithm("satmode", INCIDENCE, sat_mode_transition, (0, 0))
SATMODE_PRIMAL = Algorithm("satmode-primal", PRIMAL,
                           partial(sat_mode_transition, graph_kind=PRIMAL), (0, 0))

ALGORITHMS = {alg.name: alg for alg in (INC, PRIM, INVPRIM, SATMODE, SATMODE_PRIMAL)}
