"""Ground disjunctive programs, the GL-reduct and a brute-force answer-set oracle."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import AtomCapExceeded

DEFAULT_ORACLE_CAP = 24


@dataclass(frozen=True)
class Atom:
    id: int
    name: str


@dataclass(frozen=True)
class Rule:
    """A rule ``head_1 | ... | head_l :- pos_1, ..., not neg_1, ...``.

    Identity (equality, hashing) ignores ``id`` so that duplicate rules can be
    detected structurally.
    """

    head: frozenset
    pos_body: frozenset
    neg_body: frozenset
    id: int = field(default=-1, compare=False)

    @property
    def atoms(self) -> frozenset:
        return self.head | self.pos_body | self.neg_body

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_fact(self) -> bool:
        return not self.pos_body and not self.neg_body


class GroundProgram:
    """An immutable pair (atoms, rules).

    Atom ids are dense ``0..n-1`` and rules are deduplicated, keeping the first
    occurrence; rule ids are dense in the order of first occurrence.
    """

    def __init__(self, atom_names: Iterable[str], rules: Iterable[Rule]):
        names = list(atom_names)
        if len(set(names)) != len(names):
            raise ValueError("atom names must be unique")
        self.atoms = tuple(Atom(i, n) for i, n in enumerate(names))
        n_atoms = len(self.atoms)

        seen = set()
        kept = []
        for r in rules:
            r = Rule(frozenset(r.head), frozenset(r.pos_body), frozenset(r.neg_body))
            if r in seen:
                continue
            for a in r.atoms:
                if not 0 <= a < n_atoms:
                    raise ValueError(f"rule references unknown atom id {a}")
            seen.add(r)
            kept.append(Rule(r.head, r.pos_body, r.neg_body, len(kept)))
        self.rules = tuple(kept)

        occurs = [[] for _ in range(n_atoms)]
        for r in self.rules:
            for a in r.atoms:
                occurs[a].append(r.id)
        self.atom_rules = tuple(tuple(rs) for rs in occurs)
        self._index = {a.name: a.id for a in self.atoms}

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)

    @property
    def num_rules(self) -> int:
        return len(self.rules)

    def atom_id(self, name: str) -> int:
        return self._index[name]

    def atom_name(self, atom_id: int) -> str:
        return self.atoms[atom_id].name

    def names(self, atom_ids: Iterable[int]) -> frozenset:
        return frozenset(self.atoms[a].name for a in atom_ids)

    def interpretation(self, names: Iterable[str]) -> frozenset:
        return frozenset(self._index[n] for n in names)

    def unused_atoms(self) -> list[int]:
        """Atoms occurring in no rule; they are false in every answer set."""
        return [a.id for a in self.atoms if not self.atom_rules[a.id]]

    def has_empty_rule(self) -> bool:
        return any(not r.atoms for r in self.rules)

    def rule_signature(self, r: Rule) -> tuple:
        """Name-based view of a rule, independent of atom numbering."""
        return (self.names(r.head), self.names(r.pos_body), self.names(r.neg_body))

    def __repr__(self):
        return f"GroundProgram({self.num_atoms} atoms, {self.num_rules} rules)"


class ProgramBuilder:
    """Incrementally assemble a program from atom names; ids follow first use."""

    def __init__(self):
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        self._rules: list[Rule] = []

    def atom(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            self._index[name] = len(self._names)
            self._names.append(name)
            return self._index[name]

    def rule(self, head=(), pos=(), neg=()) -> None:
        self._rules.append(Rule(
            frozenset(self.atom(n) for n in head),
            frozenset(self.atom(n) for n in pos),
            frozenset(self.atom(n) for n in neg),
        ))

    def build(self) -> GroundProgram:
        return GroundProgram(self._names, self._rules)


def reduct(p: GroundProgram, i: Iterable[int]) -> GroundProgram:
    """GL-reduct: drop rules whose negative body meets ``i``; strip the rest."""
    i = frozenset(i)
    kept = [Rule(r.head, r.pos_body, frozenset()) for r in p.rules if not (r.neg_body & i)]
    return GroundProgram([a.name for a in p.atoms], kept)


def satisfies(i: frozenset, r: Rule) -> bool:
    if r.pos_body <= i and not (r.neg_body & i):
        return bool(r.head & i)
    return True


def is_model(i: Iterable[int], p: GroundProgram) -> bool:
    i = frozenset(i)
    return all(satisfies(i, r) for r in p.rules)


def is_answer_set(i: Iterable[int], p: GroundProgram) -> bool:
    i = frozenset(i)
    if not is_model(i, p):
        return False
    red = reduct(p, i)
    return _find_smaller_model(sorted(i), frozenset(i), red.rules) is None


def entails_at_node(m: Iterable[int], r: Rule, bag_atoms: Iterable[int],
                    reduct_wrt: Optional[Iterable[int]] = None) -> bool:
    """Whether ``m`` is a model of ``r`` restricted to the atoms of a bag.

    With ``reduct_wrt`` the rule is first replaced by its reduct with respect to
    that interpretation (and counts as satisfied when the reduct drops it).
    A restriction that keeps no literal is the contradiction ``⊥ ← ⊤``.
    """
    m, bag = frozenset(m), frozenset(bag_atoms)
    neg = r.neg_body
    if reduct_wrt is not None:
        if neg & frozenset(reduct_wrt):
            return True
        neg = frozenset()
    head, pos, neg = r.head & bag, r.pos_body & bag, neg & bag
    if not (head or pos or neg):
        return False
    if pos <= m and not (neg & m):
        return bool(head & m)
    return True


def _find_smaller_model(order: list[int], m: frozenset, rules) -> Optional[frozenset]:
    """Search a proper subset of ``m`` that models the negation-free ``rules``.

    Atoms outside ``m`` are fixed false. Atoms of ``m`` are decided in ``order``
    (bit k of the search mask is ``order[k]``) and a rule is checked as soon as
    its last relevant atom is decided.
    """
    pos_of = {a: k for k, a in enumerate(order)}
    n = len(order)
    checks = [[] for _ in range(n)]
    for r in rules:
        if not r.pos_body <= m:
            continue  # body false under every subset of m
        head = r.head & m
        if not r.pos_body and not head:
            return None  # violated by every subset, m included
        hmask = sum(1 << pos_of[a] for a in head)
        pmask = sum(1 << pos_of[a] for a in r.pos_body)
        checks[(hmask | pmask).bit_length() - 1].append((hmask, pmask))

    full = (1 << n) - 1
    stack = [(0, 0)]
    while stack:
        depth, mask = stack.pop()
        if depth == n:
            if mask != full:
                return frozenset(order[k] for k in range(n) if mask >> k & 1)
            continue
        for cand in (mask | 1 << depth, mask):  # popped "false" first
            if all(cand & h or (p & cand) != p for h, p in checks[depth]):
                stack.append((depth + 1, cand))
    return None


def oracle_cap() -> int:
    return int(os.environ.get("DYNACOUNT_ORACLE_CAP", DEFAULT_ORACLE_CAP))


def iter_models(p: GroundProgram):
    """Yield every classical model of ``p`` as a frozenset of atom ids.

    Plain enumeration of all ``2^n`` interpretations, pruned only by checking
    each rule once all of its atoms have been assigned.
    """
    n = p.num_atoms
    checks = [[] for _ in range(n)]
    for r in p.rules:
        if not r.atoms:
            return
        checks[max(r.atoms)].append((_mask(r.head), _mask(r.pos_body), _mask(r.neg_body)))

    stack = [(0, 0)]
    while stack:
        depth, mask = stack.pop()
        if depth == n:
            yield frozenset(a for a in range(n) if mask >> a & 1)
            continue
        for cand in (mask, mask | 1 << depth):
            if all(cand & h or (p & cand) != p or cand & ng for h, p, ng in checks[depth]):
                stack.append((depth + 1, cand))


def _mask(atoms) -> int:
    return sum(1 << a for a in atoms)


def count_models_bruteforce(p: GroundProgram, cap: Optional[int] = None) -> int:
    cap = oracle_cap() if cap is None else cap
    if p.num_atoms > cap:
        raise AtomCapExceeded(p.num_atoms, cap)
    return sum(1 for _ in iter_models(p))


def count_answer_sets_bruteforce(p: GroundProgram, cap: Optional[int] = None) -> int:
    """Count answer sets by enumerating models and testing minimality directly."""
    cap = oracle_cap() if cap is None else cap
    if p.num_atoms > cap:
        raise AtomCapExceeded(p.num_atoms, cap)
    total = 0
    for m in iter_models(p):
        red = [r for r in p.rules if not (r.neg_body & m)]
        if _find_smaller_model(sorted(m), m, red) is None:
            total += 1
    return total
