"""Plain-text reader/writer for ground programs and edge-list graphs.

Program grammar (whitespace insensitive, ``%`` starts a comment)::

    rule  := head? (":-" body?)? "."
    head  := atom ("|" atom)*
    body  := lit ("," lit)*
    lit   := ["not"] atom
    atom  := ident ["(" const ("," const)* ")"]

where ``ident`` starts with a lowercase letter and ``const`` is an ident or an
integer. A rule with neither head nor body literals is rejected.
"""

from __future__ import annotations

import re
from typing import Union

import networkx as nx

from .errors import ProgramSyntaxError, SelfLoopError, SourceSpan
from .program import GroundProgram, ProgramBuilder

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<if>:-)
  | (?P<punct>[|,().])
  | (?P<int>-?[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

IDENT = re.compile(r"[a-z][A-Za-z0-9_']*\Z")
CONST = re.compile(r"([a-z][A-Za-z0-9_']*|-?[0-9]+)\Z")


def _decode(text: Union[str, bytes]) -> str:
    return text.decode("utf-8") if isinstance(text, (bytes, bytearray)) else text


def _tokenize(text: str):
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        span = SourceSpan(line, pos - line_start + 1)
        if m is None:
            raise ProgramSyntaxError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            yield kind, value, span
        nl = value.count("\n")
        if nl:
            line += nl
            line_start = m.start() + value.rindex("\n") + 1
        pos = m.end()
    yield "eof", "", SourceSpan(line, pos - line_start + 1)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, span = self.take()
        if val != value or kind == "eof":
            found = "end of input" if kind == "eof" else repr(val)
            raise ProgramSyntaxError(f"expected {value!r}, found {found}", span)

    def atom(self) -> str:
        kind, val, span = self.take()
        if kind != "ident" or not IDENT.match(val) or val == "not":
            found = "end of input" if kind == "eof" else repr(val)
            raise ProgramSyntaxError(f"expected an atom, found {found}", span)
        if self.peek()[1] != "(":
            return val
        self.take()
        args = [self.const()]
        while self.peek()[1] == ",":
            self.take()
            args.append(self.const())
        self.expect(")")
        return f"{val}({','.join(args)})"

    def const(self) -> str:
        kind, val, span = self.take()
        if kind not in ("ident", "int") or not CONST.match(val):
            raise ProgramSyntaxError(f"expected a constant, found {val!r}", span)
        return val

    def rule(self, builder: ProgramBuilder):
        start = self.peek()[2]
        head, pos, neg = [], [], []
        if self.peek()[1] not in (":-", "."):
            if self.peek()[1] == "not":
                raise ProgramSyntaxError("negation is not allowed in rule heads", self.peek()[2])
            head.append(self.atom())
            while self.peek()[1] == "|":
                self.take()
                if self.peek()[1] == "not":
                    raise ProgramSyntaxError("negation is not allowed in rule heads", self.peek()[2])
                head.append(self.atom())
        if self.peek()[1] == ":-":
            self.take()
            if self.peek()[1] != ".":
                self.literal(pos, neg)
                while self.peek()[1] == ",":
                    self.take()
                    self.literal(pos, neg)
        kind, val, span = self.peek()
        if val != "." or kind == "eof":
            raise ProgramSyntaxError("unterminated rule (missing '.')"
                                     if kind == "eof" else f"unexpected {val!r}", span)
        self.take()
        if not (head or pos or neg):
            raise ProgramSyntaxError("rule without head and body", start)
        builder.rule(head, pos, neg)

    def literal(self, pos: list, neg: list):
        kind, val, _ = self.peek()
        if kind == "ident" and val == "not":
            self.take()
            neg.append(self.atom())
        else:
            pos.append(self.atom())


def parse_program(text: Union[str, bytes]) -> GroundProgram:
    """Parse program text; atom ids follow first occurrence, duplicates collapse."""
    parser = _Parser(_decode(text))
    builder = ProgramBuilder()
    while parser.peek()[0] != "eof":
        parser.rule(builder)
    return builder.build()


def render_rule(p: GroundProgram, r) -> str:
    def names(atoms):
        return sorted(p.atom_name(a) for a in atoms)

    head = " | ".join(names(r.head))
    body = names(r.pos_body) + ["not " + n for n in names(r.neg_body)]
    if not body:
        return f"{head}."
    if not head:
        return f":- {', '.join(body)}."
    return f"{head} :- {', '.join(body)}."


def render_program(p: GroundProgram) -> str:
    return "".join(render_rule(p, r) + "\n" for r in p.rules)


def parse_edge_list(text: Union[str, bytes]) -> nx.Graph:
    """One edge ``u v`` per line; ``%`` comments and blank lines are skipped."""
    g = nx.Graph()
    for lineno, raw in enumerate(_decode(text).splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ProgramSyntaxError(
                f"expected two vertex names, found {len(parts)} fields",
                SourceSpan(lineno, raw.index(parts[0]) + 1))
        u, v = parts
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop on {u!r}")
        g.add_edge(u, v)
    return g
