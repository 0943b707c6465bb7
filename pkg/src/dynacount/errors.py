"""Exceptions raised across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}"


class ProgramSyntaxError(SyntaxError):
    """Malformed program or edge-list text, located by a 1-based span."""

    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.lineno = span.line
        self.offset = span.column


class SelfLoopError(ValueError):
    pass


class AtomCapExceeded(ValueError):
    def __init__(self, n_atoms: int, cap: int):
        super().__init__(f"program has {n_atoms} atoms, oracle cap is {cap}")
        self.n_atoms = n_atoms
        self.cap = cap


class WidthCapExceeded(RuntimeError):
    def __init__(self, width: int, cap: int):
        super().__init__(f"best decomposition width {width} is not below the cap {cap}")
        self.width = width
        self.cap = cap


class GraphKindMismatch(ValueError):
    pass


class MalformedNiceTD(ValueError):
    pass
