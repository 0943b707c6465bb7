"""Answer-set counting by dynamic programming on tree decompositions."""

from .errors import (AtomCapExceeded, GraphKindMismatch, MalformedNiceTD,
                     ProgramSyntaxError, SelfLoopError, SourceSpan, WidthCapExceeded)
from .parser import parse_edge_list, parse_program, render_program
from .program import (GroundProgram, ProgramBuilder, Rule, count_answer_sets_bruteforce,
                      count_models_bruteforce, entails_at_node, is_answer_set, is_model,
                      reduct)
from .solver import RunConfig, count, count_answer_sets

__all__ = [
    "AtomCapExceeded", "GraphKindMismatch", "GroundProgram", "MalformedNiceTD",
    "ProgramBuilder", "ProgramSyntaxError", "Rule", "RunConfig", "SelfLoopError",
    "SourceSpan", "WidthCapExceeded", "count", "count_answer_sets",
    "count_answer_sets_bruteforce", "count_models_bruteforce", "entails_at_node",
    "is_answer_set", "is_model", "parse_edge_list", "parse_program", "reduct",
    "render_program",
]
