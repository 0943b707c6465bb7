from functools import lru_cache
from itertools import combinations

import pytest

from dynacount import is_model, parse_program, reduct


def naive_answer_sets(p):
    """Definition-level enumeration: every interpretation, every proper subset."""
    found = []
    n = p.num_atoms
    for mask in range(1 << n):
        i = frozenset(a for a in range(n) if mask >> a & 1)
        if not is_model(i, p):
            continue
        red = reduct(p, i)
        if not any(is_model(sub, red)
                   for k in range(len(i)) for sub in combinations(sorted(i), k)):
            found.append(i)
    return found


def exact_treewidth(n, edges):
    """Treewidth via the elimination-ordering DP over vertex subsets."""
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    def q(s, v):
        # vertices outside s ∪ {v} reachable from v through s
        seen, stack, out = {v}, [v], set()
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in seen:
                    continue
                seen.add(y)
                if y in s:
                    stack.append(y)
                else:
                    out.add(y)
        return len(out)

    @lru_cache(maxsize=None)
    def tw(s):
        if not s:
            return -1
        return min(max(tw(s - {v}), q(s - {v}, v)) for v in s)

    return max(tw(frozenset(range(n))), 0) if n else 0


@pytest.fixture
def prog():
    return parse_program


ACCEPTANCE_LINES = []


def record_criterion(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
