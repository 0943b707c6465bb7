"""Pipeline: program -> graph -> decomposition (best of seeds) -> nice form -> DP."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algorithms import ALGORITHMS
from .decomposition import NiceTreeDecomposition, TreeDecomposition, decompose, normalize
from .engine import RunStats, paused_gc, traverse
from .errors import WidthCapExceeded
from .graphs import ProblemGraph, build_graph
from .program import GroundProgram

DEFAULT_SEEDS = (0, 1, 2)
DEFAULT_WIDTH_CAP = 20


@dataclass
class RunConfig:
    algorithm: str = "inc"
    heuristic: str = "min-fill"
    seeds: tuple = DEFAULT_SEEDS
    width_cap: int = DEFAULT_WIDTH_CAP

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.width_cap < 1:
            raise ValueError("width cap must be at least 1")
        if not 1 <= len(self.seeds) <= 3:
            raise ValueError("between one and three seeds are required")


@dataclass
class CountResult:
    count: int
    stats: RunStats
    seed: int
    heuristic: str
    graph: ProblemGraph = field(repr=False)
    td: TreeDecomposition = field(repr=False)
    nice: NiceTreeDecomposition = field(repr=False)

    def stats_dict(self) -> dict:
        s = self.stats
        return {
            "algorithm": s.algorithm,
            "heuristic": self.heuristic,
            "seed": self.seed,
            "width": s.width,
            "nodes": s.nodes,
            "node_kinds": self.nice.kind_counts(),
            "max_table": s.max_table,
            "tuples_total": s.tuples_total,
            "count": str(self.count),
            "times_ms": {k: round(v, 3) for k, v in s.times_ms.items()},
        }


def best_decomposition(g: ProblemGraph, heuristic: str, seeds) -> tuple[TreeDecomposition, int]:
    """Smallest-width decomposition over ``seeds``; the first seed wins ties."""
    best = None
    for seed in seeds:
        td = decompose(g, heuristic, seed)
        if best is None or td.width < best[0].width:
            best = (td, seed)
    return best


def count_answer_sets(p: GroundProgram, config: RunConfig | None = None) -> CountResult:
    with paused_gc():
        return _count(p, config or RunConfig())


def _count(p: GroundProgram, config: RunConfig) -> CountResult:
    alg = ALGORITHMS[config.algorithm]
    times = {}

    t = time.perf_counter()
    g = build_graph(p, alg.graph_kind)
    times["graph"] = (time.perf_counter() - t) * 1000

    t = time.perf_counter()
    td, seed = best_decomposition(g, config.heuristic, config.seeds)
    times["decompose"] = (time.perf_counter() - t) * 1000
    if td.width >= config.width_cap:
        raise WidthCapExceeded(td.width, config.width_cap)

    t = time.perf_counter()
    nice = normalize(td)
    times["normalize"] = (time.perf_counter() - t) * 1000

    count, stats = traverse(nice, alg, p)
    stats.times_ms = {**times, **stats.times_ms}
    return CountResult(count, stats, seed, config.heuristic, g, td, nice)


def count(p: GroundProgram, algorithm: str = "inc", **kwargs) -> int:
    """Answer-set count (or model count for the SAT modes) of ``p``."""
    return count_answer_sets(p, RunConfig(algorithm=algorithm, **kwargs)).count
