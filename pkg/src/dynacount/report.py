"""Scaling benchmark on ASP-TGrid instances: CSV rows plus a runtime figure."""

from __future__ import annotations

import csv
import time
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .generators import TGridParams, gen_asp_tgrid  # noqa: E402
from .solver import RunConfig, count_answer_sets  # noqa: E402

FIELDS = ["k", "l", "p", "instance_seed", "algorithm", "atoms", "rules", "width",
          "nodes", "max_table", "seconds", "count"]


def run_benchmark(ls, algorithms=("inc", "prim", "invprim"), k: int = 3, p: float = 0.85,
                  instance_seed: int = 1, heuristic: str = "min-fill", seeds=(0, 1, 2)):
    rows = []
    for l in ls:
        prog = gen_asp_tgrid(TGridParams(k, l, p, seed=instance_seed))
        for alg in algorithms:
            start = time.perf_counter()
            res = count_answer_sets(prog, RunConfig(alg, heuristic, tuple(seeds)))
            rows.append({
                "k": k, "l": l, "p": p, "instance_seed": instance_seed, "algorithm": alg,
                "atoms": prog.num_atoms, "rules": prog.num_rules,
                "width": res.stats.width, "nodes": res.stats.nodes,
                "max_table": res.stats.max_table,
                "seconds": round(time.perf_counter() - start, 4),
                "count": str(res.count),
            })
    return rows


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=FIELDS)
        w.writeheader()
        w.writerows(rows)


def plot_runtime(rows, path) -> None:
    fig, (ax_t, ax_w) = plt.subplots(1, 2, figsize=(9, 3.5))
    for alg in dict.fromkeys(r["algorithm"] for r in rows):
        sel = sorted((r for r in rows if r["algorithm"] == alg), key=lambda r: r["l"])
        ls = [r["l"] for r in sel]
        ax_t.plot(ls, [r["seconds"] for r in sel], marker="o", label=alg)
        ax_w.plot(ls, [r["width"] for r in sel], marker="s", label=alg)
    ax_t.set_xlabel("grid columns l")
    ax_t.set_ylabel("total time [s]")
    ax_w.set_xlabel("grid columns l")
    ax_w.set_ylabel("decomposition width")
    ax_t.legend(frameon=False)
    for ax in (ax_t, ax_w):
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(rows, out_dir) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path, png_path = out / "bench.csv", out / "bench_runtime.png"
    write_csv(rows, csv_path)
    plot_runtime(rows, png_path)
    return csv_path, png_path
