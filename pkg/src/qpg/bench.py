"""Timing grid for the statistics solver, with CSV and figure output."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from typing import List, Sequence

from .game import GeneratorParams, generate_random
from .oracles import zielonka_solve
from .solver import solve

CSV_COLUMNS = ["n", "M", "k", "product_nodes", "millis", "zielonka_millis"]


@dataclass
class BenchRow:
    n: int
    M: int
    k: int
    product_nodes: int
    bound_nodes: int
    millis: float
    zielonka_millis: float


def run_bench(
    n_values: Sequence[int],
    m_values: Sequence[int],
    seed: int = 0,
    degree_range=(1, 3),
) -> List[BenchRow]:
    rows = []
    for n in n_values:
        for m in m_values:
            params = GeneratorParams(
                n=n,
                max_priority=m,
                out_degree_min=min(degree_range[0], n),
                out_degree_max=min(degree_range[1], n),
                seed=seed,
            )
            game = generate_random(params)
            start = time.perf_counter()
            result = solve(game)
            qp_ms = (time.perf_counter() - start) * 1000.0
            start = time.perf_counter()
            zielonka_solve(game)
            zi_ms = (time.perf_counter() - start) * 1000.0
            rows.append(
                BenchRow(
                    n=n,
                    M=m,
                    k=result.k,
                    product_nodes=result.product.node_count,
                    bound_nodes=result.product.bound_nodes,
                    millis=qp_ms,
                    zielonka_millis=zi_ms,
                )
            )
    return rows


def rows_to_csv(rows: List[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [r.n, r.M, r.k, r.product_nodes, f"{r.millis:.3f}", f"{r.zielonka_millis:.3f}"]
        )
    return buf.getvalue()


def save_figure(rows: List[BenchRow], path: str) -> None:
    """Render product size and solve time against n, one curve per M."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    m_values = sorted({r.M for r in rows})
    fig, (ax_nodes, ax_time) = plt.subplots(1, 2, figsize=(10, 4))
    for m in m_values:
        sub = sorted((r for r in rows if r.M == m), key=lambda r: r.n)
        ns = [r.n for r in sub]
        ax_nodes.plot(ns, [r.product_nodes for r in sub], marker="o", label=f"M={m}")
        ax_time.plot(ns, [r.millis for r in sub], marker="o", label=f"M={m}")
    ax_nodes.set_xlabel("n")
    ax_nodes.set_ylabel("explored product nodes")
    ax_nodes.set_yscale("log")
    ax_nodes.legend()
    ax_time.set_xlabel("n")
    ax_time.set_ylabel("solve time (ms)")
    ax_time.set_yscale("log")
    ax_time.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
