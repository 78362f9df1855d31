"""Compare the compiled and pure-Python BFS kernels on realistic workloads.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --backend python --repeat 5

Each workload is timed per backend on the same graphs; output is a small
table of wall-clock times and the speedup of the compiled kernel.
"""

import argparse
import os
import time

import numpy as np

from graphlim import kernels
from graphlim.coloring import build_bundle
from graphlim.generators import random_regular, torus_grid
from graphlim.graphs import Graph
from graphlim.stats import distribution


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(name, graphs, repeat):
    mod = kernels.get_backend(name)
    rows = {}

    for gname, g in graphs.items():
        kern = mod.BallKernel(g.indptr, g.indices)

        def all_balls():
            for v in range(g.n):
                kern.ball(v, 2)

        rows[f"ball r=2 sweep / {gname}"] = time_call(all_balls, repeat)
        rows[f"reach_pairs i=3 / {gname}"] = time_call(
            lambda: kern.reach_pairs(3), repeat
        )
        us, vs = kern.reach_pairs(2)
        deg = np.bincount(us, minlength=g.n) + np.bincount(vs, minlength=g.n)
        power = Graph.from_edges(
            g.n,
            np.column_stack([us, vs]),
            d=int(deg.max()),
            allow_disconnected=True,
        )
        order = np.arange(g.n, dtype=np.int32)
        rows[f"greedy color power-2 / {gname}"] = time_call(
            lambda: mod.greedy_color(power.indptr, power.indices, order), repeat
        )

    # end-to-end: fresh Graph objects so the kernel choice is re-made
    os.environ["GRAPHLIM_BACKEND"] = name
    try:
        for gname, g in graphs.items():
            g2 = Graph.from_edges(g.n, [tuple(map(int, e)) for e in g.edge_list()], d=g.d)
            bundle = build_bundle(g2, 2)
            rows[f"colored distribution r=2 / {gname}"] = time_call(
                lambda: distribution(g2, 2, bundle=bundle), max(1, repeat // 2)
            )
    finally:
        os.environ.pop("GRAPHLIM_BACKEND", None)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--backend",
        choices=["both", "python", "compiled"],
        default="both",
    )
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    available = kernels.available_backends()
    wanted = ["python", "compiled"] if args.backend == "both" else [args.backend]
    names = [n for n in wanted if n in available]
    missing = [n for n in wanted if n not in available]
    for n in missing:
        print(f"backend {n!r} unavailable, skipping")
    if not names:
        return

    graphs = {
        "torus 100x100": torus_grid(100, 100),
        "rand 3-reg n=2000": random_regular(2000, 3, seed=1),
    }

    results = {n: bench_backend(n, graphs, args.repeat) for n in names}
    workloads = list(next(iter(results.values())))
    width = max(len(w) for w in workloads)
    header = f"{'workload':<{width}}" + "".join(f"  {n:>12}" for n in names)
    if len(names) == 2:
        header += f"  {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for w in workloads:
        line = f"{w:<{width}}"
        for n in names:
            line += f"  {results[n][w] * 1e3:>10.2f}ms"
        if len(names) == 2:
            ratio = results["python"][w] / max(results["compiled"][w], 1e-12)
            line += f"  {ratio:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
