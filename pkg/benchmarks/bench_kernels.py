"""Compare the compiled and pure-Python kernels on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Counts bypass the count cache so each backend does the full enumeration.
"""

import argparse
import time

from flowpoly import kernels
from flowpoly.flowspace import circuit_basis
from flowpoly.multigraph import MultiGraph
from flowpoly.orientation import Orientation


def k4_plus() -> MultiGraph:
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 1), (2, 3)]
    return MultiGraph.from_edges(4, edges)


def petersen() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph.from_edges(10, outer + spokes + inner)


def workloads():
    g = k4_plus()
    basis = circuit_basis(g, Orientation.default(g))
    rows = [list(r) for r in basis.rows]
    ncot = len(basis.cotree)
    yield ("nowhere-zero integer count, K4+2 edges, q=5",
           lambda be: be.count_flows(rows, ncot, [v for v in range(-4, 5) if v], -4, 4, 0, True))
    yield ("modular count, K4+2 edges, q=7",
           lambda be: be.count_flows(rows, ncot, list(range(1, 7)), 0, 0, 7, True))
    yield ("closed count listing, K4+2 edges, q=4",
           lambda be: len(be.list_flows(rows, ncot, list(range(5)), 0, 4, 0, False)))
    p = petersen()
    eu = [u for u, _ in p.edges]
    ev = [v for _, v in p.edges]
    yield ("totally cyclic flags, Petersen (2^15 orientations)",
           lambda be: sum(be.totally_cyclic_flags(p.num_vertices, eu, ev)))
    yield ("subset ranks + histogram, Petersen (2^15 subsets)",
           lambda be: be.rank_histogram(be.subset_ranks(p.num_vertices, eu, ev), p.num_edges)[15][9])


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = [n for n in ("python", "cython") if n in kernels.BACKENDS]
    if len(names) < 2:
        print("compiled kernels unavailable; only the Python backend can be timed")
    print(f"{'workload':55s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for title, fn in workloads():
        times, results = [], []
        for n in names:
            secs, res = best_of(lambda: fn(kernels.BACKENDS[n]), args.repeat)
            times.append(secs)
            results.append(res)
        if len(set(map(str, results))) != 1:
            raise SystemExit(f"backends disagree on {title}: {results}")
        speed = f"{times[0] / times[-1]:9.1f}x" if len(times) > 1 else ""
        print(f"{title:55s}" + "".join(f"{s * 1000:10.3f}ms" for s in times) + "  " + speed)


if __name__ == "__main__":
    main()
