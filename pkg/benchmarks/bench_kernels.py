"""Compare the compiled BFS kernels against the pure numpy fallback.

Usage:
    python benchmarks/bench_kernels.py [--nodes 20000] [--edges 60000]
                                       [--sources 400] [--repeat 3] [--seed 0]

Builds one random graph, then times sweep_sources on every available
backend. Both backends must return identical aggregates; the script
fails loudly if they do not.
"""

import argparse
import random
import statistics
import time

import numpy as np

from convograph.graph import Graph
from convograph.kernels import available_backends


def build_graph(n, m, seed):
    rng = random.Random(seed)
    edges = set()
    while len(edges) < m:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    handles = [f"u{i}" for i in range(n)]
    return Graph.from_edges(handles, [(handles[a], handles[b]) for a, b in edges])


def time_backend(module, indptr, indices, sources, repeat):
    timings = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = module.sweep_sources(indptr, indices, sources)
        timings.append(time.perf_counter() - start)
    return min(timings), statistics.mean(timings), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nodes", type=int, default=20_000)
    parser.add_argument("--edges", type=int, default=60_000)
    parser.add_argument("--sources", type=int, default=400)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    graph = build_graph(args.nodes, args.edges, args.seed)
    indptr, indices = graph.csr()
    rng = random.Random(args.seed + 1)
    sources = np.array(
        sorted(rng.sample(range(args.nodes), min(args.sources, args.nodes))), dtype=np.int32
    )

    print(f"graph: {args.nodes} nodes, {graph.edge_count} edges, {len(sources)} sources")
    print(f"{'backend':<10} {'best (s)':>10} {'mean (s)':>10}")
    rows = []
    for name, module in available_backends():
        best, mean, result = time_backend(module, indptr, indices, sources, args.repeat)
        rows.append((name, best, result))
        print(f"{name:<10} {best:>10.4f} {mean:>10.4f}")

    results = {result for _, _, result in rows}
    if len(results) > 1:
        raise SystemExit(f"backends disagree: {results}")
    if len(rows) == 2:
        slow = max(rows, key=lambda r: r[1])
        fast = min(rows, key=lambda r: r[1])
        print(f"speedup: {fast[0]} is {slow[1] / fast[1]:.1f}x faster than {slow[0]}")


if __name__ == "__main__":
    main()
