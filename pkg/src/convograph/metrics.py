"""Network property calculations for conversation graphs.

All shortest-path quantities use unweighted BFS over the graph's CSR
adjacency. Disconnected graphs are legal everywhere: diameter is the
largest finite distance, average path length averages over connected
ordered pairs only, and reachability scores connected pairs against the
N^2/2 normalizer. Quantities with no defined value raise
UndefinedMetricError from the single-metric functions and come back as
None from compute_all.
"""

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import community as _community
from . import kernels
from .errors import UndefinedMetricError
from .graph import Graph

UNREACHABLE = -1

REPORT_FIELDS = (
    "size",
    "edges",
    "density",
    "modularity",
    "diameter",
    "avg_path_length",
    "avg_degree",
    "reachability",
    "connected_components",
)


def density(g: Graph) -> float:
    """Fraction of possible edges present, 2L / (N (N - 1))."""
    n = g.size
    if n < 2:
        raise UndefinedMetricError("density needs at least 2 nodes")
    return 2.0 * g.edge_count / (n * (n - 1))


def average_degree(g: Graph) -> float:
    """Mean node degree, 2L / N."""
    if g.size == 0:
        raise UndefinedMetricError("average degree is undefined for an empty graph")
    return 2.0 * g.edge_count / g.size


def shortest_path_lengths(g: Graph, source: int) -> np.ndarray:
    """BFS distances from source; UNREACHABLE (-1) marks unreachable nodes."""
    if not 0 <= source < g.size:
        raise IndexError(f"source {source} out of range for graph of size {g.size}")
    indptr, indices = g.csr()
    return kernels.distances_from(indptr, indices, source)


def connected_components(g: Graph) -> tuple[int, list[int]]:
    """Component count plus a per-node label list.

    Labels are assigned in increasing order of each component's lowest
    node id, so the labeling is deterministic.
    """
    n = g.size
    if n == 0:
        raise UndefinedMetricError("component count is undefined for an empty graph")
    labels = [-1] * n
    count = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = count
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if labels[u] < 0:
                    labels[u] = count
                    stack.append(u)
        count += 1
    return count, labels


def _component_sizes(labels: list[int], count: int) -> list[int]:
    sizes = [0] * count
    for lab in labels:
        sizes[lab] += 1
    return sizes


def reachability(g: Graph) -> float:
    """Connected unordered pairs scored against N^2 / 2.

    The normalizer is N^2/2 rather than N(N-1)/2, so even a connected
    graph scores (N-1)/N rather than 1.
    """
    n = g.size
    if n == 0:
        raise UndefinedMetricError("reachability is undefined for an empty graph")
    count, labels = connected_components(g)
    pairs = sum(s * (s - 1) // 2 for s in _component_sizes(labels, count))
    return pairs / (n * n / 2.0)


def _pick_workers(requested: int | None, n_sources: int) -> int:
    if requested is not None:
        return max(1, min(requested, n_sources))
    if n_sources < 2048:
        return 1
    return min(8, os.cpu_count() or 1)


def _sweep(g: Graph, sources: np.ndarray, workers: int | None) -> tuple[int, int, int]:
    """Fold BFS stats over sources, chunked across threads when it pays off.

    The kernels accumulate integers, so any chunking combines to the same
    totals and the result is independent of thread scheduling.
    """
    indptr, indices = g.csr()
    w = _pick_workers(workers, len(sources))
    if w <= 1:
        return kernels.sweep_sources(indptr, indices, sources)
    chunks = [c for c in np.array_split(sources, w * 4) if len(c)]
    with ThreadPoolExecutor(max_workers=w) as pool:
        parts = list(pool.map(lambda ch: kernels.sweep_sources(indptr, indices, ch), chunks))
    finite = sum(p[0] for p in parts)
    dsum = sum(p[1] for p in parts)
    dmax = max(p[2] for p in parts)
    return finite, dsum, dmax


def _all_sources(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int32)


def diameter(g: Graph, workers: int | None = None) -> int:
    """Largest finite shortest-path distance."""
    if g.edge_count == 0:
        raise UndefinedMetricError("diameter needs at least one edge")
    _, _, dmax = _sweep(g, _all_sources(g.size), workers)
    return dmax


def average_path_length(g: Graph, workers: int | None = None) -> float:
    """Mean shortest-path distance over connected ordered pairs."""
    if g.edge_count == 0:
        raise UndefinedMetricError("average path length needs at least one connected pair")
    finite, dsum, _ = _sweep(g, _all_sources(g.size), workers)
    return dsum / finite


@dataclass
class MetricsReport:
    """The eight network properties plus component sizes.

    None means the quantity is undefined for this graph; renderers show
    it as 'n/a'. estimated flags diameter and avg_path_length values that
    came from a sampled-source sweep.
    """

    size: int
    edges: int
    density: float | None
    modularity: float | None
    diameter: int | None
    avg_path_length: float | None
    avg_degree: float | None
    reachability: float | None
    connected_components: int | None
    per_component_sizes: list[int] = field(default_factory=list)
    estimated: bool = False

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in REPORT_FIELDS}

    def to_text(self) -> str:
        lines = []
        for name in REPORT_FIELDS:
            value = getattr(self, name)
            if value is None:
                rendered = "n/a"
            elif isinstance(value, float):
                rendered = format(value, ".6g")
            else:
                rendered = str(value)
            if self.estimated and name in ("diameter", "avg_path_length") and value is not None:
                rendered += " (estimate)"
            lines.append(f"{name}: {rendered}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "MetricsReport":
        return cls(**{name: data.get(name) for name in REPORT_FIELDS})

    @classmethod
    def from_json(cls, text: str) -> "MetricsReport":
        return cls.from_dict(json.loads(text))


def compute_all(
    g: Graph,
    partition=None,
    *,
    exact_node_limit: int = 50_000,
    sample_sources: int = 1024,
    seed: int = 0,
    workers: int | None = None,
) -> MetricsReport:
    """Compute every network property in one pass.

    Modularity is filled in only when a partition is supplied. Graphs
    larger than exact_node_limit get diameter and average path length
    estimated from a seeded sample of BFS sources and the report is
    flagged accordingly; everything else stays exact.
    """
    n, l = g.size, g.edge_count
    report = MetricsReport(
        size=n,
        edges=l,
        density=None,
        modularity=None,
        diameter=None,
        avg_path_length=None,
        avg_degree=None,
        reachability=None,
        connected_components=None,
    )
    if n == 0:
        return report
    comp_count, labels = connected_components(g)
    sizes = _component_sizes(labels, comp_count)
    report.connected_components = comp_count
    report.per_component_sizes = sorted(sizes)
    report.avg_degree = 2.0 * l / n
    report.reachability = sum(s * (s - 1) // 2 for s in sizes) / (n * n / 2.0)
    if n >= 2:
        report.density = 2.0 * l / (n * (n - 1))
    if l >= 1:
        if n > exact_node_limit:
            rng = random.Random(seed)
            chosen = sorted(rng.sample(range(n), min(sample_sources, n)))
            sources = np.array(chosen, dtype=np.int32)
            report.estimated = True
        else:
            sources = _all_sources(n)
        finite, dsum, dmax = _sweep(g, sources, workers)
        if finite:
            report.diameter = dmax
            report.avg_path_length = dsum / finite
        if partition is not None:
            report.modularity = _community.modularity(g, partition)
    return report
