"""Community structure: modularity scoring and Louvain detection.

Modularity of a partition is the usual sum over communities of
(internal edge fraction) - (degree fraction / 2)^2. Detection runs the
two-phase Louvain scheme: repeated local node moves while any move
improves modularity, then aggregation of communities into single nodes,
repeated until a whole level produces no improvement.

Determinism: the node visiting order is a seeded shuffle, move gains are
compared in exact integer arithmetic (internal edge weights stay integer
through aggregation), and equal-gain candidates resolve to the lowest
community id, so a given (graph, seed) always yields the same partition.
"""

import random
from dataclasses import dataclass

from .errors import UndefinedMetricError, ValidationError
from .graph import Graph


@dataclass(frozen=True)
class Partition:
    """Dense community labels for every node."""

    labels: tuple[int, ...]
    community_count: int

    def __post_init__(self):
        if len(self.labels) == 0:
            raise ValidationError("partition needs at least one node")
        seen = set()
        for lab in self.labels:
            if not 0 <= lab < self.community_count:
                raise ValidationError("label out of range")
            seen.add(lab)
        if len(seen) != self.community_count:
            raise ValidationError("labels must cover 0..community_count-1 with no gaps")

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Renumber arbitrary labels densely by first occurrence."""
        dense: dict = {}
        out = []
        for lab in labels:
            out.append(dense.setdefault(lab, len(dense)))
        return cls(tuple(out), len(dense))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(range(n)), n)

    def to_text(self, g: Graph) -> str:
        """Two-column text: handle, community id."""
        return "".join(f"{g.handle(i)}\t{lab}\n" for i, lab in enumerate(self.labels))


def modularity(g: Graph, partition: Partition) -> float:
    """Modularity Q of the partition on g; requires at least one edge."""
    m = g.edge_count
    if m == 0:
        raise UndefinedMetricError("modularity needs at least one edge")
    if len(partition.labels) != g.size:
        raise ValidationError("partition size does not match the graph")
    labels = partition.labels
    degree_sum = [0] * partition.community_count
    internal = [0] * partition.community_count
    for i in range(g.size):
        degree_sum[labels[i]] += g.degree(i)
    for i, j in g.edges():
        if labels[i] == labels[j]:
            internal[labels[i]] += 1
    two_m = 2.0 * m
    return sum(internal[c] / m - (degree_sum[c] / two_m) ** 2 for c in range(partition.community_count))


def _move_phase(adj, self_w, rng):
    """One Louvain level: greedy local moves until none improves Q.

    adj holds (neighbor, weight) lists without self entries; self_w holds
    per-node self-loop weight (each contributing 2w to the degree). The
    gain of parking node i in community C, relative to leaving it alone,
    is proportional to m2 * w(i,C) - tot(C) * k(i), all integers, so
    comparisons are exact. A node moves only on strictly positive gain
    over staying put; among equal best candidates the lowest community id
    wins because candidates are scanned in ascending order.
    """
    n = len(adj)
    k = [2 * self_w[i] + sum(w for _, w in adj[i]) for i in range(n)]
    m2 = sum(k)
    comm = list(range(n))
    tot = k[:]
    order = list(range(n))
    rng.shuffle(order)
    improved = False
    while True:
        moves = 0
        for i in order:
            ci = comm[i]
            tot[ci] -= k[i]
            weight_to = {}
            for j, w in adj[i]:
                cj = comm[j]
                weight_to[cj] = weight_to.get(cj, 0) + w
            best_c = ci
            best_gain = m2 * weight_to.get(ci, 0) - tot[ci] * k[i]
            for c in sorted(weight_to):
                if c == ci:
                    continue
                gain = m2 * weight_to[c] - tot[c] * k[i]
                if gain > best_gain:
                    best_gain = gain
                    best_c = c
            comm[i] = best_c
            tot[best_c] += k[i]
            if best_c != ci:
                moves += 1
        if moves == 0:
            break
        improved = True
    return comm, improved


def _aggregate(adj, self_w, comm):
    """Collapse communities into single weighted nodes."""
    dense = {}
    for c in sorted(set(comm)):
        dense[c] = len(dense)
    nn = len(dense)
    new_self = [0] * nn
    acc: list[dict] = [dict() for _ in range(nn)]
    for i in range(len(adj)):
        ci = dense[comm[i]]
        new_self[ci] += self_w[i]
        for j, w in adj[i]:
            if j < i:
                continue
            cj = dense[comm[j]]
            if ci == cj:
                new_self[ci] += w
            else:
                acc[ci][cj] = acc[ci].get(cj, 0) + w
                acc[cj][ci] = acc[cj].get(ci, 0) + w
    new_adj = [sorted(d.items()) for d in acc]
    return new_adj, new_self, dense


def detect_communities(g: Graph, seed: int = 0) -> Partition:
    """Louvain community detection, deterministic for a given seed.

    The result never scores below the all-singletons partition because
    every accepted move strictly increases modularity starting from that
    state. Final labels are renumbered densely by first occurrence over
    node order.
    """
    if g.edge_count == 0:
        raise UndefinedMetricError("community detection needs at least one edge")
    n = g.size
    adj = [[(j, 1) for j in g.neighbors(i)] for i in range(n)]
    self_w = [0] * n
    assign = list(range(n))
    rng = random.Random(seed)
    while True:
        comm, improved = _move_phase(adj, self_w, rng)
        if not improved:
            break
        adj, self_w, dense = _aggregate(adj, self_w, comm)
        assign = [dense[comm[a]] for a in assign]
    return Partition.from_labels(assign)
