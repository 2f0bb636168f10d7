"""Undirected conversation graph built from interaction records.

Nodes are normalized handles, indexed densely in first-seen order. An edge
joins two distinct users whenever one mentions or replies to the other in
some record; duplicates collapse and self-loops are dropped, so the result
is always a simple graph.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .ingest import extract_mentions


@dataclass(frozen=True)
class EdgePolicy:
    """Which interaction kinds contribute edges.

    drop_self_loops and collapse_duplicates are part of the graph's
    simplicity contract and must stay True; they are fields only so a
    policy serializes completely.
    """

    use_mentions: bool = True
    use_replies: bool = True
    drop_self_loops: bool = True
    collapse_duplicates: bool = True

    def __post_init__(self):
        if not (self.use_mentions or self.use_replies):
            raise ValidationError("edge policy must enable mentions, replies, or both")
        if not (self.drop_self_loops and self.collapse_duplicates):
            raise ValidationError("simple-graph guarantees cannot be disabled")


class Graph:
    """Simple undirected graph over handles with dense integer node ids."""

    __slots__ = ("_handles", "_index", "_adj", "_edge_count", "_csr")

    def __init__(self, handles: list[str], adjacency: list[list[int]]):
        self._handles = handles
        self._index = {h: i for i, h in enumerate(handles)}
        self._adj = adjacency
        self._edge_count = sum(len(nbrs) for nbrs in adjacency) // 2
        self._csr = None
        self._check()

    def _check(self):
        # Construction invariants: no self-loops, symmetric sorted adjacency,
        # degree sum equal to twice the edge count.
        n = len(self._handles)
        if len(self._index) != n or len(self._adj) != n:
            raise ValidationError("duplicate handles or mismatched adjacency")
        half_sum = 0
        for i, nbrs in enumerate(self._adj):
            prev = -1
            for j in nbrs:
                if j == i:
                    raise ValidationError("self-loop found")
                if j <= prev or not 0 <= j < n:
                    raise ValidationError("adjacency must be sorted, unique, in range")
                prev = j
                if j > i:
                    half_sum += 1
        if half_sum != self._edge_count:
            raise ValidationError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, handles, edges) -> "Graph":
        """Build a graph from an explicit handle list and handle pairs."""
        names = []
        index = {}
        for h in handles:
            h = h.strip().lower()
            if h not in index:
                index[h] = len(names)
                names.append(h)
        adj = [set() for _ in names]
        for a, b in edges:
            ia, ib = index[a.strip().lower()], index[b.strip().lower()]
            if ia != ib:
                adj[ia].add(ib)
                adj[ib].add(ia)
        return cls(names, [sorted(s) for s in adj])

    @property
    def size(self) -> int:
        """Node count."""
        return len(self._handles)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def handles(self) -> list[str]:
        return list(self._handles)

    def handle(self, node_id: int) -> str:
        self._check_id(node_id)
        return self._handles[node_id]

    def node_id(self, handle: str) -> int:
        return self._index[handle]

    def degree(self, node_id: int) -> int:
        self._check_id(node_id)
        return len(self._adj[node_id])

    def neighbors(self, node_id: int) -> list[int]:
        self._check_id(node_id)
        return list(self._adj[node_id])

    def _check_id(self, node_id: int):
        if not 0 <= node_id < len(self._handles):
            raise IndexError(f"node id {node_id} out of range for graph of size {len(self._handles)}")

    def edges(self):
        """Yield each edge once as (i, j) with i < j, ordered by i then j."""
        for i, nbrs in enumerate(self._adj):
            for j in nbrs:
                if j > i:
                    yield i, j

    def csr(self):
        """Adjacency in CSR form (int64 indptr, int32 indices), cached."""
        if self._csr is None:
            n = len(self._adj)
            indptr = np.zeros(n + 1, dtype=np.int64)
            for i, nbrs in enumerate(self._adj):
                indptr[i + 1] = indptr[i] + len(nbrs)
            indices = np.empty(int(indptr[-1]), dtype=np.int32)
            pos = 0
            for nbrs in self._adj:
                indices[pos:pos + len(nbrs)] = nbrs
                pos += len(nbrs)
            self._csr = (indptr, indices)
        return self._csr


def build_graph(records, policy: EdgePolicy = EdgePolicy()) -> Graph:
    """Assemble the conversation graph from records under an edge policy.

    Node order is first appearance while scanning records; within one
    record the author comes first, then the reply target, then mentions
    left to right.
    """
    names: list[str] = []
    index: dict[str, int] = {}
    adj: list[set[int]] = []

    def nid(handle: str) -> int:
        i = index.get(handle)
        if i is None:
            i = len(names)
            index[handle] = i
            names.append(handle)
            adj.append(set())
        return i

    for rec in records:
        a = nid(rec.author)
        targets = []
        if policy.use_replies and rec.reply_to:
            targets.append(rec.reply_to)
        if policy.use_mentions:
            targets.extend(extract_mentions(rec.text))
        for t in targets:
            b = nid(t)
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
    return Graph(names, [sorted(s) for s in adj])


def export_edgelist(g: Graph, format: str = "tsv") -> str:
    """Render the graph as a TSV edge list or a DOT graph block.

    Both forms are deterministic: edges are written once as (a, b) with
    a < b lexicographically, sorted; DOT additionally lists isolated
    nodes so the full node set survives a round trip through rendering.
    """
    pairs = sorted(
        tuple(sorted((g.handle(i), g.handle(j)))) for i, j in g.edges()
    )
    if format == "tsv":
        return "".join(f"{a}\t{b}\n" for a, b in pairs)
    if format == "dot":
        lines = ["graph conversation {"]
        for i in sorted(range(g.size), key=g.handle):
            if g.degree(i) == 0:
                lines.append(f'  "{g.handle(i)}";')
        for a, b in pairs:
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown edge list format {format!r}")
