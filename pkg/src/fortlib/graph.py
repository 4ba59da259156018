"""Simple undirected graphs stored as bitmask adjacency rows.

Hypercubes are ordinary :class:`Graph` objects whose vertex index is the
binary label value, so ``u ~ v`` iff ``popcount(u ^ v) == 1``.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .bits import VertexSet, full, iter_members
from .errors import GraphError

MAX_VERTICES = 1 << 24
MAX_DIMENSION = 24


class NotBipartiteError(GraphError):
    """Raised by :func:`bipartition`; ``cycle`` holds an odd closed walk."""

    def __init__(self, cycle: list[int]):
        super().__init__(f"graph is not bipartite (odd cycle {cycle})")
        self.cycle = cycle


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None
    dim: Optional[int] = None

    def neighbors(self, v: int) -> VertexSet:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    @property
    def vertices(self) -> VertexSet:
        return full(self.n)

    @property
    def is_hypercube(self) -> bool:
        return self.dim is not None

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in iter_members(self.adjacency[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    @cached_property
    def graph_id(self) -> str:
        """Digest of ``n`` and the sorted edge list; labels do not matter."""
        h = hashlib.sha256(f"n={self.n};".encode())
        for u, v in self.edges():
            h.update(f"{u},{v};".encode())
        return h.hexdigest()[:16]

    def vertex_index(self, token) -> int:
        """Resolve an int index or a vertex label to an index."""
        if isinstance(token, int) and not isinstance(token, bool):
            if not 0 <= token < self.n:
                raise GraphError(f"vertex {token} out of range for n={self.n}")
            return token
        token = str(token)
        if self.labels is not None and token in self.labels:
            return self.labels.index(token)
        if token.isdigit():
            return self.vertex_index(int(token))
        raise GraphError(f"unknown vertex {token!r}")

    def set_from(self, tokens: Iterable) -> VertexSet:
        mask = 0
        for t in tokens:
            mask |= 1 << self.vertex_index(t)
        return mask


def _hypercube_rows(d: int) -> tuple[int, ...]:
    return tuple(sum(1 << (v ^ (1 << j)) for j in range(d)) for v in range(1 << d))


def hypercube_labels(d: int) -> tuple[str, ...]:
    return tuple(format(v, f"0{d}b") for v in range(1 << d))


def build_hypercube(d: int) -> Graph:
    if not isinstance(d, int) or not 1 <= d <= MAX_DIMENSION:
        raise GraphError(f"hypercube dimension must be in [1, {MAX_DIMENSION}], got {d!r}")
    return Graph(1 << d, _hypercube_rows(d), hypercube_labels(d), d)


def build_from_edge_list(
    n: int,
    edges: Iterable[Sequence[int]],
    labels: Optional[Sequence[str]] = None,
) -> Graph:
    if not isinstance(n, int) or not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count must be in [1, {MAX_VERTICES}], got {n!r}")
    rows = [0] * n
    for edge in edges:
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise GraphError(f"expected {n} labels, got {len(labels)}")
    return Graph(n, tuple(rows), labels)


def with_hypercube_meta(g: Graph, d: int) -> Graph:
    """Attach hypercube metadata after checking ``g`` really is Q_d."""
    if g.n != 1 << d or g.adjacency != _hypercube_rows(d):
        raise GraphError(f"graph does not match the XOR adjacency of Q_{d}")
    return Graph(g.n, g.adjacency, hypercube_labels(d), d)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """``G □ H`` with vertex ``(u, u')`` at index ``u * |V(H)| + u'``."""
    n = g.n * h.n
    if n > MAX_VERTICES:
        raise GraphError(f"product has {n} vertices, above the {MAX_VERTICES} guard")
    nh = h.n
    rows = []
    for u in range(g.n):
        g_row = list(iter_members(g.adjacency[u]))
        for up in range(nh):
            row = h.adjacency[up] << (u * nh)
            for w in g_row:
                row |= 1 << (w * nh + up)
            rows.append(row)
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = tuple(a + b for a in g.labels for b in h.labels)
    dim = g.dim + h.dim if g.dim is not None and h.dim is not None else None
    return Graph(n, tuple(rows), labels, dim)


def neighborhood(g: Graph, v: int) -> VertexSet:
    _check_vertex(g, v)
    return g.adjacency[v]


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    _check_vertex(g, v)
    return g.adjacency[v] | (1 << v)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def _bfs_layers(g: Graph, source: int):
    """Yield (distance, layer mask) in BFS order from ``source``."""
    seen = 1 << source
    layer = 1 << source
    dist = 0
    while layer:
        yield dist, layer
        nxt = 0
        for w in iter_members(layer):
            nxt |= g.adjacency[w]
        layer = nxt & ~seen
        seen |= layer
        dist += 1


def distance(g: Graph, u: int, v: int) -> Optional[int]:
    """Shortest-path length, or ``None`` when ``v`` is unreachable from ``u``."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    for dist, layer in _bfs_layers(g, u):
        if layer >> v & 1:
            if g.dim is not None:
                assert dist == (u ^ v).bit_count()
            return dist
    return None


def count_shortest_paths(g: Graph, u: int, v: int) -> int:
    """Number of distinct shortest ``u``-``v`` paths (0 if unreachable)."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    counts = {u: 1}
    for _, layer in _bfs_layers(g, u):
        if layer >> v & 1:
            return counts[v]
        nxt_counts: dict[int, int] = {}
        for w in iter_members(layer):
            for x in iter_members(g.adjacency[w]):
                if x not in counts:
                    nxt_counts[x] = nxt_counts.get(x, 0) + counts[w]
        counts.update(nxt_counts)
    return 0


def bipartition(g: Graph) -> tuple[VertexSet, VertexSet]:
    """Two-colour ``g`` by BFS; the first part always contains vertex 0.

    Each component is rooted at its smallest vertex, which goes in the first
    part. Raises :class:`NotBipartiteError` with an odd cycle otherwise.
    """
    colour = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if colour[root] != -1:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in iter_members(g.adjacency[u]):
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    queue.append(w)
                elif colour[w] == colour[u]:
                    raise NotBipartiteError(_odd_cycle(parent, u, w))
    first = sum(1 << v for v in range(g.n) if colour[v] == 0)
    return first, g.vertices & ~first


def _odd_cycle(parent: list[int], u: int, w: int) -> list[int]:
    def to_root(x):
        path = [x]
        while parent[x] != -1:
            x = parent[x]
            path.append(x)
        return path

    pu, pw = to_root(u), to_root(w)
    on_pw = set(pw)
    lca = next(x for x in pu if x in on_pw)
    left = pu[: pu.index(lca) + 1]
    right = pw[: pw.index(lca)]
    return left + right[::-1]


def is_regular(g: Graph, k: int) -> bool:
    return all(row.bit_count() == k for row in g.adjacency)


def check_hypercube_invariants(g: Graph) -> None:
    """Assert the order, size and regularity that Q_d must have."""
    d = g.dim
    if d is None:
        raise GraphError("graph carries no hypercube metadata")
    if g.n != 1 << d:
        raise GraphError(f"Q_{d} must have {1 << d} vertices, has {g.n}")
    if g.num_edges() != d * (1 << (d - 1)):
        raise GraphError(f"Q_{d} must have {d << (d - 1)} edges")
    if not is_regular(g, d):
        raise GraphError(f"Q_{d} must be {d}-regular")


def complete_graph(n: int) -> Graph:
    return build_from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> Graph:
    return build_from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def hamming_distance(u: int, v: int) -> int:
    return (u ^ v).bit_count()
