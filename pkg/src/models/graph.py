"""Graph data models: immutable simple undirected graph, node sets and signals"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as csgraph_components
from scipy.sparse.csgraph import dijkstra

from src.utils.errors import ValidationError

NodeSet = Tuple[int, ...]
Edge = Tuple[int, int]

# Rows of BFS distances computed per scipy call in bulk neighbourhood queries
BFS_BATCH_SIZE = 256


def node_set(ids: Iterable[int], n: Optional[int] = None) -> NodeSet:
    """Build a sorted, duplicate-free node set, optionally checking ids against n"""
    result = tuple(sorted({int(i) for i in ids}))
    if result and result[0] < 0:
        raise ValidationError(f"Negative vertex id {result[0]}")
    if n is not None and result and result[-1] >= n:
        raise ValidationError(f"Vertex id {result[-1]} out of range for {n} vertices")
    return result


def as_signal(values: Iterable[float], n: int) -> np.ndarray:
    """Coerce values into a float signal of length n"""
    if not isinstance(values, np.ndarray):
        values = list(values)
    signal = np.asarray(values, dtype=float)
    if signal.ndim != 1 or signal.shape[0] != n:
        raise ValidationError(f"Signal length {signal.shape} does not match {n} vertices")
    return signal


@dataclass(frozen=True)
class VertexMapping:
    """Relabeling between an induced subgraph and its parent graph"""
    local_to_global: NodeSet

    @cached_property
    def global_to_local(self) -> Dict[int, int]:
        return {g: i for i, g in enumerate(self.local_to_global)}

    def to_global(self, local_ids: Iterable[int]) -> NodeSet:
        return node_set(self.local_to_global[i] for i in local_ids)

    def to_local(self, global_ids: Iterable[int]) -> NodeSet:
        index = self.global_to_local
        return node_set(index[g] for g in global_ids if g in index)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph in sorted adjacency-list form"""
    node_count: int
    neighbors: Tuple[NodeSet, ...]
    edge_count: int
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    # ---------- construction ----------

    @classmethod
    def from_edge_list(
        cls,
        edges: Iterable[Sequence[int]],
        n: Optional[int] = None,
        labels: Optional[Sequence[str]] = None
    ) -> 'Graph':
        """
        Build a graph from (u, v) pairs

        Duplicate and reversed pairs collapse into one edge. Self-loops and ids
        outside [0, n) are rejected.

        Args:
            edges: Iterable of vertex id pairs
            n: Vertex count; inferred as max id + 1 when omitted
            labels: Optional external label per vertex id

        Returns:
            Graph instance
        """
        pairs = [(int(e[0]), int(e[1])) for e in edges]
        if n is None:
            n = 1 + max((max(u, v) for u, v in pairs), default=-1)
        adjacency: List[set] = [set() for _ in range(n)]
        for u, v in pairs:
            if u == v:
                raise ValidationError(f"Self-loop rejected: ({u}, {v})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"Edge ({u}, {v}) references a vertex outside [0, {n})")
            adjacency[u].add(v)
            adjacency[v].add(u)
        if labels is not None and len(labels) != n:
            raise ValidationError(f"Expected {n} labels, got {len(labels)}")
        neighbors = tuple(tuple(sorted(adj)) for adj in adjacency)
        edge_count = sum(len(adj) for adj in neighbors) // 2
        return cls(
            node_count=n,
            neighbors=neighbors,
            edge_count=edge_count,
            labels=tuple(labels) if labels is not None else None
        )

    # ---------- basic queries ----------

    def degree(self, u: int) -> int:
        """Number of neighbours of u"""
        self._check_vertex(u)
        return len(self.neighbors[u])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.fromiter((len(adj) for adj in self.neighbors), dtype=np.int64,
                           count=self.node_count)

    def edges(self) -> Iterator[Edge]:
        """Each undirected edge once, as (u, v) with u < v"""
        for u, adj in enumerate(self.neighbors):
            for v in adj:
                if u < v:
                    yield u, v

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) integer array, u < v"""
        arr = np.fromiter((x for e in self.edges() for x in e), dtype=np.int64,
                          count=2 * self.edge_count)
        return arr.reshape(-1, 2)

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix A"""
        n = self.node_count
        if self.edge_count == 0:
            return sp.csr_matrix((n, n), dtype=np.int64)
        e = self.edge_array
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(rows.shape[0], dtype=np.int64)
        return sp.csr_matrix((data, (rows, cols)), shape=(n, n))

    def laplacian(self) -> sp.csr_matrix:
        """Combinatorial Laplacian L = D - A (integer entries)"""
        return (sp.diags(self.degrees, format="csr", dtype=np.int64) - self.adjacency).tocsr()

    # ---------- traversal ----------

    def bfs_within(self, src: int, d: int) -> NodeSet:
        """All vertices at hop distance <= d from src, src included"""
        self._check_vertex(src)
        if d < 0:
            raise ValidationError(f"Distance must be non-negative, got {d}")
        return self.balls_within([src], d)[0]

    def balls_within(self, sources: Sequence[int], d: int) -> List[NodeSet]:
        """bfs_within for many sources, batched through scipy's BFS"""
        if d < 0:
            raise ValidationError(f"Distance must be non-negative, got {d}")
        balls: List[NodeSet] = []
        sources = list(sources)
        for start in range(0, len(sources), BFS_BATCH_SIZE):
            batch = sources[start:start + BFS_BATCH_SIZE]
            dist = dijkstra(self.adjacency, directed=False, indices=batch,
                            unweighted=True, limit=d + 0.5)
            dist = np.atleast_2d(dist)
            for row in dist:
                balls.append(tuple(int(i) for i in np.flatnonzero(np.isfinite(row))))
        return balls

    def reach_mask(self, sources: Sequence[int], d: int) -> np.ndarray:
        """Boolean mask of the union of the d-balls around sources"""
        mask = np.zeros(self.node_count, dtype=bool)
        sources = list(sources)
        for start in range(0, len(sources), BFS_BATCH_SIZE):
            batch = sources[start:start + BFS_BATCH_SIZE]
            dist = dijkstra(self.adjacency, directed=False, indices=batch,
                            unweighted=True, limit=d + 0.5)
            mask |= np.isfinite(np.atleast_2d(dist)).any(axis=0)
        return mask

    def connected_components(self) -> List[NodeSet]:
        """Vertex sets of the connected components, ordered by smallest member"""
        if self.node_count == 0:
            return []
        _, labels = csgraph_components(self.adjacency, directed=False)
        groups: Dict[int, List[int]] = {}
        for v, label in enumerate(labels):
            groups.setdefault(int(label), []).append(v)
        return sorted((tuple(members) for members in groups.values()), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return self.node_count > 0 and len(self.connected_components()) == 1

    def induced_subgraph(self, s: Iterable[int]) -> Tuple['Graph', VertexMapping]:
        """
        Subgraph induced by s, relabeled to 0..|s|-1

        Returns:
            Tuple of (subgraph, mapping between new and old ids)
        """
        members = node_set(s, self.node_count)
        if not members:
            raise ValidationError("Induced subgraph requires a nonempty vertex set")
        mapping = VertexMapping(members)
        index = mapping.global_to_local
        neighbors = tuple(
            tuple(index[w] for w in self.neighbors[v] if w in index)
            for v in members
        )
        edge_count = sum(len(adj) for adj in neighbors) // 2
        labels = tuple(self.labels[v] for v in members) if self.labels else None
        return Graph(len(members), neighbors, edge_count, labels), mapping

    # ---------- helpers ----------

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.node_count:
            raise ValidationError(f"Vertex {u} out of range for {self.node_count} vertices")

    def to_dict(self) -> Dict:
        """Convert to dictionary for JSON serialization"""
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "edges": [list(e) for e in self.edges()],
            "labels": list(self.labels) if self.labels else None
        }


def largest_component(g: Graph) -> NodeSet:
    """The largest connected component (ties: the one with the smallest member)"""
    components = g.connected_components()
    if not components:
        raise ValidationError("Graph has no vertices")
    return max(components, key=len)


def path_graph(n: int) -> Graph:
    return Graph.from_edge_list(((i, i + 1) for i in range(n - 1)), n)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edge_list(((i, (i + 1) % n) for i in range(n)), n)


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols lattice, vertex id = r * cols + c"""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edge_list(edges, rows * cols)
