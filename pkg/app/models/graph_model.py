from builtins import bool, classmethod, int, isinstance, len, list, property, range, str, tuple
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from app.utils.errors import (
    DuplicateEdgeError, InvalidClusteringError, IsolatedVertexError, NonPositiveWeightError,
    SelfLoopError, VertexOutOfRangeError,
)

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Undirected simple graph on the dense vertex ids 0..n-1.

    Attributes:
        n (int): Number of vertices.
        edges (np.ndarray): (m, 2) array of endpoint pairs, in input order.
        degrees (np.ndarray): Number of edges incident to each vertex.
        indptr (np.ndarray): CSR offsets into `incident`, one slot per vertex plus one.
        incident (np.ndarray): Edge indices grouped by endpoint.

    Instances are read-only and safe to share between threads.
    """
    n: int
    edges: np.ndarray
    degrees: np.ndarray
    indptr: np.ndarray
    incident: np.ndarray

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def edge_list(self) -> List[Tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def incident_edges(self, v: int) -> np.ndarray:
        return self.incident[self.indptr[v]:self.indptr[v + 1]]

    def neighbors(self, v: int) -> np.ndarray:
        ends = self.edges[self.incident_edges(v)]
        return np.where(ends[:, 0] == v, ends[:, 1], ends[:, 0])

    def isolated_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.degrees == 0)

    def __repr__(self) -> str:
        return f"<Graph n={self.n}, m={self.m}>"


def build_graph(edge_list: Iterable[Sequence[int]], n: int) -> Graph:
    """
    Builds a Graph from vertex-id pairs, rejecting anything that is not a simple graph.

    Args:
        edge_list: Pairs (u, v) with 0 <= u, v < n, or an (m, 2) integer array.
        n (int): Number of vertices.

    Returns:
        Graph: The graph with degrees and incident-edge index computed.

    Raises:
        VertexOutOfRangeError: If an endpoint lies outside [0, n).
        SelfLoopError: If an edge joins a vertex to itself.
        DuplicateEdgeError: If an unordered pair appears twice.
    """
    if n < 0:
        raise VertexOutOfRangeError(f"vertex count must be non-negative, got {n}")
    if not isinstance(edge_list, np.ndarray):
        edge_list = list(edge_list)
    edges = np.asarray(edge_list, dtype=np.int64).reshape(-1, 2).copy()
    m = edges.shape[0]

    out_of_range = np.flatnonzero(((edges < 0) | (edges >= n)).any(axis=1))
    if out_of_range.size:
        i = int(out_of_range[0])
        logger.error(f"Edge {i} {tuple(edges[i])} has an endpoint outside [0, {n}).")
        raise VertexOutOfRangeError(f"edge {i} ({edges[i, 0]}, {edges[i, 1]}) has an endpoint outside [0, {n})")

    loops = np.flatnonzero(edges[:, 0] == edges[:, 1])
    if loops.size:
        i = int(loops[0])
        logger.error(f"Edge {i} is a self-loop on vertex {edges[i, 0]}.")
        raise SelfLoopError(f"edge {i} is a self-loop on vertex {edges[i, 0]}")

    if m > 1:
        keys = np.minimum(edges[:, 0], edges[:, 1]) * n + np.maximum(edges[:, 0], edges[:, 1])
        order = np.argsort(keys, kind="stable")
        repeated = np.flatnonzero(keys[order][1:] == keys[order][:-1])
        if repeated.size:
            i = int(order[1:][repeated].min())
            logger.error(f"Edge {i} ({edges[i, 0]}, {edges[i, 1]}) is a duplicate.")
            raise DuplicateEdgeError(f"edge {i} ({edges[i, 0]}, {edges[i, 1]}) duplicates an earlier edge")

    degrees = np.bincount(edges.ravel(), minlength=n).astype(np.int64)
    endpoints = np.concatenate([edges[:, 0], edges[:, 1]])
    edge_ids = np.concatenate([np.arange(m, dtype=np.int64)] * 2)
    incident = edge_ids[np.argsort(endpoints, kind="stable")]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    return Graph(
        n=int(n),
        edges=_frozen(edges),
        degrees=_frozen(degrees),
        indptr=_frozen(indptr),
        incident=_frozen(incident),
    )


class WeightMode(str, Enum):
    DEGREE = "degree"
    UNIT = "unit"
    EXPLICIT = "explicit"


@dataclass(frozen=True, eq=False)
class WeightAssignment:
    """Positive vertex weights w and the mode they were derived from."""
    mode: WeightMode
    weights: np.ndarray

    def __post_init__(self):
        bad = np.flatnonzero(~(np.isfinite(self.weights) & (self.weights > 0)))
        if bad.size:
            v = int(bad[0])
            raise NonPositiveWeightError(f"vertex {v} has non-positive weight {self.weights[v]}")

    @classmethod
    def degree(cls, graph: Graph) -> "WeightAssignment":
        isolated = graph.isolated_vertices()
        if isolated.size:
            logger.error(f"Degree weights requested but vertex {isolated[0]} is isolated.")
            raise IsolatedVertexError(f"vertex {isolated[0]} is isolated; degree weights need deg(v) > 0")
        return cls(WeightMode.DEGREE, _frozen(graph.degrees.astype(np.float64)))

    @classmethod
    def unit(cls, n: int) -> "WeightAssignment":
        return cls(WeightMode.UNIT, _frozen(np.ones(n, dtype=np.float64)))

    @classmethod
    def explicit(cls, values: Sequence[float]) -> "WeightAssignment":
        return cls(WeightMode.EXPLICIT, _frozen(np.array(values, dtype=np.float64)))

    @property
    def n(self) -> int:
        return int(self.weights.shape[0])

    @property
    def integral(self) -> bool:
        return bool(np.all(np.floor(self.weights) == self.weights))

    def exact(self) -> List[Fraction]:
        """Weights as exact rationals (integers stay integers)."""
        if self.integral:
            return [Fraction(int(x)) for x in self.weights]
        return [Fraction(float(x)) for x in self.weights]


def _canonical_labels(labels: np.ndarray) -> Tuple[np.ndarray, int]:
    """Relabels non-negative ids 0, 1, ... in order of first occurrence; -1 stays -1."""
    out = np.full(labels.shape, -1, dtype=np.int64)
    assigned = labels >= 0
    if not assigned.any():
        return out, 0
    uniq, first, inverse = np.unique(labels[assigned], return_index=True, return_inverse=True)
    rank = np.empty(uniq.size, dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.size)
    out[assigned] = rank[inverse]
    return out, int(uniq.size)


@dataclass(frozen=True, eq=False)
class PartialClustering:
    """
    Disjoint nonempty clusters over a subset of the vertices.

    `assignment[v]` is the cluster id of v in [0, k), or -1 when v is unassigned.
    """
    assignment: np.ndarray
    k: int

    def __post_init__(self):
        a = self.assignment
        if a.size and (a.min() < -1 or a.max() >= self.k):
            raise InvalidClusteringError(f"cluster ids must lie in [-1, {self.k})")
        sizes = np.bincount(a[a >= 0], minlength=self.k)
        if self.k and sizes.min() == 0:
            raise InvalidClusteringError(f"cluster {int(np.argmin(sizes))} is empty")

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "PartialClustering":
        canon, k = _canonical_labels(np.asarray(labels, dtype=np.int64))
        return cls(_frozen(canon), k)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "PartialClustering":
        labels = np.full(n, -1, dtype=np.int64)
        for cluster_id, block in enumerate(blocks):
            for v in block:
                if labels[v] != -1:
                    raise InvalidClusteringError(f"vertex {v} appears in two clusters")
                labels[v] = cluster_id
        return cls.from_labels(labels)

    @classmethod
    def empty(cls, n: int) -> "PartialClustering":
        return cls(_frozen(np.full(n, -1, dtype=np.int64)), 0)

    @property
    def n(self) -> int:
        return int(self.assignment.shape[0])

    def blocks(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.assignment.tolist()):
            if c >= 0:
                out[c].append(v)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, type(self))
            and self.k == other.k
            and np.array_equal(self.assignment, other.assignment)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} n={self.n}, k={self.k}, blocks={self.blocks()}>"


@dataclass(frozen=True, eq=False)
class Clustering(PartialClustering):
    """A partition of all vertices into k nonempty clusters."""

    def __post_init__(self):
        super().__post_init__()
        if self.assignment.size and self.assignment.min() < 0:
            raise InvalidClusteringError(f"vertex {int(np.argmin(self.assignment))} has no cluster")

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Clustering":
        partial = PartialClustering.from_blocks(n, blocks)
        return cls(partial.assignment, partial.k)

    @classmethod
    def singletons(cls, n: int) -> "Clustering":
        return cls(_frozen(np.arange(n, dtype=np.int64)), n)

    @classmethod
    def single(cls, n: int) -> "Clustering":
        return cls(_frozen(np.zeros(n, dtype=np.int64)), 1 if n else 0)

    def canonical(self) -> "Clustering":
        canon, k = _canonical_labels(self.assignment)
        return Clustering(_frozen(canon), k)
