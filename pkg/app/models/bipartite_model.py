from builtins import bool, classmethod, dict, int, len, list, property, range, set, str, tuple
from dataclasses import dataclass, field
import logging
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from app.models.graph_model import Graph, PartialClustering, WeightAssignment, build_graph
from app.utils.errors import InvalidClusteringError, InvalidInstanceError

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class CvwapInstance:
    """
    Input of the capacitated vertex-weighted assignment problem.

    Vertices are the ids 0..n-1; `in_s[v]` says which side v is on and every
    edge is stored as (s, t) with s in S, t in T and w(s) >= w(t).
    """
    weights: np.ndarray
    in_s: np.ndarray
    edges: np.ndarray

    def __post_init__(self):
        if self.weights.shape != self.in_s.shape:
            raise InvalidInstanceError("weights and side labels must cover the same vertices")
        if self.weights.size and not np.all(self.weights > 0):
            raise InvalidInstanceError("all CVWAP weights must be positive")
        if self.edges.size:
            s, t = self.edges[:, 0], self.edges[:, 1]
            if not (np.all(self.in_s[s]) and not np.any(self.in_s[t])):
                raise InvalidInstanceError("every edge must run from S to T")
            bad = np.flatnonzero(self.weights[s] < self.weights[t])
            if bad.size:
                i = int(bad[0])
                logger.error(f"CVWAP edge {i} violates w(s) >= w(t).")
                raise InvalidInstanceError(
                    f"edge {i} ({s[i]}, {t[i]}) has w(s)={self.weights[s[i]]} < w(t)={self.weights[t[i]]}"
                )

    @classmethod
    def from_sides(
        cls, s_weights: Sequence[float], t_weights: Sequence[float], edges: Iterable[Tuple[int, int]]
    ) -> "CvwapInstance":
        """
        Builds an instance from per-side weight lists.

        S-vertex i gets id i and T-vertex j gets id len(s_weights) + j; `edges`
        holds (i, j) index pairs into the two lists.
        """
        offset = len(s_weights)
        weights = np.array(list(s_weights) + list(t_weights), dtype=np.float64)
        in_s = np.zeros(weights.size, dtype=bool)
        in_s[:offset] = True
        pairs = np.array([(int(i), offset + int(j)) for i, j in edges], dtype=np.int64).reshape(-1, 2)
        return cls(_frozen(weights), _frozen(in_s), _frozen(pairs))

    @property
    def n(self) -> int:
        return int(self.weights.shape[0])

    @property
    def s_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.in_s)

    @property
    def t_vertices(self) -> np.ndarray:
        return np.flatnonzero(~self.in_s)

    @property
    def integral(self) -> bool:
        return bool(np.all(np.floor(self.weights) == self.weights))

    def weight_assignment(self) -> WeightAssignment:
        return WeightAssignment.explicit(self.weights)

    def to_graph(self) -> Graph:
        return build_graph(self.edges, self.n)

    def edge_set(self) -> set:
        return {(int(s), int(t)) for s, t in self.edges}


@dataclass(frozen=True, eq=False)
class Assignment:
    """
    A CVWAP solution: `owner[t]` is the S-vertex whose cluster holds t, or -1.

    `accepted` lists instance edge indices in the order a solver accepted
    them; exhaustive solvers leave it empty.
    """
    owner: np.ndarray
    accepted: Tuple[int, ...] = field(default=())

    @classmethod
    def empty(cls, instance: CvwapInstance) -> "Assignment":
        return cls(_frozen(np.full(instance.n, -1, dtype=np.int64)))

    @classmethod
    def from_owners(cls, instance: CvwapInstance, owners: Dict[int, int]) -> "Assignment":
        owner = np.full(instance.n, -1, dtype=np.int64)
        for t, s in owners.items():
            owner[t] = s
        return cls(_frozen(owner))

    @classmethod
    def from_partial(cls, instance: CvwapInstance, partial: PartialClustering) -> "Assignment":
        """Reads a restricted partial clustering (one S-vertex per cluster) as an assignment."""
        owner = np.full(instance.n, -1, dtype=np.int64)
        for block in partial.blocks():
            centers = [v for v in block if instance.in_s[v]]
            if len(centers) != 1:
                raise InvalidClusteringError(f"cluster {block} must contain exactly one S-vertex")
            for v in block:
                if v != centers[0]:
                    owner[v] = centers[0]
        return cls(_frozen(owner))

    def clusters(self, instance: CvwapInstance) -> Dict[int, List[int]]:
        """T-vertices owned by each S-vertex; every S-vertex is present, possibly with none."""
        out: Dict[int, List[int]] = {int(s): [] for s in instance.s_vertices}
        for t in np.flatnonzero(self.owner >= 0):
            out[int(self.owner[t])].append(int(t))
        return out

    def loads(self, instance: CvwapInstance) -> np.ndarray:
        """Total owned T-weight per S-vertex, indexed by vertex id."""
        owned = np.flatnonzero(self.owner >= 0)
        return np.bincount(self.owner[owned], weights=instance.weights[owned], minlength=instance.n)

    def violations(self, instance: CvwapInstance) -> List[str]:
        """Human-readable list of broken assignment invariants; empty when feasible."""
        problems = []
        edges = instance.edge_set()
        for t in np.flatnonzero(self.owner >= 0):
            s = int(self.owner[t])
            if (s, int(t)) not in edges:
                problems.append(f"t={t} owned by s={s} without an edge")
        loads = self.loads(instance)
        for s in instance.s_vertices:
            if loads[s] > 2 * instance.weights[s]:
                problems.append(f"s={s} carries T-weight {loads[s]} > 2*{instance.weights[s]}")
        return problems

    def to_partial(self, instance: CvwapInstance) -> PartialClustering:
        """Clusters {s} + owned T-vertices for every S-vertex that owns at least one t."""
        blocks = [[s] + ts for s, ts in sorted(self.clusters(instance).items()) if ts]
        return PartialClustering.from_blocks(instance.n, blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, Assignment) and np.array_equal(self.owner, other.owner)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BipartiteInstance:
    """
    Random bipartite subgraph H of an origin graph.

    `in_s[v]` is the side of v; `kept_edges` holds (s, t) pairs and
    `kept_index` their positions in `origin.edges`.
    """
    in_s: np.ndarray
    kept_edges: np.ndarray
    kept_index: np.ndarray
    weights: WeightAssignment
    origin: Graph

    @property
    def n(self) -> int:
        return self.origin.n

    def to_cvwap(self) -> CvwapInstance:
        return CvwapInstance(self.weights.weights, self.in_s, self.kept_edges)

    def to_graph(self) -> Graph:
        return build_graph(self.kept_edges, self.origin.n)

    def __repr__(self) -> str:
        return f"<BipartiteInstance n={self.n}, |S|={int(self.in_s.sum())}, kept={len(self.kept_edges)}>"
