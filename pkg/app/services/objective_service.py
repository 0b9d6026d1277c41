"""
Objective evaluators for ratio-based graph clustering.

The quality of a cluster C is q_w(C) = 2|E(C)| / w(C); a (partial) clustering
scores Q^lambda_w = sum over its clusters of (lambda + q_w(C_i)). With degree
weights this is tied to normalized cut, normalized associations and
normalized modularity; with unit weights it is twice the sum of edge densities.

Every evaluator is a pure function. Passing `exact=True` returns a
`fractions.Fraction` computed without rounding, which is what the identity
and oracle tests compare.
"""
from builtins import bool, float, int, len, range, sum
from fractions import Fraction
import logging
from typing import Iterable, List, Union

import numpy as np

from app.models.graph_model import Clustering, Graph, PartialClustering, WeightAssignment
from app.utils.disjoint_set import DisjointSet
from app.utils.errors import EmptyClusterError, EmptyGraphError, IsolatedVertexError

logger = logging.getLogger(__name__)

Number = Union[float, Fraction]


def _internal_edge_counts(graph: Graph, labels: np.ndarray, k: int) -> np.ndarray:
    if graph.m == 0 or k == 0:
        return np.zeros(k, dtype=np.int64)
    lu = labels[graph.edges[:, 0]]
    lv = labels[graph.edges[:, 1]]
    inside = (lu == lv) & (lu >= 0)
    return np.bincount(lu[inside], minlength=k).astype(np.int64)


def _weight_sums(labels: np.ndarray, weights: np.ndarray, k: int) -> np.ndarray:
    assigned = labels >= 0
    return np.bincount(labels[assigned], weights=weights[assigned], minlength=k)


def _exact_weight_sums(labels: np.ndarray, w: WeightAssignment, k: int) -> List[Fraction]:
    if w.integral:
        # float sums of integers are exact below 2**53
        return [Fraction(int(round(x))) for x in _weight_sums(labels, w.weights, k)]
    totals = [Fraction(0)] * k
    for v, c in enumerate(labels.tolist()):
        if c >= 0:
            totals[c] += Fraction(float(w.weights[v]))
    return totals


def _require_no_isolated(graph: Graph) -> None:
    isolated = graph.isolated_vertices()
    if isolated.size:
        logger.error(f"Vertex {isolated[0]} is isolated; degree-based objective undefined.")
        raise IsolatedVertexError(f"vertex {isolated[0]} is isolated; the objective needs deg(v) > 0")


def _require_edges(graph: Graph) -> None:
    if graph.m == 0:
        raise EmptyGraphError("the objective is undefined on a graph without edges")


def cluster_quality(graph: Graph, w: WeightAssignment, cluster: Iterable[int], exact: bool = False) -> Number:
    """
    Quality q_w(C) = 2|E(C)| / w(C) of a single vertex set.

    Raises:
        EmptyClusterError: If `cluster` has no vertices.
    """
    members = np.zeros(graph.n, dtype=bool)
    members[np.fromiter((int(v) for v in cluster), dtype=np.int64)] = True
    if not members.any():
        raise EmptyClusterError("cluster quality is undefined for an empty cluster")
    internal = int(np.count_nonzero(members[graph.edges[:, 0]] & members[graph.edges[:, 1]])) if graph.m else 0
    if exact:
        exact_weights = w.exact()
        return Fraction(2 * internal) / sum(exact_weights[v] for v in np.flatnonzero(members))
    return 2.0 * internal / float(w.weights[members].sum())


def cluster_qualities(graph: Graph, w: WeightAssignment, clustering: PartialClustering) -> np.ndarray:
    """Per-cluster q_w as a float array indexed by cluster id."""
    labels = clustering.assignment
    internal = _internal_edge_counts(graph, labels, clustering.k)
    return 2.0 * internal / _weight_sums(labels, w.weights, clustering.k)


def objective(
    graph: Graph, w: WeightAssignment, clustering: PartialClustering, lam: Number = 0.0, exact: bool = False
) -> Number:
    """
    Q^lambda_w: the sum over present clusters of lambda + q_w(C_i).

    Works for full and partial clusterings; unassigned vertices contribute nothing,
    so the empty partial clustering scores 0.
    """
    labels, k = clustering.assignment, clustering.k
    if exact:
        internal = _internal_edge_counts(graph, labels, k)
        totals = _exact_weight_sums(labels, w, k)
        return Fraction(lam) * k + sum((Fraction(2 * int(e)) / t for e, t in zip(internal, totals)), Fraction(0))
    if k == 0:
        return 0.0
    return float(lam) * k + float(cluster_qualities(graph, w, clustering).sum())


def ncut(graph: Graph, clustering: Clustering, exact: bool = False) -> Number:
    """Normalized cut: sum over clusters of |E_out(C_i)| / vol(C_i)."""
    _require_no_isolated(graph)
    labels, k = clustering.assignment, clustering.k
    volumes = np.bincount(labels, weights=graph.degrees, minlength=k)
    if graph.m:
        lu = labels[graph.edges[:, 0]]
        lv = labels[graph.edges[:, 1]]
        crossing = lu != lv
        cut = np.bincount(np.concatenate([lu[crossing], lv[crossing]]), minlength=k)
    else:
        cut = np.zeros(k, dtype=np.int64)
    if exact:
        return sum((Fraction(int(c), int(round(v))) for c, v in zip(cut, volumes)), Fraction(0))
    return float((cut / volumes).sum())


def nassoc(graph: Graph, clustering: Clustering, exact: bool = False) -> Number:
    """Normalized associations, i.e. Q^0 under degree weights."""
    return objective(graph, WeightAssignment.degree(graph), clustering, 0, exact=exact)


def modularity(graph: Graph, clustering: Clustering, exact: bool = False) -> Number:
    """
    Sum of M(C) = (1/m)(|E(C)| - vol(C)^2 / m) over clusters.

    The volume penalty is divided by m, not by the 4m^2-style constant of the
    classical convention.
    """
    _require_edges(graph)
    m = graph.m
    labels, k = clustering.assignment, clustering.k
    internal = _internal_edge_counts(graph, labels, k)
    volumes = np.bincount(labels, weights=graph.degrees, minlength=k)
    if exact:
        return sum(
            (Fraction(int(e)) - Fraction(int(round(v)) ** 2, m) for e, v in zip(internal, volumes)), Fraction(0)
        ) / m
    return float((internal - volumes ** 2 / m).sum() / m)


def normalized_modularity(graph: Graph, clustering: Clustering, exact: bool = False) -> Number:
    """NMod in closed form: (1/m)(Q^0_deg / 2 - 1)."""
    _require_edges(graph)
    _require_no_isolated(graph)
    q0 = nassoc(graph, clustering, exact=exact)
    if exact:
        return (q0 / 2 - 1) / graph.m
    return (q0 / 2.0 - 1.0) / graph.m


def normalized_modularity_by_clusters(graph: Graph, clustering: Clustering, exact: bool = False) -> Number:
    """
    NMod summed cluster by cluster as M'(C_i) / vol(C_i).

    M'(C) = (1/m)(|E(C)| - vol(C)^2 / (2m)); this volume penalty is the one for
    which the per-cluster sum agrees with `normalized_modularity`.
    """
    _require_edges(graph)
    _require_no_isolated(graph)
    m = graph.m
    labels, k = clustering.assignment, clustering.k
    internal = _internal_edge_counts(graph, labels, k)
    volumes = np.bincount(labels, weights=graph.degrees, minlength=k)
    if exact:
        total = Fraction(0)
        for e, v in zip(internal, volumes):
            vol = int(round(v))
            total += (Fraction(int(e)) - Fraction(vol * vol, 2 * m)) / (m * vol)
        return total
    return float(((internal - volumes ** 2 / (2.0 * m)) / (m * volumes)).sum())


def density_sum(graph: Graph, clustering: PartialClustering, exact: bool = False) -> Number:
    """Sum of edge densities |E(C_i)| / |C_i|, equal to Q^0 under unit weights halved."""
    labels, k = clustering.assignment, clustering.k
    internal = _internal_edge_counts(graph, labels, k)
    sizes = np.bincount(labels[labels >= 0], minlength=k)
    if exact:
        return sum((Fraction(int(e), int(s)) for e, s in zip(internal, sizes)), Fraction(0))
    return float((internal / sizes).sum()) if k else 0.0


def extend_partial(graph: Graph, partial: PartialClustering) -> Clustering:
    """Completes a partial clustering by putting every unassigned vertex in its own cluster."""
    labels = partial.assignment.copy()
    unassigned = np.flatnonzero(labels < 0)
    labels[unassigned] = partial.k + np.arange(unassigned.size)
    labels.flags.writeable = False
    return Clustering(labels, partial.k + int(unassigned.size))


def split_disconnected(graph: Graph, clustering: Clustering) -> Clustering:
    """
    Replaces each cluster that induces a disconnected subgraph by its connected components.

    Splitting only removes weight from the denominators, so Q^0 does not decrease.
    """
    labels = clustering.assignment
    components = DisjointSet(graph.n)
    for u, v in graph.edges.tolist():
        if labels[u] == labels[v]:
            components.union(u, v)
    ids = {}
    new_labels = [ids.setdefault(components.find(v), len(ids)) for v in range(graph.n)]
    return Clustering.from_labels(new_labels)
