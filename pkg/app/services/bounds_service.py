from builtins import float, int, len, list, tuple
import logging
import math
from typing import List, Tuple

import numpy as np

from app.models.bound_model import BoundCertificate
from app.models.graph_model import Clustering, Graph, PartialClustering
from app.services.objective_service import extend_partial
from app.utils.disjoint_set import DisjointSet
from app.utils.errors import EmptyGraphError

logger = logging.getLogger(__name__)


def forest_edge_weights(graph: Graph) -> np.ndarray:
    """W(e) = 1 / max(deg u, deg v) for every edge, in edge order."""
    if graph.m == 0:
        return np.zeros(0, dtype=np.float64)
    ends = graph.degrees[graph.edges]
    return 1.0 / ends.max(axis=1)


def maximum_spanning_forest(graph: Graph) -> Tuple[List[int], float]:
    """
    Kruskal on descending W with a disjoint-set structure.

    Returns the chosen edge indices (in selection order) and the forest weight.
    Equal weights are taken in input edge order.
    """
    weights = forest_edge_weights(graph)
    order = np.argsort(-weights, kind="stable")
    components = DisjointSet(graph.n)
    chosen: List[int] = []
    edges = graph.edges.tolist()
    for i in order.tolist():
        u, v = edges[i]
        if components.union(u, v):
            chosen.append(i)
    total = float(weights[chosen].sum()) if chosen else 0.0
    return chosen, total


def _require_vertices(graph: Graph) -> None:
    if graph.n == 0:
        logger.error("Spanning-forest bound requested for a graph without vertices.")
        raise EmptyGraphError("the spanning-forest bound needs at least one vertex")


def mst_bound(graph: Graph) -> BoundCertificate:
    """
    Certificate M/(3 sqrt n) - 1/3 <= Q^0(Opt) <= 2M for degree weights.

    On a disconnected graph the forest spans every component and n stays the
    total vertex count, which only weakens the lower bound.
    """
    _require_vertices(graph)
    chosen, M = maximum_spanning_forest(graph)
    root_n = math.sqrt(graph.n)
    certificate = BoundCertificate(
        forest_edges=tuple((int(u), int(v)) for u, v in graph.edges[chosen].tolist()) if chosen else (),
        M=M,
        lower=M / (3.0 * root_n) - 1.0 / 3.0,
        upper=2.0 * M,
        n=graph.n,
    )
    logger.info(f"forest bound: M={M:.6g}, interval [{certificate.lower:.6g}, {certificate.upper:.6g}]")
    return certificate


def realizable_lower_bound(certificate: BoundCertificate) -> float:
    """(M - sqrt n) / (3 sqrt n): the Q^0 that `mst_greedy_clustering` always reaches."""
    root_n = math.sqrt(certificate.n)
    return (certificate.M - root_n) / (3.0 * root_n)


def mst_greedy_clustering(graph: Graph) -> Clustering:
    """
    Pairs up endpoints of heavy forest edges.

    Forest edges with W(e) <= 1/sqrt(n) are dropped; the heaviest remaining edge
    (u, v) becomes the cluster {u, v} and every edge touching u or v is
    discarded, until no edge is left. Everything else is a singleton.
    """
    _require_vertices(graph)
    chosen, _ = maximum_spanning_forest(graph)
    weights = forest_edge_weights(graph)
    threshold = 1.0 / math.sqrt(graph.n)
    heavy = [i for i in chosen if weights[i] > threshold]
    # chosen is already in descending weight order, ties by edge index
    used = np.zeros(graph.n, dtype=bool)
    blocks = []
    for i in heavy:
        u, v = (int(x) for x in graph.edges[i])
        if not used[u] and not used[v]:
            used[u] = used[v] = True
            blocks.append([u, v])
    logger.debug(f"forest greedy formed {len(blocks)} pairs from {len(heavy)} heavy forest edges")
    return extend_partial(graph, PartialClustering.from_blocks(graph.n, blocks))
