"""
Exact brute-force optimizer over all set partitions of a small vertex set.

Partitions are produced as restricted growth strings a[0..n-1] with a[0] = 0
and a[i] <= 1 + max(a[:i]); each string is one set partition, so the stream
has Bell(n) elements. No pruning is applied: the oracle has to be obviously
correct, it is the ground truth for the approximation tests.
"""
from builtins import bool, float, int, len, list, max, range, sum, tuple
from fractions import Fraction
import logging
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from app.dependencies import get_settings
from app.models.bipartite_model import CvwapInstance
from app.models.graph_model import Clustering, Graph, PartialClustering, WeightAssignment
from app.utils.errors import TooLargeError

settings = get_settings()
logger = logging.getLogger(__name__)

Number = Union[float, Fraction]


def _check_size(n: int, limit: int, what: str) -> None:
    if not 1 <= n <= limit:
        logger.error(f"{what} refused: n={n} outside [1, {limit}]")
        raise TooLargeError(f"{what} supports 1 <= n <= {limit}, got {n}")


def restricted_growth_strings(n: int) -> Iterator[Tuple[int, ...]]:
    """All restricted growth strings of length n in lexicographic order."""
    a = [0] * n
    # peak[i] = max(a[:i]) for i >= 1
    peak = [0] * n
    yield tuple(a)
    while True:
        i = n - 1
        while i > 0 and a[i] == peak[i] + 1:
            i -= 1
        if i <= 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0
            peak[j] = max(peak[j - 1], a[j - 1])
        yield tuple(a)


def enumerate_partitions(n: int, max_n: Optional[int] = None) -> Iterator[Clustering]:
    """
    Yields every clustering of n vertices exactly once.

    Raises:
        TooLargeError: If n is outside [1, max_n] (default from settings).
    """
    _check_size(n, settings.oracle_max_vertices if max_n is None else max_n, "partition enumeration")
    for rgs in restricted_growth_strings(n):
        labels = np.array(rgs, dtype=np.int64)
        labels.flags.writeable = False
        yield Clustering(labels, max(rgs) + 1)


class _SubsetTable:
    """q_w(C) for every vertex subset C, indexed by bitmask."""

    def __init__(self, graph: Graph, w: WeightAssignment):
        n = graph.n
        neighbour_mask = [0] * n
        for u, v in graph.edges.tolist():
            neighbour_mask[u] |= 1 << v
            neighbour_mask[v] |= 1 << u
        exact_weights = w.exact()
        size = 1 << n
        self.edges = [0] * size
        self.weight = [Fraction(0)] * size
        self.quality = [0.0] * size
        for mask in range(1, size):
            low = mask & -mask
            v = low.bit_length() - 1
            rest = mask ^ low
            self.edges[mask] = self.edges[rest] + bin(neighbour_mask[v] & rest).count("1")
            self.weight[mask] = self.weight[rest] + exact_weights[v]
            self.quality[mask] = 2.0 * self.edges[mask] / float(self.weight[mask])

    def exact_quality(self, mask: int) -> Fraction:
        return Fraction(2 * self.edges[mask]) / self.weight[mask]


def _block_masks(rgs: Tuple[int, ...]) -> List[int]:
    masks = [0] * (max(rgs) + 1)
    for v, block in enumerate(rgs):
        masks[block] |= 1 << v
    return masks


def _scan(graph: Graph, w: WeightAssignment, lam: Number, max_n: Optional[int]):
    """Yields (rgs, float value, exact-value thunk) for every partition."""
    _check_size(graph.n, settings.oracle_max_vertices if max_n is None else max_n, "exact optimization")
    table = _SubsetTable(graph, w)
    lam_f, lam_x = float(lam), Fraction(lam)
    for rgs in restricted_growth_strings(graph.n):
        masks = _block_masks(rgs)
        value = lam_f * len(masks) + sum(table.quality[m] for m in masks)
        yield rgs, value, (lambda masks=masks: lam_x * len(masks) + sum(table.exact_quality(m) for m in masks))


def _result_value(w: WeightAssignment, value: Fraction) -> Number:
    return value if w.integral else float(value)


def exact_opt(
    graph: Graph, w: WeightAssignment, lam: Number = 0, max_n: Optional[int] = None
) -> Tuple[Clustering, Number]:
    """
    Clustering maximizing Q^lambda_w over all partitions, with its value.

    Values are compared in floating point and re-compared exactly whenever
    two candidates fall within the tie tolerance; among exact ties the first
    partition in enumeration order wins. The value is a Fraction for integer
    weights and a float otherwise.
    """
    tolerance = settings.tie_tolerance
    best_rgs, best_value, best_exact = None, float("-inf"), None
    scanned = 0
    for rgs, value, exact_value in _scan(graph, w, lam, max_n):
        scanned += 1
        window = tolerance * max(1.0, abs(best_value)) if best_rgs is not None else 0.0
        if best_rgs is None or value > best_value + window:
            best_rgs, best_value, best_exact = rgs, value, exact_value
        elif value >= best_value - window:
            if not isinstance(best_exact, Fraction):
                best_exact = best_exact()
            candidate = exact_value()
            if candidate > best_exact:
                best_rgs, best_value, best_exact = rgs, value, candidate
    if not isinstance(best_exact, Fraction):
        best_exact = best_exact()
    logger.debug(f"oracle scanned {scanned} partitions, optimum {best_exact}")
    labels = np.array(best_rgs, dtype=np.int64)
    labels.flags.writeable = False
    return Clustering(labels, max(best_rgs) + 1), _result_value(w, best_exact)


def all_optima(
    graph: Graph, w: WeightAssignment, lam: Number = 0, max_n: Optional[int] = None
) -> Tuple[List[Clustering], Number]:
    """Every clustering attaining the exact optimum of Q^lambda_w, in enumeration order."""
    best: Optional[Fraction] = None
    winners: List[Tuple[int, ...]] = []
    for rgs, _, exact_value in _scan(graph, w, lam, max_n):
        value = exact_value()
        if best is None or value > best:
            best, winners = value, [rgs]
        elif value == best:
            winners.append(rgs)
    clusterings = [Clustering.from_labels(list(rgs)) for rgs in winners]
    return clusterings, _result_value(w, best)


def exact_restricted_opt(
    instance: CvwapInstance, max_vertices: Optional[int] = None
) -> Tuple[PartialClustering, Number]:
    """
    Best restricted partial clustering of a CVWAP instance under Q^0_w.

    A restricted cluster holds exactly one S-vertex and T-weight at most twice
    its S-weight. T-vertices not adjacent to their S-vertex only add weight,
    so only adjacent owners are tried. Ties keep the first optimum found.

    Raises:
        TooLargeError: If |S| + |T| exceeds `max_vertices` (default from settings).
    """
    limit = settings.restricted_oracle_max_vertices if max_vertices is None else max_vertices
    _check_size(instance.n, limit, "restricted oracle")

    exact = instance.integral
    weights = [Fraction(int(x)) for x in instance.weights] if exact else instance.weights.tolist()
    zero = Fraction(0) if exact else 0.0
    neighbours = {int(t): [] for t in instance.t_vertices}
    for s, t in instance.edges.tolist():
        neighbours[t].append(s)
    candidates = [t for t in sorted(neighbours) if neighbours[t]]

    count = [0] * instance.n
    load = [zero] * instance.n
    owners = {}
    best_value, best_owners = zero, {}

    def value_of() -> Number:
        return sum((2 * count[s] / (weights[s] + load[s]) for s in set(owners.values())), zero)

    def search(i: int) -> None:
        nonlocal best_value, best_owners
        if i == len(candidates):
            value = value_of()
            if value > best_value:
                best_value, best_owners = value, dict(owners)
            return
        t = candidates[i]
        for s in neighbours[t]:
            if load[s] + weights[t] <= 2 * weights[s]:
                owners[t] = s
                count[s] += 1
                load[s] += weights[t]
                search(i + 1)
                load[s] -= weights[t]
                count[s] -= 1
                del owners[t]
        search(i + 1)

    search(0)
    blocks = {}
    for t, s in sorted(best_owners.items()):
        blocks.setdefault(s, [s]).append(t)
    partial = PartialClustering.from_blocks(instance.n, [blocks[s] for s in sorted(blocks)])
    return partial, best_value
