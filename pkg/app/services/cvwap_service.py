"""
Capacitated vertex-weighted assignment (CVWAP).

A solution gives every S-vertex s a cluster {s} plus some adjacent T-vertices
of total weight at most 2 w(s), each T-vertex used at most once, and scores
v = sum over s of 2 |T_s| / (3 w(s)).
"""
from builtins import bool, float, int, len, list, max, property, range, sum, tuple
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from app.dependencies import get_settings
from app.models.bipartite_model import Assignment, CvwapInstance
from app.utils.errors import InstanceTooLargeError
from app.utils.radix_sort import stable_key_order

settings = get_settings()
logger = logging.getLogger(__name__)

Number = Union[float, Fraction]


def _gains(instance: CvwapInstance, exact: bool) -> List[Number]:
    """Value 2 / (3 w(s)) that one owned T-vertex adds to the cluster of s."""
    if exact:
        return [Fraction(2, 3) / Fraction(float(x)) for x in instance.weights]
    return (2.0 / (3.0 * instance.weights)).tolist()


def cvwap_value(instance: CvwapInstance, assignment: Assignment, exact: bool = False) -> Number:
    """v(C): S-vertices without owned T-vertices contribute 0."""
    gains = _gains(instance, exact)
    total = Fraction(0) if exact else 0.0
    for s in assignment.owner[assignment.owner >= 0].tolist():
        total += gains[s]
    return total


def greedy_cvwap(
    instance: CvwapInstance, poly_degree: Optional[int] = None, digit_bits: Optional[int] = None
) -> Assignment:
    """
    Greedy 1/2-approximation for CVWAP.

    Edges are scanned in non-decreasing order of w(s) + w(t) (ties by input
    index); (s, t) is accepted when t is still free and the cluster of s has
    room for w(t) under the 2 w(s) capacity.
    """
    weights = instance.weights
    es = instance.edges[:, 0]
    et = instance.edges[:, 1]
    order = stable_key_order(
        weights[es] + weights[et],
        instance.n,
        degree=settings.radix_poly_degree if poly_degree is None else poly_degree,
        digit_bits=settings.radix_digit_bits if digit_bits is None else digit_bits,
    )

    wt = weights.tolist()
    capacity = (2.0 * weights).tolist()
    load = [0.0] * instance.n
    owner = [-1] * instance.n
    s_list, t_list = es.tolist(), et.tolist()
    accepted: List[int] = []
    for i in order.tolist():
        s, t = s_list[i], t_list[i]
        if owner[t] == -1 and load[s] + wt[t] <= capacity[s]:
            owner[t] = s
            load[s] += wt[t]
            accepted.append(i)

    owner_array = np.array(owner, dtype=np.int64)
    owner_array.flags.writeable = False
    logger.debug(f"greedy CVWAP accepted {len(accepted)} of {len(s_list)} edges")
    return Assignment(owner=owner_array, accepted=tuple(accepted))


def exact_cvwap(instance: CvwapInstance, max_t: Optional[int] = None) -> Assignment:
    """
    Exhaustive CVWAP solver used as ground truth in tests.

    Every T-vertex is tried with each adjacent S-vertex that still has
    capacity, then left free; branches that cannot beat the incumbent are cut.
    Ties keep the first optimum found.

    Raises:
        InstanceTooLargeError: If |T| exceeds `max_t` (default from settings).
    """
    limit = settings.exact_cvwap_max_t if max_t is None else max_t
    t_vertices = instance.t_vertices.tolist()
    if len(t_vertices) > limit:
        logger.error(f"exact CVWAP refused: |T|={len(t_vertices)} > {limit}")
        raise InstanceTooLargeError(f"exact CVWAP supports |T| <= {limit}, got {len(t_vertices)}")

    exact = instance.integral
    gains = _gains(instance, exact)
    weights = [Fraction(int(x)) for x in instance.weights] if exact else instance.weights.tolist()
    neighbours: Dict[int, List[int]] = {t: [] for t in t_vertices}
    for s, t in instance.edges.tolist():
        neighbours[t].append(s)
    candidates = [t for t in t_vertices if neighbours[t]]

    # optimistic value still reachable from position i onwards
    zero = Fraction(0) if exact else 0.0
    reachable = [zero] * (len(candidates) + 1)
    for i in range(len(candidates) - 1, -1, -1):
        reachable[i] = reachable[i + 1] + max(gains[s] for s in neighbours[candidates[i]])

    load = [zero] * instance.n
    owners: Dict[int, int] = {}
    best_value = zero
    best_owners: Dict[int, int] = {}

    def search(i: int, value: Number) -> None:
        nonlocal best_value, best_owners
        if value + reachable[i] <= best_value:
            return
        if i == len(candidates):
            best_value, best_owners = value, dict(owners)
            return
        t = candidates[i]
        for s in neighbours[t]:
            if load[s] + weights[t] <= 2 * weights[s]:
                load[s] += weights[t]
                owners[t] = s
                search(i + 1, value + gains[s])
                del owners[t]
                load[s] -= weights[t]
        search(i + 1, value)

    search(0, zero)
    logger.debug(f"exact CVWAP optimum {best_value} over {len(candidates)} candidate T-vertices")
    return Assignment.from_owners(instance, best_owners)


@dataclass(frozen=True)
class ExchangeAudit:
    """
    Replay of the exchange argument behind the greedy's 1/2 guarantee.

    Starting from a reference solution O_0, each greedy acceptance (s, t)
    drops the O-edge at t and the lightest O-edge at s. `sizes[i]` is |O_i|,
    `valid[i]` whether M_i + O_i is feasible and `steps[i]` whether the
    greedy gain covers half of the value removed from O.
    """
    sizes: Tuple[int, ...]
    valid: Tuple[bool, ...]
    steps: Tuple[bool, ...]

    @property
    def holds(self) -> bool:
        shrink = all(b >= a - 2 for a, b in zip(self.sizes, self.sizes[1:]))
        return shrink and all(self.valid) and all(self.steps) and self.sizes[-1] == 0


def _feasible(instance: CvwapInstance, edges: Dict[int, int], extra: Dict[int, int]) -> bool:
    for t, s in extra.items():
        if t in edges and edges[t] != s:
            return False
    merged = {**edges, **extra}
    load = [Fraction(0)] * instance.n
    for t, s in merged.items():
        load[s] += Fraction(float(instance.weights[t]))
    return all(load[s] <= 2 * Fraction(float(instance.weights[s])) for s in set(merged.values()))


def exchange_audit(instance: CvwapInstance, greedy: Assignment, reference: Assignment) -> ExchangeAudit:
    """Replays the greedy acceptance order of `greedy` against the solution `reference`."""
    weights = instance.weights.tolist()
    gains = _gains(instance, exact=True)
    remaining: Dict[int, int] = {int(t): int(reference.owner[t]) for t in np.flatnonzero(reference.owner >= 0)}
    taken: Dict[int, int] = {}
    sizes, valid, steps = [len(remaining)], [_feasible(instance, taken, remaining)], []
    for i in greedy.accepted:
        s, t = (int(x) for x in instance.edges[i])
        lost = Fraction(0)
        if t in remaining:
            lost += gains[remaining.pop(t)]
        at_s = [t2 for t2, s2 in remaining.items() if s2 == s]
        if at_s:
            # lowest edge weight 1/(w(s)+w(t')) means the heaviest t'
            lightest = max(at_s, key=lambda t2: (weights[t2], -t2))
            lost += gains[remaining.pop(lightest)]
        taken[t] = s
        sizes.append(len(remaining))
        valid.append(_feasible(instance, taken, remaining))
        steps.append(gains[s] >= lost / 2)
    return ExchangeAudit(sizes=tuple(sizes), valid=tuple(valid), steps=tuple(steps))
