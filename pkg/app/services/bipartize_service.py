from builtins import bool, float, int, property, range
from dataclasses import dataclass
import logging
import math

import numpy as np

from app.models.bipartite_model import BipartiteInstance
from app.models.graph_model import Graph, WeightAssignment
from app.utils.errors import InvalidTrialsError

logger = logging.getLogger(__name__)

# Each edge survives with probability at least 1/4.
KEEP_PROBABILITY_FLOOR = 0.25


def bipartize(graph: Graph, w: WeightAssignment, rng: np.random.Generator) -> BipartiteInstance:
    """
    Random reduction of a weighted graph to a bipartite instance.

    Draws one fair coin per vertex in vertex-id order (the vertex colour), then
    one more coin choosing which colour becomes S. An edge is kept iff its
    endpoints have different colours and the S endpoint is at least as heavy
    as the T endpoint; ties are kept.
    """
    colours = rng.integers(0, 2, size=graph.n)
    s_colour = rng.integers(0, 2)
    in_s = colours == s_colour

    u, v = graph.edges[:, 0], graph.edges[:, 1]
    u_in_s = in_s[u]
    s_end = np.where(u_in_s, u, v)
    t_end = np.where(u_in_s, v, u)
    keep = (u_in_s != in_s[v]) & (w.weights[s_end] >= w.weights[t_end])

    kept_index = np.flatnonzero(keep)
    kept_edges = np.stack([s_end[keep], t_end[keep]], axis=1).astype(np.int64)
    for array in (in_s, kept_index, kept_edges):
        array.flags.writeable = False
    logger.debug(f"bipartize kept {kept_index.size} of {graph.m} edges, |S|={int(in_s.sum())}")
    return BipartiteInstance(in_s=in_s, kept_edges=kept_edges, kept_index=kept_index, weights=w, origin=graph)


@dataclass(frozen=True, eq=False)
class KeepProbabilityAudit:
    """Empirical per-edge keep frequencies over repeated bipartizations."""
    frequencies: np.ndarray
    trials: int

    @property
    def margin(self) -> float:
        """Three standard deviations of a frequency whose true mean is 1/4."""
        p = KEEP_PROBABILITY_FLOOR
        return 3.0 * math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def passes(self) -> bool:
        return bool(np.all(self.frequencies >= KEEP_PROBABILITY_FLOOR - self.margin))


def keep_probability_audit(
    graph: Graph, w: WeightAssignment, trials: int, rng: np.random.Generator
) -> KeepProbabilityAudit:
    """
    Runs `bipartize` `trials` times and reports how often each edge survived.

    Raises:
        InvalidTrialsError: If `trials` < 1.
    """
    if trials < 1:
        raise InvalidTrialsError(f"trials must be at least 1, got {trials}")
    counts = np.zeros(graph.m, dtype=np.int64)
    for _ in range(trials):
        counts[bipartize(graph, w, rng).kept_index] += 1
    frequencies = counts / float(trials)
    frequencies.flags.writeable = False
    logger.info(f"keep audit over {trials} trials: min frequency {frequencies.min() if graph.m else 'n/a'}")
    return KeepProbabilityAudit(frequencies=frequencies, trials=int(trials))
