"""
End-to-end approximation for maximizing Q^lambda_w with lambda in [0, 1].

solve_q0:        bipartize -> greedy CVWAP -> restricted partial clustering -> singleton completion
solve_qlambda:   best of the Q^0 candidate and the all-singletons clustering
solve_best_of:   amplification over independent seeds
greedy_agglomerative, sweep_lambda: the merge-based baseline and lambda tuning on top of it.
"""
from builtins import abs, bool, dict, float, int, len, list, max, min, range, sorted, str, tuple
from dataclasses import dataclass
import heapq
import logging
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from app.models.bipartite_model import Assignment, BipartiteInstance, CvwapInstance
from app.models.graph_model import Clustering, Graph, PartialClustering, WeightAssignment, WeightMode
from app.services.bipartize_service import bipartize
from app.services.cvwap_service import greedy_cvwap
from app.services.objective_service import extend_partial, ncut, objective
from app.utils.errors import InvalidTrialsError, LambdaOutOfRangeError
from app.utils.rng import trial_rng

logger = logging.getLogger(__name__)

# Expected approximation ratios of the single-shot pipeline.
Q0_RATIO = 1.0 / 168.0
QLAMBDA_RATIO = 1.0 / 169.0

MERGE_EPSILON = 1e-12


@dataclass(frozen=True)
class PipelineStages:
    """Intermediate objects of one `solve_q0` run."""
    bipartite: BipartiteInstance
    instance: CvwapInstance
    assignment: Assignment
    partial: PartialClustering
    clustering: Clustering


def run_q0_stages(graph: Graph, w: WeightAssignment, rng: np.random.Generator) -> PipelineStages:
    bipartite = bipartize(graph, w, rng)
    instance = bipartite.to_cvwap()
    assignment = greedy_cvwap(instance)
    partial = assignment.to_partial(instance)
    clustering = extend_partial(graph, partial)
    logger.debug(f"pipeline: {partial.k} CVWAP clusters, {clustering.k} clusters after completion")
    return PipelineStages(bipartite, instance, assignment, partial, clustering)


def solve_q0(graph: Graph, w: WeightAssignment, rng: np.random.Generator) -> Clustering:
    """Constant-factor (in expectation) clustering for Q^0_w."""
    return run_q0_stages(graph, w, rng).clustering


def _check_lambda(lam: float) -> None:
    if not 0.0 <= lam <= 1.0:
        logger.error(f"lambda {lam} outside [0, 1] for the approximation pipeline")
        raise LambdaOutOfRangeError(f"the pipeline needs lambda in [0, 1], got {lam}")


def solve_qlambda(graph: Graph, w: WeightAssignment, lam: float, rng: np.random.Generator) -> Clustering:
    """
    Extends the Q^0 algorithm to lambda in [0, 1].

    Returns whichever of the Q^0 candidate and the all-singletons clustering
    scores higher under Q^lambda_w; ties go to the Q^0 candidate.
    """
    _check_lambda(lam)
    candidate = solve_q0(graph, w, rng)
    if lam == 0:
        return candidate
    singletons = Clustering.singletons(graph.n)
    if objective(graph, w, singletons, lam) > objective(graph, w, candidate, lam):
        return singletons
    return candidate


def solve_best_of(graph: Graph, w: WeightAssignment, lam: float, trials: int, seed: int) -> Clustering:
    """
    Runs `solve_qlambda` on `trials` independent seed streams and keeps the best.

    Trial i draws from `trial_rng(seed, i)`; equal objectives keep the lowest index.

    Raises:
        InvalidTrialsError: If `trials` < 1.
    """
    if trials < 1:
        raise InvalidTrialsError(f"trials must be at least 1, got {trials}")
    _check_lambda(lam)
    best, best_value, best_index = None, float("-inf"), -1
    for i in range(trials):
        clustering = solve_qlambda(graph, w, lam, trial_rng(seed, i))
        value = objective(graph, w, clustering, lam)
        if value > best_value:
            best, best_value, best_index = clustering, value, i
    logger.info(f"best of {trials} trials: Q^{lam}={best_value:.6g} from trial {best_index}")
    return best


def greedy_agglomerative(graph: Graph, w: WeightAssignment, lam: float) -> Clustering:
    """
    Merge-based baseline for Q^lambda_w.

    Starts from singletons and repeatedly merges the adjacent pair of
    clusters whose union increases Q^lambda_w the most, until no merge
    increases it. A merged cluster keeps the smaller id; among pairs within
    MERGE_EPSILON of the best gain the lexicographically smallest (id, id)
    pair wins.

    Pair gains sit in a lazy max-heap keyed by cluster versions, so a merge
    only re-scores the pairs touching the merged cluster.
    """
    weight: Dict[int, float] = {v: float(x) for v, x in enumerate(w.weights.tolist())}
    inside: Dict[int, int] = {v: 0 for v in range(graph.n)}
    members: Dict[int, List[int]] = {v: [v] for v in range(graph.n)}
    between: Dict[int, Dict[int, int]] = {v: {} for v in range(graph.n)}
    version: Dict[int, int] = {v: 0 for v in range(graph.n)}
    for u, v in graph.edges.tolist():
        between[u][v] = between[u].get(v, 0) + 1
        between[v][u] = between[v].get(u, 0) + 1

    def gain(a: int, b: int) -> float:
        merged = 2.0 * (inside[a] + inside[b] + between[a][b]) / (weight[a] + weight[b])
        return merged - 2.0 * inside[a] / weight[a] - 2.0 * inside[b] / weight[b] - lam

    heap: List[Tuple[float, int, int, int, int]] = []

    def push(a: int, b: int) -> None:
        a, b = min(a, b), max(a, b)
        delta = gain(a, b)
        if delta > MERGE_EPSILON:
            heapq.heappush(heap, (-delta, a, b, version[a], version[b]))

    def live(entry: Tuple[float, int, int, int, int]) -> bool:
        _, a, b, va, vb = entry
        return version.get(a) == va and version.get(b) == vb

    for a in range(graph.n):
        for b in between[a]:
            if a < b:
                push(a, b)

    merges = 0
    while heap:
        top = heapq.heappop(heap)
        if not live(top):
            continue
        # near-ties with the best gain go to the smallest pair
        best_gain, candidates = -top[0], [top]
        while heap and -heap[0][0] >= best_gain - MERGE_EPSILON:
            entry = heapq.heappop(heap)
            if live(entry):
                candidates.append(entry)
        candidates.sort(key=lambda e: (e[1], e[2]))
        for entry in candidates[1:]:
            heapq.heappush(heap, entry)
        _, a, b, _, _ = candidates[0]

        inside[a] += inside.pop(b) + between[a].pop(b)
        weight[a] += weight.pop(b)
        members[a].extend(members.pop(b))
        del version[b]
        version[a] += 1
        for x, shared in between.pop(b).items():
            if x == a:
                continue
            del between[x][b]
            between[a][x] = between[a].get(x, 0) + shared
            between[x][a] = between[x].get(a, 0) + shared
        for x in between[a]:
            push(a, x)
        merges += 1

    logger.debug(f"agglomerative baseline made {merges} merges at lambda={lam}")
    return Clustering.from_blocks(graph.n, [sorted(members[c]) for c in sorted(members)])


def nmod_guarantee(graph: Graph, witness: Clustering, alpha: float) -> Optional[float]:
    """
    Fraction of the optimal normalized modularity an alpha-approximate Q^0 clustering reaches.

    NMod is (1/m)(Q^0_deg / 2 - 1), so the margin is measured on half the
    normalized associations: with eps = alpha (k - NCut(witness)) / 2 - 1 for
    a witness clustering into k clusters, any alpha-approximate clustering
    for Q^0_deg has NMod >= eps alpha / (1 + eps) times the optimum. Returns
    None when the witness gives eps <= 0, in which case nothing is guaranteed.
    """
    eps = alpha * (witness.k - ncut(graph, witness)) / 2.0 - 1.0
    if eps <= 0:
        return None
    return eps * alpha / (1.0 + eps)


@dataclass(frozen=True)
class SweepPoint:
    lam: float
    k: int
    q_lambda: float
    q0: float
    ncut: Optional[float]
    clustering: Clustering


SWEEP_ALGORITHMS = ("agglomerative", "pipeline")


def sweep_lambda(
    graph: Graph,
    w: WeightAssignment,
    lambdas: Iterable[float],
    algo: str = "agglomerative",
    seed: int = 0,
    trials: int = 1,
) -> List[SweepPoint]:
    """
    Solves for each lambda and records the cluster count, Q^lambda, Q^0 and NCut.

    Larger lambda rewards more clusters, so sweeping it trades cluster count
    against NCut. NCut is only reported under degree weights.
    """
    if algo not in SWEEP_ALGORITHMS:
        raise ValueError(f"sweep supports {SWEEP_ALGORITHMS}, got {algo!r}")
    points = []
    for lam in lambdas:
        lam = float(lam)
        if algo == "pipeline":
            clustering = solve_best_of(graph, w, lam, trials, seed)
        else:
            clustering = greedy_agglomerative(graph, w, lam)
        points.append(SweepPoint(
            lam=lam,
            k=clustering.k,
            q_lambda=objective(graph, w, clustering, lam),
            q0=objective(graph, w, clustering, 0),
            ncut=ncut(graph, clustering) if w.mode == WeightMode.DEGREE else None,
            clustering=clustering,
        ))
    return points


def closest_to_target(points: List[SweepPoint], target_k: int) -> SweepPoint:
    """Point with cluster count closest to `target_k`; ties by smaller NCut (when known), then smaller lambda."""
    if not points:
        raise ValueError("at least one lambda is needed")
    return min(points, key=lambda p: (abs(p.k - target_k), p.ncut if p.ncut is not None else 0.0, p.lam))


def tune_lambda_for_ncut(
    graph: Graph, target_k: int, lambdas: Iterable[float], algo: str = "agglomerative", seed: int = 0
) -> SweepPoint:
    """Sweeps lambda under degree weights and returns `closest_to_target`."""
    return closest_to_target(
        sweep_lambda(graph, WeightAssignment.degree(graph), lambdas, algo=algo, seed=seed), target_k
    )
