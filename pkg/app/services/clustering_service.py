from builtins import abs, bool, classmethod, float, int, list, round, str
import logging
import time
from typing import Iterable, List, Optional, Tuple

from app.models.graph_model import Clustering, Graph, WeightAssignment, WeightMode
from app.schemas.report_schemas import (
    Bounds, BoundsResponse, ClusteringReport, Metrics, SweepEntry, SweepReport,
)
from app.services.bounds_service import mst_bound, mst_greedy_clustering
from app.services.objective_service import (
    density_sum, modularity, nassoc, ncut, normalized_modularity, objective,
)
from app.services.oracle_service import exact_opt
from app.services.pipeline_service import (
    SweepPoint, closest_to_target, greedy_agglomerative, solve_best_of, sweep_lambda,
)
from app.utils.edge_list import ParsedGraph
from app.utils.errors import InvalidTrialsError, ParseError
from app.utils.rng import validate_seed

logger = logging.getLogger(__name__)

ALGORITHMS = ("pipeline", "agglomerative", "mst-greedy", "oracle")

DEGREE_ONLY_WARNING = "weights are not degrees; ncut, modularity and normalized_modularity suppressed"
ISOLATED_WARNING = "graph has isolated vertices; nassoc, ncut, modularity and normalized_modularity suppressed"


class ClusteringService:
    @classmethod
    def solve(
        cls, graph: Graph, w: WeightAssignment, algo: str, lam: float, seed: int, trials: int
    ) -> Clustering:
        validate_seed(seed)
        if trials < 1:
            raise InvalidTrialsError(f"trials must be at least 1, got {trials}")
        if algo == "pipeline":
            return solve_best_of(graph, w, lam, trials, seed)
        if algo == "agglomerative":
            return greedy_agglomerative(graph, w, lam)
        if algo == "mst-greedy":
            return mst_greedy_clustering(graph)
        if algo == "oracle":
            return exact_opt(graph, w, lam)[0]
        logger.error(f"Unknown algorithm {algo!r}.")
        raise ParseError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")

    @classmethod
    def metrics(
        cls, graph: Graph, w: WeightAssignment, clustering: Clustering, lam: float
    ) -> Tuple[Metrics, Optional[str]]:
        """All report metrics, with the degree-based ones nulled where they are undefined."""
        has_isolated = bool(graph.isolated_vertices().size)
        degree_based = w.mode == WeightMode.DEGREE and not has_isolated
        warning = None
        if has_isolated:
            warning = ISOLATED_WARNING
        elif not degree_based:
            warning = DEGREE_ONLY_WARNING
        if warning:
            logger.warning(warning)
        metrics = Metrics(
            q_lambda=objective(graph, w, clustering, lam),
            q0=objective(graph, w, clustering, 0),
            nassoc=None if has_isolated else nassoc(graph, clustering),
            ncut=ncut(graph, clustering) if degree_based else None,
            modularity=modularity(graph, clustering) if degree_based else None,
            normalized_modularity=normalized_modularity(graph, clustering) if degree_based else None,
            density_sum=density_sum(graph, clustering),
        )
        return metrics, warning

    @classmethod
    def bounds(cls, parsed: ParsedGraph) -> BoundsResponse:
        certificate = mst_bound(parsed.graph)
        return BoundsResponse(
            M=certificate.M,
            lower=certificate.lower,
            upper=certificate.upper,
            forest_edges=[(parsed.tokens[u], parsed.tokens[v]) for u, v in certificate.forest_edges],
        )

    @classmethod
    def report(
        cls,
        parsed: ParsedGraph,
        w: WeightAssignment,
        algo: str,
        lam: float = 0.0,
        seed: int = 0,
        trials: int = 1,
        with_bounds: bool = False,
    ) -> ClusteringReport:
        start = time.perf_counter()
        graph = parsed.graph
        clustering = cls.solve(graph, w, algo, lam, seed, trials).canonical()
        metrics, warning = cls.metrics(graph, w, clustering, lam)
        bounds = None
        if with_bounds:
            certificate = cls.bounds(parsed)
            bounds = Bounds(M=certificate.M, lower=certificate.lower, upper=certificate.upper)
        runtime_ms = round((time.perf_counter() - start) * 1000.0, 3)
        logger.info(f"{algo}: k={clustering.k}, Q^{lam}={metrics.q_lambda:.6g} in {runtime_ms} ms")
        return ClusteringReport(
            clusters=[[parsed.tokens[v] for v in block] for block in clustering.blocks()],
            k=clustering.k,
            metrics=metrics,
            bounds=bounds,
            seed=seed,
            algo=algo,
            runtime_ms=runtime_ms,
            warning=warning,
        )

    @classmethod
    def _entry(cls, point: SweepPoint) -> SweepEntry:
        return SweepEntry(lam=point.lam, k=point.k, q_lambda=point.q_lambda, q0=point.q0, ncut=point.ncut)

    @classmethod
    def sweep(
        cls,
        parsed: ParsedGraph,
        w: WeightAssignment,
        lambdas: Iterable[float],
        algo: str = "agglomerative",
        seed: int = 0,
        trials: int = 1,
        target_k: Optional[int] = None,
    ) -> SweepReport:
        """
        Sweeps lambda and, given `target_k`, marks the point whose cluster count is
        closest to it (ties by smaller NCut, then smaller lambda).
        """
        validate_seed(seed)
        points = sweep_lambda(parsed.graph, w, list(lambdas), algo=algo, seed=seed, trials=trials)
        best = None
        if target_k is not None and points:
            best = cls._entry(closest_to_target(points, target_k))
        return SweepReport(algo=algo, seed=seed, points=[cls._entry(p) for p in points], best=best)
