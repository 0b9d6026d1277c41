"""
HTTP routes for clustering a graph sent as JSON and for its spanning-forest bound.

The request carries the edge list directly (token pairs); the response is the
same report the `run` command prints. Rejected input comes back as 400 with
the error object {"error", "message", "line"?}; schema violations are 422.
"""
from builtins import dict, isinstance
import logging

from fastapi import APIRouter
from starlette.responses import JSONResponse

from app.schemas.report_schemas import (
    BoundsRequest, BoundsResponse, ClusteringReport, ClusteringRequest, ErrorResponse,
)
from app.services.clustering_service import ClusteringService
from app.utils.edge_list import graph_from_pairs, parse_weights, weights_from_mapping

router = APIRouter()
logger = logging.getLogger(__name__)


@router.post(
    "/clusterings",
    response_model=ClusteringReport,
    responses={400: {"model": ErrorResponse}},
    name="create_clustering",
    tags=["Clustering"],
)
async def create_clustering(request: ClusteringRequest):
    """
    Clusters the posted graph.

    `weights` is "deg", "unit", or a token -> weight mapping covering every vertex.
    `lambda` must lie in [0, 1] for the pipeline algorithm.
    """
    parsed = graph_from_pairs(request.edges, request.vertices)
    if isinstance(request.weights, dict):
        w = weights_from_mapping(request.weights, parsed)
    else:
        w = parse_weights(request.weights, parsed)
    report = ClusteringService.report(
        parsed, w, request.algo,
        lam=request.lam, seed=request.seed, trials=request.trials, with_bounds=request.bounds,
    )
    logger.debug(f"POST /clusterings answered with k={report.k}")
    # omit bounds and warning when unset, as the CLI does
    return JSONResponse(content=report.to_output())


@router.post(
    "/bounds",
    response_model=BoundsResponse,
    responses={400: {"model": ErrorResponse}},
    name="compute_bounds",
    tags=["Clustering"],
)
async def compute_bounds(request: BoundsRequest):
    """Spanning-forest certificate for the optimal Q^0 under degree weights."""
    return ClusteringService.bounds(graph_from_pairs(request.edges, request.vertices))
