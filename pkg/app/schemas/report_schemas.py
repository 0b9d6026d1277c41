# app/schemas/report_schemas.py

from builtins import bool, dict, float, int, str
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

Algorithm = Literal["pipeline", "agglomerative", "mst-greedy", "oracle"]
Token = Union[str, int]


class Metrics(BaseModel):
    q_lambda: float = Field(..., description="Q^lambda_w of the clustering.", example=1.0)
    q0: float = Field(..., description="Q^0_w of the clustering.", example=1.0)
    nassoc: Optional[float] = Field(None, description="Normalized associations; null if a vertex is isolated.", example=1.0)
    ncut: Optional[float] = Field(None, description="Normalized cut; degree weights only.", example=0.0)
    modularity: Optional[float] = Field(None, description="Modularity; degree weights only.", example=-0.333)
    normalized_modularity: Optional[float] = Field(None, description="Normalized modularity; degree weights only.", example=-0.167)
    density_sum: float = Field(..., description="Sum of |E(C)| / |C| over clusters.", example=1.0)


class Bounds(BaseModel):
    M: float = Field(..., description="Weight of the maximum spanning forest.", example=1.0)
    lower: float = Field(..., example=-0.141)
    upper: float = Field(..., example=2.0)


class ClusteringReport(BaseModel):
    clusters: List[List[str]] = Field(..., example=[["a", "b", "c"]])
    k: int = Field(..., example=1)
    metrics: Metrics
    bounds: Optional[Bounds] = None
    seed: int = Field(..., example=0)
    algo: str = Field(..., example="pipeline")
    runtime_ms: float = Field(..., example=0.42)
    warning: Optional[str] = Field(None, example="weights are not degrees; ncut, modularity and normalized_modularity suppressed")

    def to_output(self) -> dict:
        """The wire form: `bounds` only when requested, `warning` only when set."""
        body = self.model_dump()
        if self.bounds is None:
            del body["bounds"]
        if self.warning is None:
            del body["warning"]
        return body


class ErrorResponse(BaseModel):
    error: str = Field(..., example="LambdaOutOfRange")
    message: str = Field(..., example="the pipeline needs lambda in [0, 1], got 2.0")
    line: Optional[int] = Field(None, example=None)


class ClusteringRequest(BaseModel):
    edges: List[Tuple[Token, Token]] = Field(..., example=[["a", "b"], ["b", "c"], ["a", "c"]])
    vertices: List[Token] = Field([], description="Extra vertices without edges.", example=[])
    weights: Union[Literal["deg", "unit"], Dict[str, float]] = Field("deg", example="deg")
    lam: float = Field(0.0, alias="lambda", example=0.0)
    algo: Algorithm = Field("pipeline", example="pipeline")
    seed: int = Field(0, example=0)
    trials: int = Field(1, example=1)
    bounds: bool = Field(False, example=False)

    class Config:
        populate_by_name = True


class BoundsRequest(BaseModel):
    edges: List[Tuple[Token, Token]] = Field(..., example=[["a", "b"], ["b", "c"], ["a", "c"]])
    vertices: List[Token] = Field([], example=[])


class BoundsResponse(Bounds):
    forest_edges: List[Tuple[str, str]] = Field(..., example=[["a", "b"], ["b", "c"]])


class SweepEntry(BaseModel):
    lam: float = Field(..., alias="lambda")
    k: int
    q_lambda: float
    q0: float
    ncut: Optional[float] = None

    class Config:
        populate_by_name = True


class SweepReport(BaseModel):
    algo: str
    seed: int
    points: List[SweepEntry]
    best: Optional[SweepEntry] = None
