from builtins import isinstance, str
import pytest
from pydantic import ValidationError
from app.schemas.report_schemas import (
    Bounds, BoundsResponse, ClusteringReport, ClusteringRequest, ErrorResponse, Metrics, SweepEntry,
)


@pytest.fixture
def report_data():
    return {
        "clusters": [["a", "b", "c"]],
        "k": 1,
        "metrics": {"q_lambda": 1.0, "q0": 1.0, "density_sum": 1.0},
        "seed": 0,
        "algo": "oracle",
        "runtime_ms": 0.5,
    }


# Tests for ClusteringReport
def test_output_drops_unset_bounds_and_warning(report_data):
    body = ClusteringReport(**report_data).to_output()
    assert "bounds" not in body
    assert "warning" not in body
    assert body["metrics"]["ncut"] is None


def test_output_keeps_requested_bounds(report_data):
    report_data["bounds"] = {"M": 1.0, "lower": -0.14, "upper": 2.0}
    report_data["warning"] = "weights are not degrees"
    body = ClusteringReport(**report_data).to_output()
    assert body["bounds"] == {"M": 1.0, "lower": -0.14, "upper": 2.0}
    assert body["warning"] == "weights are not degrees"


def test_metrics_need_objective_values():
    with pytest.raises(ValidationError):
        Metrics(q0=1.0, density_sum=0.5)


# Tests for ClusteringRequest
def test_request_reads_lambda_alias():
    request = ClusteringRequest(**{"edges": [["a", "b"]], "lambda": 0.5})
    assert request.lam == 0.5
    assert request.algo == "pipeline"
    assert request.weights == "deg"


def test_request_accepts_field_name():
    assert ClusteringRequest(edges=[["a", "b"]], lam=0.25).lam == 0.25


def test_request_accepts_weight_mapping():
    request = ClusteringRequest(edges=[["a", "b"]], weights={"a": 1, "b": 2.5})
    assert request.weights == {"a": 1.0, "b": 2.5}


@pytest.mark.parametrize("field, value", [("algo", "louvain"), ("weights", "volume"), ("edges", [["a", "b", "c"]])])
def test_request_rejects_bad_fields(field, value):
    data = {"edges": [["a", "b"]], field: value}
    with pytest.raises(ValidationError):
        ClusteringRequest(**data)


# Tests for the other payloads
def test_sweep_entry_dumps_lambda_key():
    entry = SweepEntry(lam=0.5, k=2, q_lambda=3.0, q0=2.0)
    assert entry.model_dump(by_alias=True)["lambda"] == 0.5
    assert entry.ncut is None


def test_bounds_response_is_bounds():
    response = BoundsResponse(M=1.0, lower=-0.1, upper=2.0, forest_edges=[("a", "b")])
    assert isinstance(response, Bounds)
    assert response.forest_edges == [("a", "b")]


def test_error_response_line_optional():
    error = ErrorResponse(error="ParseError", message="line 3: bad")
    assert error.line is None
    assert str(error.error) == "ParseError"
