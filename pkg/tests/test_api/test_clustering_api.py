from builtins import len
import pytest

TRIANGLE = [["a", "b"], ["b", "c"], ["a", "c"]]


@pytest.mark.asyncio
async def test_cluster_triangle_with_oracle(async_client):
    response = await async_client.post("/clusterings", json={"edges": TRIANGLE, "algo": "oracle"})
    assert response.status_code == 200
    body = response.json()
    assert body["clusters"] == [["a", "b", "c"]]
    assert body["metrics"]["q0"] == pytest.approx(1.0)
    assert "bounds" not in body
    assert "warning" not in body


@pytest.mark.asyncio
async def test_lambda_alias_and_bounds(async_client):
    payload = {"edges": TRIANGLE, "lambda": 1.0, "seed": 3, "trials": 2, "bounds": True}
    response = await async_client.post("/clusterings", json=payload)
    assert response.status_code == 200
    body = response.json()
    assert body["metrics"]["q_lambda"] >= 3.0
    assert body["bounds"]["M"] == pytest.approx(1.0)
    assert body["seed"] == 3


@pytest.mark.asyncio
async def test_weight_mapping_suppresses_degree_metrics(async_client):
    payload = {"edges": TRIANGLE, "weights": {"a": 1, "b": 1, "c": 1}, "algo": "agglomerative"}
    response = await async_client.post("/clusterings", json=payload)
    assert response.status_code == 200
    body = response.json()
    assert body["metrics"]["ncut"] is None
    assert body["warning"].startswith("weights are not degrees")


@pytest.mark.asyncio
async def test_isolated_vertex_with_unit_weights(async_client):
    payload = {"edges": [[1, 2]], "vertices": [3], "weights": "unit", "algo": "oracle"}
    response = await async_client.post("/clusterings", json=payload)
    assert response.status_code == 200
    body = response.json()
    assert body["clusters"] == [["1", "2"], ["3"]]
    assert body["metrics"]["nassoc"] is None


@pytest.mark.asyncio
async def test_lambda_out_of_range_is_400(async_client):
    response = await async_client.post("/clusterings", json={"edges": TRIANGLE, "lambda": 2})
    assert response.status_code == 400
    assert response.json()["error"] == "LambdaOutOfRange"


@pytest.mark.asyncio
async def test_duplicate_edge_reports_position(async_client):
    response = await async_client.post("/clusterings", json={"edges": [["a", "b"], ["b", "a"]]})
    assert response.status_code == 400
    assert response.json()["error"] == "DuplicateEdge"
    assert response.json()["line"] == 2


@pytest.mark.asyncio
async def test_missing_weight_is_400(async_client):
    payload = {"edges": TRIANGLE, "weights": {"a": 1, "b": 1}}
    response = await async_client.post("/clusterings", json=payload)
    assert response.status_code == 400
    assert response.json()["error"] == "MissingVertexWeight"


@pytest.mark.asyncio
async def test_schema_violation_is_422(async_client):
    response = await async_client.post("/clusterings", json={"edges": TRIANGLE, "algo": "louvain"})
    assert response.status_code == 422
    response = await async_client.post("/clusterings", json={"edges": "a b"})
    assert response.status_code == 422


@pytest.mark.asyncio
async def test_bounds_for_triangle(async_client):
    response = await async_client.post("/bounds", json={"edges": TRIANGLE})
    assert response.status_code == 200
    body = response.json()
    assert body["M"] == pytest.approx(1.0)
    assert body["upper"] == pytest.approx(2.0)
    assert body["forest_edges"] == [["a", "b"], ["b", "c"]]


@pytest.mark.asyncio
async def test_bounds_without_vertices_is_400(async_client):
    response = await async_client.post("/bounds", json={"edges": []})
    assert response.status_code == 400
    assert response.json()["error"] == "EmptyGraph"


@pytest.mark.asyncio
async def test_bounds_on_edgeless_vertices(async_client):
    response = await async_client.post("/bounds", json={"edges": [], "vertices": ["x", "y"]})
    assert response.status_code == 200
    assert response.json()["M"] == 0
    assert len(response.json()["forest_edges"]) == 0
