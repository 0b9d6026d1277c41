"""
File: conftest.py

Overview:
Fixtures for the clustering tests: small named graphs whose objective values
are known by hand, factories for random connected graphs and CVWAP
instances, an HTTP client for the FastAPI app, and Faker for arbitrary
vertex tokens.
"""

# Standard library imports
from builtins import len

# Third-party imports
import numpy as np
import pytest
from faker import Faker
from httpx import ASGITransport, AsyncClient

# Application-specific imports
from app.dependencies import get_settings
from app.main import app
from app.models.graph_model import build_graph
from tests.factories import connected_graph, random_cvwap

fake = Faker()
settings = get_settings()


# --- Named graphs ---
@pytest.fixture
def triangle():
    return build_graph([(0, 1), (1, 2), (0, 2)], 3)


@pytest.fixture
def path3():
    return build_graph([(0, 1), (1, 2)], 3)


@pytest.fixture
def two_triangles():
    return build_graph([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], 6)


@pytest.fixture
def edgeless():
    return build_graph([], 3)


@pytest.fixture
def star():
    # centre 0 with four leaves
    return build_graph([(0, 1), (0, 2), (0, 3), (0, 4)], 5)


# --- Random factories ---
@pytest.fixture
def graph_factory():
    return connected_graph


@pytest.fixture
def cvwap_factory():
    return random_cvwap


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


# --- Tokens and files ---
@pytest.fixture
def tokens():
    """Six distinct vertex names without whitespace or comment marks."""
    names = []
    while len(names) < 6:
        word = fake.user_name()
        if word not in names and "#" not in word:
            names.append(word)
    return names


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text("# triangle\na b\nb c\na c\n")
    return path


# --- Async HTTP client fixture ---
@pytest.fixture(scope="function")
async def async_client():
    async with AsyncClient(transport=ASGITransport(app=app), base_url="http://testserver") as client:
        yield client
