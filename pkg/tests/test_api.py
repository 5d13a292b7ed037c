"""
Tests for FastAPI integration.
"""

import pytest
from httpx import ASGITransport, AsyncClient

from viscat import Diagram, ModelHandle
from viscat.api import create_app, create_router


@pytest.fixture
def app(corpus_handle: ModelHandle):
    """Create a FastAPI app over the fixture corpus."""
    return create_app(corpus_handle)


@pytest.fixture
async def client(app):
    """Create an async test client."""
    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://test") as ac:
        yield ac


class TestListModelsEndpoint:
    """Tests for GET /models endpoint."""

    @pytest.mark.asyncio
    async def test_returns_model_kinds(self, client: AsyncClient):
        response = await client.get("/models")
        assert response.status_code == 200
        models = response.json()["models"]
        assert models["golden"] == "process"
        assert models["bare_diagram"] == "diagram"


class TestDescribeModelEndpoint:
    """Tests for GET /models/{name} endpoint."""

    @pytest.mark.asyncio
    async def test_returns_summary(self, client: AsyncClient):
        response = await client.get("/models/golden")
        assert response.status_code == 200
        data = response.json()
        assert data["kind"] == "process"
        assert data["intension"] == "full"
        assert data["morphisms"]["read"] == {"dom": "Representation", "cod": "Evocation"}

    @pytest.mark.asyncio
    async def test_unknown_model_is_404(self, client: AsyncClient):
        response = await client.get("/models/nope")
        assert response.status_code == 404


class TestValidateEndpoint:
    """Tests for POST /models/{name}/validate endpoint."""

    @pytest.mark.asyncio
    async def test_passing_model(self, client: AsyncClient):
        response = await client.post("/models/golden/validate")
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "pass"
        assert data["origin"] == "golden"

    @pytest.mark.asyncio
    async def test_failing_model_reports_witness(self, client: AsyncClient):
        response = await client.post("/models/corrupted_understanding/validate", json={"max_len": 3})
        assert response.status_code == 200
        failure = response.json()["commutativity"]["failures"][0]
        assert failure["equality"] == "understanding = read∘render"
        assert failure["witness"] == "alan:90"

    @pytest.mark.asyncio
    async def test_rejects_zero_max_len(self, client: AsyncClient):
        response = await client.post("/models/golden/validate", json={"max_len": 0})
        assert response.status_code == 422

    @pytest.mark.asyncio
    async def test_unknown_model_is_404(self, client: AsyncClient):
        response = await client.post("/models/nope/validate")
        assert response.status_code == 404


class TestAnalyzeEndpoint:
    """Tests for POST /models/{name}/analyze endpoint."""

    @pytest.mark.asyncio
    async def test_returns_findings(self, client: AsyncClient):
        response = await client.post("/models/scatter_face/analyze")
        assert response.status_code == 200
        data = response.json()
        assert data["chart_junk"]["arbitrary_junk"] == []
        assert data["chart_junk"]["redundant_groups"] == [{"source": "instances", "elements": ["points", "face"]}]
        assert "status" not in data

    @pytest.mark.asyncio
    async def test_mode(self, client: AsyncClient):
        response = await client.post("/models/extension_only/analyze", json={"mode": "categorical"})
        assert response.status_code == 200
        assert {s["mode"] for s in response.json()["morphisms"]} == {"categorical"}


class TestPathsEndpoint:
    """Tests for POST /models/{name}/paths endpoint."""

    @pytest.mark.asyncio
    async def test_lists_paths(self, client: AsyncClient):
        response = await client.post("/models/bare_diagram/paths", json={"source": "A", "target": "D"})
        assert response.status_code == 200
        data = response.json()
        assert data["paths"]["paths"] == [["f", "g"], ["h", "k"]]
        assert data["status"] == "pass"

    @pytest.mark.asyncio
    async def test_unknown_object_is_422(self, client: AsyncClient):
        response = await client.post("/models/golden/paths", json={"source": "Data", "target": "Nowhere"})
        assert response.status_code == 422


class TestCheckEndpoint:
    """Tests for POST /check endpoint."""

    @pytest.mark.asyncio
    async def test_validates_text(self, client: AsyncClient):
        text = "object A { x }\nobject B { y }\nmorphism f : A -> B { x -> y }\n"
        response = await client.post("/check", json={"text": text, "origin": "inline.viscat"})
        assert response.status_code == 200
        assert response.json()["status"] == "pass"

    @pytest.mark.asyncio
    async def test_parse_errors_are_422(self, client: AsyncClient):
        response = await client.post("/check", json={"text": "object A { x\n"})
        assert response.status_code == 422
        detail = response.json()["detail"]
        assert detail["origin"] == "<request>"
        assert detail["diagnostics"][0]["line"] == 2
        assert detail["diagnostics"][0]["severity"] == "error"


class TestCreateRouter:
    """Tests for create_router() argument handling."""

    def test_accepts_plain_mapping(self, square: Diagram):
        assert create_router({"square": square}) is not None

    def test_rejects_empty_mapping(self):
        with pytest.raises(TypeError):
            create_router({})
