"""FastAPI integration helpers for viscat.

The helpers below expose these endpoints:
- ``GET /models``: list registered models and their kind
- ``GET /models/{name}``: objects, morphism ends and role bindings of one model
- ``POST /models/{name}/validate``: axioms, commutativity, extremal objects
- ``POST /models/{name}/analyze``: render profile, chart junk, intension, questions
- ``POST /models/{name}/paths``: every path between two objects, and agreement
- ``POST /check``: parse and validate spec text sent in the request

Responses carry the same document the CLI prints with ``--format machine``.

Example:
    from viscat import ModelHandle
    from viscat.api import create_app

    handle = ModelHandle.from_dir("specs/")
    app = create_app(handle)
"""

from typing import Any, Dict, List, Mapping, Optional

from viscat import ModelHandle
from viscat.diagram import CheckMode
from viscat.dsl import Model, SpecSource, parse_spec
from viscat.errors import UnknownModel, UnknownObject
from viscat.handle import ModelSummary
from viscat.report import report_document, validation_bundle

try:
    from fastapi import APIRouter, FastAPI, HTTPException  # type: ignore
    from pydantic import BaseModel, Field
except ImportError as e:  # pragma: no cover - handled at runtime
    raise RuntimeError("fastapi is required; install with `pip install viscat[api]`") from e

# Use ORJSONResponse if orjson is available
try:
    import orjson  # noqa: F401 - check if orjson is installed
    from fastapi.responses import ORJSONResponse
    _DEFAULT_RESPONSE_CLASS = ORJSONResponse
except ImportError:
    _DEFAULT_RESPONSE_CLASS = None  # Use FastAPI default


class ModelList(BaseModel):
    """Response model for listing available models (name -> process|diagram)."""

    models: Dict[str, str]


class ValidatePayload(BaseModel):
    """Request body accepted by ``POST /models/{name}/validate``."""

    max_len: Optional[int] = Field(default=None, ge=1)


class AnalyzePayload(BaseModel):
    """Request body accepted by ``POST /models/{name}/analyze``.

    ``mode`` decides the per-morphism classification; the render profile
    switches to categorical on its own when alternates are declared.
    """

    mode: Optional[CheckMode] = None


class PathsPayload(BaseModel):
    source: str
    target: str
    max_len: Optional[int] = Field(default=None, ge=1)


class CheckPayload(BaseModel):
    """Spec text to parse and validate without registering it."""

    text: str
    origin: str = "<request>"
    max_len: Optional[int] = Field(default=None, ge=1)


def _prepare_handle(models: Any) -> ModelHandle:
    if isinstance(models, ModelHandle):
        return models
    if isinstance(models, Mapping) and models:
        return ModelHandle(models)
    raise TypeError("models must be a ModelHandle or a non-empty dict[str, ProcessModel | Diagram]")


def create_router(models: Any):
    """Build an ``APIRouter`` exposing viscat models keyed by name."""
    handle: ModelHandle = _prepare_handle(models)
    router = APIRouter()

    def _ensure_model(name: str) -> Model:
        try:
            return handle.get_model(name)
        except UnknownModel as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @router.get("/models", response_model=ModelList)
    async def list_models():
        return ModelList(models={name: handle.summary(name).kind for name in handle.list_models()})

    @router.get("/models/{name}", response_model=ModelSummary)
    async def describe_model(name: str):
        _ensure_model(name)
        return handle.summary(name)

    @router.post("/models/{name}/validate")
    async def validate(name: str, req: Optional[ValidatePayload] = None) -> Dict[str, Any]:
        _ensure_model(name)
        bundle = await handle.validate(name, req.max_len if req else None)
        return report_document(bundle)

    @router.post("/models/{name}/analyze")
    async def analyze(name: str, req: Optional[AnalyzePayload] = None) -> Dict[str, Any]:
        _ensure_model(name)
        bundle = await handle.analyze(name, req.mode if req else None)
        return report_document(bundle)

    @router.post("/models/{name}/paths")
    async def paths(name: str, req: PathsPayload) -> Dict[str, Any]:
        _ensure_model(name)
        try:
            bundle = await handle.paths(name, req.source, req.target, req.max_len)
        except UnknownObject as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return report_document(bundle)

    @router.post("/check")
    async def check(req: CheckPayload) -> Dict[str, Any]:
        result = parse_spec(SpecSource(text=req.text, origin=req.origin))
        if result.model is None:
            diagnostics: List[Dict[str, Any]] = [d.to_dict() for d in result.diagnostics]
            raise HTTPException(status_code=422, detail={"origin": req.origin, "diagnostics": diagnostics})
        bundle = validation_bundle(result.model, req.max_len, req.origin)
        return report_document(bundle)

    return router


def create_app(models: Any):
    """Create a ready-to-serve ``FastAPI`` app with viscat routes.

    Uses ORJSONResponse for faster serialization if orjson is installed.
    """
    kwargs = {}
    if _DEFAULT_RESPONSE_CLASS is not None:
        kwargs["default_response_class"] = _DEFAULT_RESPONSE_CLASS
    app = FastAPI(**kwargs)
    app.include_router(create_router(models))
    return app
