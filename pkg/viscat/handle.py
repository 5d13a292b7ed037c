"""Handles over a validated set of named spec models.

Build once (every spec parsed and built up front), then run checks from
servers or notebooks through the async methods.
"""

import asyncio
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Union

from pydantic import BaseModel

from .config import Config
from .diagram import CheckMode, Diagram
from .dsl import Model, SpecSource, parse_spec
from .errors import DuplicateId, SpecSyntaxError, UnknownModel
from .process import IntensionStatus, ProcessModel, intension_status
from .report import ReportBundle, analysis_bundle, paths_bundle, validation_bundle

logger = logging.getLogger(__name__)

SPEC_SUFFIXES = (".viscat", ".yaml", ".yml")


class ModelSummary(BaseModel):
    """Shape of one model: objects with their elements, morphism ends, role bindings."""

    name: str
    kind: Literal["process", "diagram"]
    description: Optional[str] = None
    objects: Dict[str, List[str]]
    morphisms: Dict[str, Dict[str, str]]
    roles: Dict[str, str] = {}
    intension: IntensionStatus


class ModelHandle:
    """Validated registry of named models.

    Args:
        models: Mapping of model name -> ProcessModel or Diagram.
        config: Optional Config supplying default max_len and mode.
        description: Optional description for this handle.
    """

    def __init__(
        self,
        models: Mapping[str, Model],
        config: Optional[Config] = None,
        description: Optional[str] = None,
    ):
        for name, model in models.items():
            if not isinstance(model, (ProcessModel, Diagram)):
                raise TypeError(f"model {name!r} must be a ProcessModel or Diagram")
        self._models: Dict[str, Model] = dict(models)
        self.config = config or Config()
        self.description = description

    def __getitem__(self, name: str) -> Model:
        return self.get_model(name)

    def __contains__(self, name: object) -> bool:
        return name in self._models

    @classmethod
    def from_sources(
        cls,
        sources: Iterable[SpecSource],
        config: Optional[Config] = None,
        description: Optional[str] = None,
    ) -> "ModelHandle":
        """Parse every source; the model name is the origin's file stem.

        Raises:
            SpecSyntaxError: a source has error diagnostics (the first such source).
            DuplicateId: two sources share a name.
        """
        models: Dict[str, Model] = {}
        for src in sources:
            name = Path(src.origin).stem
            if name in models:
                raise DuplicateId(name, "model")
            result = parse_spec(src)
            if result.model is None:
                raise SpecSyntaxError(src.origin, result.errors)
            for warning in result.warnings:
                logger.warning("%s", warning.render(src.origin))
            models[name] = result.model
        return cls(models, config=config, description=description)

    @classmethod
    def from_dir(
        cls,
        root: Union[Path, str],
        config: Optional[Config] = None,
        description: Optional[str] = None,
    ) -> "ModelHandle":
        """Load every ``.viscat``/``.yaml``/``.yml`` spec directly under ``root``."""
        base = Path(root)
        if not base.is_dir():
            raise NotADirectoryError(str(base))
        files = sorted(p for p in base.iterdir() if p.is_file() and p.suffix.lower() in SPEC_SUFFIXES)
        logger.debug("loading %d spec(s) from %s", len(files), base)
        return cls.from_sources((SpecSource.from_path(p) for p in files), config=config, description=description)

    def list_models(self) -> List[str]:
        """Return the model names in load order."""
        return list(self._models)

    def get_model(self, name: str) -> Model:
        try:
            return self._models[name]
        except KeyError:
            raise UnknownModel(name) from None

    def summary(self, name: str) -> ModelSummary:
        model = self.get_model(name)
        p = model if isinstance(model, ProcessModel) else ProcessModel(diagram=model)
        d = p.diagram
        return ModelSummary(
            name=name,
            kind="process" if isinstance(model, ProcessModel) else "diagram",
            objects={obj.id: list(obj.elements) for obj in d.objects.values()},
            morphisms={f.id: {"dom": f.dom.id, "cod": f.cod.id} for f in d.morphisms.values()},
            roles=dict(p.roles),
            intension=intension_status(p).status,
        )

    async def validate(self, name: str, max_len: Optional[int] = None) -> ReportBundle:
        model = self.get_model(name)
        limit = max_len if max_len is not None else self.config.defaults.check.resolved_max_len()
        return await asyncio.to_thread(validation_bundle, model, limit, name)

    async def analyze(self, name: str, mode: Optional[CheckMode] = None) -> ReportBundle:
        model = self.get_model(name)
        chosen = CheckMode(mode) if mode is not None else self.config.defaults.check.mode
        return await asyncio.to_thread(analysis_bundle, model, chosen, name)

    async def paths(self, name: str, source: str, target: str, max_len: Optional[int] = None) -> ReportBundle:
        model = self.get_model(name)
        limit = max_len if max_len is not None else self.config.defaults.check.resolved_max_len()
        return await asyncio.to_thread(paths_bundle, model, source, target, limit, name)
