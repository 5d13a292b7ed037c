"""TOML configuration.

Searched in this order:

1. ``VISCAT_CONFIG`` environment variable (explicit path)
2. ``./viscat.toml``
3. ``~/.config/viscat/config.toml``
4. built-in defaults

Example::

    [defaults.check]
    max_len = 0            # 0 = number of morphisms in the diagram
    mode = "set-level"     # or "categorical"; unset lets alternates decide

    [defaults.report]
    format = "text"        # or "machine"

    [logging]
    level = "warning"
"""

import logging
import os
import sys
import tomllib
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .diagram import CheckMode
from .errors import ConfigError
from .report import ReportFormat

CONFIG_ENV = "VISCAT_CONFIG"
LOG_ENV = "VISCAT_LOG"

logger = logging.getLogger(__name__)


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CheckDefaults(_Section):
    max_len: int = Field(default=0, ge=0)
    mode: Optional[CheckMode] = None

    def resolved_max_len(self) -> Optional[int]:
        return self.max_len or None


class ReportDefaults(_Section):
    format: ReportFormat = ReportFormat.Text


class Defaults(_Section):
    check: CheckDefaults = CheckDefaults()
    report: ReportDefaults = ReportDefaults()


class LoggingConfig(_Section):
    level: str = "warning"

    @field_validator("level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        if not isinstance(logging.getLevelName(value.upper()), int):
            raise ValueError(f"unknown log level {value!r}")
        return value.lower()


class Config(_Section):
    defaults: Defaults = Defaults()
    logging: LoggingConfig = LoggingConfig()
    source: Optional[str] = Field(default=None, exclude=True)

    @classmethod
    def from_toml(cls, text: str, origin: str = "<string>") -> "Config":
        try:
            data = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(origin, str(exc)) from exc
        try:
            return cls.model_validate({**data, "source": origin})
        except ValidationError as exc:
            raise ConfigError(origin, "; ".join(_describe(e) for e in exc.errors())) from exc

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "Config":
        p = Path(path)
        return cls.from_toml(p.read_text(encoding="utf-8"), origin=str(p))

    @classmethod
    def load(cls) -> "Config":
        """Search the standard locations; built-in defaults when none exists."""
        explicit = os.environ.get(CONFIG_ENV)
        if explicit:
            return cls.from_file(explicit)
        for candidate in (Path.cwd() / "viscat.toml", Path.home() / ".config" / "viscat" / "config.toml"):
            if candidate.is_file():
                logger.debug("using configuration %s", candidate)
                return cls.from_file(candidate)
        return cls()


def _describe(error: dict) -> str:
    location = ".".join(str(part) for part in error.get("loc", ()))
    return f"{location}: {error.get('msg', 'invalid')}"


def configure_logging(config: Optional[Config] = None) -> None:
    """Install one stderr handler on the ``viscat`` logger.

    ``VISCAT_LOG`` (a level name) wins over the configured level.
    """
    level_name = os.environ.get(LOG_ENV) or (config.logging.level if config else "warning")
    level = logging.getLevelName(level_name.upper())
    if not isinstance(level, int):
        level = logging.WARNING
    root = logging.getLogger("viscat")
    root.setLevel(level)
    if not any(getattr(h, "_viscat", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._viscat = True  # type: ignore[attr-defined]
        root.addHandler(handler)
