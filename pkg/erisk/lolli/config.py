"""Load run settings from YAML, TOML, or JSON files.

Settings may sit at the top level of the document or under a ``lolli``
section::

    [lolli]
    budget = 50000
    trace = true

Usage::

    settings = settings_from_config("lolli.toml")
    result = prove(gamma, delta, goal, settings.search_config())
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Literal

import pydantic

from .engine import CLAUSE_ORDERS, SearchConfig
from .exc import ConfigError


@dataclass(frozen=True, slots=True)
class Settings:
    """``budget`` counts backchaining steps, ``step_budget`` evaluation derivation nodes."""

    budget: int = 100_000
    step_budget: int = 100_000
    trace: bool = False
    clause_order: str = "as-written"
    collect: bool = True
    log_level: str = "WARNING"

    @classmethod
    def from_mapping(cls, data: dict[str, Any] | None) -> Settings:
        data = dict(data or {})
        if isinstance(data.get("lolli"), dict):
            data = dict(data["lolli"])
        _validate(data)
        if "log_level" in data:
            data["log_level"] = data["log_level"].upper()
        return cls(**data)

    def search_config(self) -> SearchConfig:
        return SearchConfig(budget=self.budget, trace=self.trace, clause_order=self.clause_order)

    def replace(self, **changes: Any) -> Settings:
        """Copy with the non-None ``changes`` applied (CLI overrides)."""
        merged = asdict(self)
        merged.update({k: v for k, v in changes.items() if v is not None})
        return Settings.from_mapping(merged)

    @property
    def level(self) -> int:
        return getattr(logging, self.log_level)


def load_config(path: str | Path) -> dict[str, Any]:
    """Load a configuration dict from a file, dispatched by extension.

    Supported extensions: ``.json``, ``.toml``, ``.yaml`` / ``.yml``.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")

    suffix = path.suffix.lower()

    if suffix == '.json':
        with open(path) as f:
            return json.load(f)

    if suffix == '.toml':
        return _load_toml(path)

    if suffix in ('.yaml', '.yml'):
        return _load_yaml(path) or {}

    raise ValueError(
        f"Unsupported config file extension {suffix!r}. "
        "Use .json, .toml, .yaml, or .yml."
    )


def settings_from_config(path: str | Path) -> Settings:
    """Load :class:`Settings` from a config file."""
    return Settings.from_mapping(load_config(path))


# ── Validation ───────────────────────────────────────────────────

def _validate(data: dict[str, Any]) -> None:
    try:
        _settings_validator().model_validate(data)
    except pydantic.ValidationError as e:
        raise ConfigError(f"Invalid settings: {e}", errors=e.errors()) from e


_VALIDATOR: type[pydantic.BaseModel] | None = None


def _settings_validator() -> type[pydantic.BaseModel]:
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = pydantic.create_model(
            "SettingsValidator",
            __config__=pydantic.ConfigDict(extra="forbid", strict=True),
            budget=(int, pydantic.Field(default=100_000, ge=1)),
            step_budget=(int, pydantic.Field(default=100_000, ge=1)),
            trace=(bool, False),
            clause_order=(Literal[CLAUSE_ORDERS], "as-written"),  # type: ignore[valid-type]
            collect=(bool, True),
            log_level=(str, pydantic.Field(default="WARNING", pattern=r"(?i)^(debug|info|warning|error|critical)$")),
        )
    return _VALIDATOR


# ── Internal loaders ─────────────────────────────────────────────

def _load_toml(path: Path) -> dict[str, Any]:
    """Load TOML using ``tomllib`` (3.11+) or ``tomli``."""
    try:
        import tomllib  # type: ignore[import-not-found]
    except ModuleNotFoundError:
        try:
            import tomli as tomllib  # type: ignore[no-redef]
        except ModuleNotFoundError:
            raise ImportError(
                "TOML support requires Python 3.11+ (built-in tomllib) "
                "or the 'tomli' package. Install with: pip install lolli[toml]"
            )
    with open(path, 'rb') as f:
        return tomllib.load(f)


def _load_yaml(path: Path) -> dict[str, Any]:
    """Load YAML using ``pyyaml``."""
    try:
        import yaml
    except ModuleNotFoundError:
        raise ImportError(
            "YAML support requires the 'pyyaml' package. "
            "Install with: pip install lolli[yaml]"
        )
    with open(path) as f:
        return yaml.safe_load(f)
