"""
parser.py 📄
-------------
Reads and writes the YAML scenario document.

The document schema is frozen; see docs/scenario_schema.md.
"""

import logging
from pathlib import Path
from typing import Any, List, Union

import yaml
from pydantic import ValidationError

from ..core.utils.error_handlers import ScenarioError
from .models import ScenarioConfig

logger = logging.getLogger(__name__)


def _describe(error: dict) -> str:
    loc = ".".join(str(part) for part in error["loc"])
    kind = error["type"]
    if kind == "missing":
        return f"missing required key {loc}"
    if kind == "extra_forbidden":
        return f"unknown key {loc}"
    return f"invalid value for {loc}: {error['msg']}"


def _structural_errors(exc: ValidationError) -> List[str]:
    # before-validators on nested models can report the same location twice
    messages: List[str] = []
    for error in exc.errors():
        message = _describe(error)
        if message not in messages:
            messages.append(message)
    return messages


def parse_scenario(text: str) -> ScenarioConfig:
    """
    Parse a scenario document into a ScenarioConfig with defaults filled.

    Raises:
        ScenarioError: syntax error (with line/column), unknown key,
            missing required key or wrongly typed value.
    """
    try:
        document: Any = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ScenarioError(
            f"syntax error at {where}: {exc.problem or exc.context}",
            details={"line": mark.line + 1 if mark else None, "column": mark.column + 1 if mark else None},
        ) from exc
    except yaml.YAMLError as exc:
        raise ScenarioError(f"syntax error: {exc}") from exc

    if not isinstance(document, dict):
        raise ScenarioError("scenario document must be a key/value mapping")

    try:
        return ScenarioConfig.model_validate(document)
    except ValidationError as exc:
        messages = _structural_errors(exc)
        raise ScenarioError(messages[0], details={"report": messages}) from exc


def dump_scenario(config: ScenarioConfig) -> str:
    """Canonical document for `config`; parse_scenario(dump_scenario(c)) == c."""
    return yaml.safe_dump(
        config.model_dump(mode="json"),
        sort_keys=False,
        default_flow_style=False,
        allow_unicode=True,
    )


def load_scenario(path: Union[str, Path]) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc.strerror or exc}") from exc
    config = parse_scenario(text)
    logger.debug(f"Loaded scenario '{config.name}' from {path}")
    return config
