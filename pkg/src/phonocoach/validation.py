"""Published JSON schemas and validation against them.

Schemas live under phonocoach/schemas/ and are shipped as package data; the
same files are the wire contract for the API, the CLI, and both bridges.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any

from jsonschema import Draft202012Validator

from .errors import SchemaError

SCHEMA_NAMES = (
    "recognizer",
    "analysis",
    "therapy",
    "feedback",
    "envelope",
    "progress",
    "generator_bridge",
)


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict[str, Any]:
    if name not in SCHEMA_NAMES:
        raise SchemaError(f"no published schema named {name!r}")
    text = resources.files("phonocoach.schemas").joinpath(f"{name}.json").read_text("utf-8")
    schema = json.loads(text)
    Draft202012Validator.check_schema(schema)
    return schema


@lru_cache(maxsize=None)
def _validator(name: str, pointer: str | None = None) -> Draft202012Validator:
    schema = load_schema(name)
    if pointer is not None:
        for part in pointer.strip("/").split("/"):
            schema = schema[part]
    return Draft202012Validator(schema)


def validate_document(doc: Any, name: str, pointer: str | None = None) -> None:
    """Raise SchemaError naming the first offending location.

    pointer selects a sub-schema, e.g. "$defs/response" for the generator
    bridge reply.
    """
    errors = sorted(_validator(name, pointer).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.path) or "<root>"
        raise SchemaError(f"document fails schema {name!r} at {where}: {err.message}")
