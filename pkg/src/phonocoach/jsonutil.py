"""Canonical JSON encoding and content-derived identifiers.

Every persisted or hashed document goes through canonical_dumps so that a
given value has exactly one byte representation (sorted keys, no whitespace,
ASCII escapes). Identifiers are sha256 prefixes of that encoding, which keeps
them stable across processes and platforms.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

ID_HEX_LEN = 16


def canonical_dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_id(prefix: str, doc: Any) -> str:
    digest = hashlib.sha256(canonical_dumps(doc).encode("ascii")).hexdigest()
    return f"{prefix}-{digest[:ID_HEX_LEN]}"
