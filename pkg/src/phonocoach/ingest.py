"""Recognizer output: parsing, validation, and phoneme-issue flagging.

The wire format is the recognizer JSON document::

    {"transcript": "HELLO GOOD MORNING",
     "phonemes": [{"symbol": "HH", "confidence": 0.705,
                   "start_ms": 0, "end_ms": 80}, ...]}

start_ms/end_ms are optional and preserved opaquely; everything else is
validated strictly. Transcripts are normalized to uppercase.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .errors import SchemaError, ValidationError
from .phonemes import INVENTORY

DEFAULT_ISSUE_THRESHOLD = 0.75


class Source(str, Enum):
    FILE = "file"
    BRIDGE = "bridge"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class PhonemeScore:
    symbol: str
    confidence: float
    position: int
    timing: tuple[int, int] | None = None  # (start_ms, end_ms), opaque

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"symbol": self.symbol, "confidence": self.confidence}
        if self.timing is not None:
            doc["start_ms"], doc["end_ms"] = self.timing
        return doc


@dataclass(frozen=True)
class RecognizerOutput:
    transcript: str
    phonemes: tuple[PhonemeScore, ...]
    source: Source = Source.FILE

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(p.symbol for p in self.phonemes)

    def to_document(self) -> dict[str, Any]:
        return {
            "transcript": self.transcript,
            "phonemes": [p.to_dict() for p in self.phonemes],
        }


@dataclass(frozen=True)
class PhonemeIssue:
    """A phoneme whose confidence fell below the issue threshold."""

    phoneme: PhonemeScore

    @property
    def deficit(self) -> float:
        return 1.0 - self.phoneme.confidence

    @property
    def symbol(self) -> str:
        return self.phoneme.symbol

    @property
    def position(self) -> int:
        return self.phoneme.position

    def to_dict(self) -> dict[str, Any]:
        return {
            "symbol": self.phoneme.symbol,
            "confidence": self.phoneme.confidence,
            "position": self.phoneme.position,
            "deficit": self.deficit,
        }


def parse_recognizer_output(document: str | bytes | dict, source: Source = Source.FILE) -> RecognizerOutput:
    """Parse and validate a recognizer JSON document.

    Raises SchemaError for structural problems and ValidationError for
    out-of-range confidences or unknown phoneme symbols (naming the
    offending phoneme).
    """
    if isinstance(document, (str, bytes)):
        try:
            raw = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"recognizer document is not valid JSON: {exc}") from exc
    else:
        raw = document
    if not isinstance(raw, dict):
        raise SchemaError("recognizer document must be a JSON object")
    transcript = raw.get("transcript")
    phonemes_raw = raw.get("phonemes")
    if not isinstance(transcript, str):
        raise SchemaError("missing or non-string 'transcript'")
    if not isinstance(phonemes_raw, list):
        raise SchemaError("missing or non-array 'phonemes'")

    transcript = transcript.upper()
    scores: list[PhonemeScore] = []
    for idx, entry in enumerate(phonemes_raw):
        if not isinstance(entry, dict):
            raise SchemaError(f"phoneme entry {idx} is not an object")
        symbol = entry.get("symbol")
        confidence = entry.get("confidence")
        if not isinstance(symbol, str):
            raise SchemaError(f"phoneme entry {idx} has no string 'symbol'")
        if not isinstance(confidence, (int, float)) or isinstance(confidence, bool):
            raise SchemaError(f"phoneme entry {idx} ({symbol}) has no numeric 'confidence'")
        symbol = symbol.upper()
        if symbol not in INVENTORY:
            raise ValidationError(f"unknown phoneme symbol {symbol!r} at position {idx}")
        if not 0.0 <= float(confidence) <= 1.0:
            raise ValidationError(
                f"confidence {confidence} out of [0, 1] for phoneme {symbol!r} at position {idx}"
            )
        timing = None
        if "start_ms" in entry or "end_ms" in entry:
            start_ms, end_ms = entry.get("start_ms"), entry.get("end_ms")
            if not (isinstance(start_ms, int) and isinstance(end_ms, int)):
                raise SchemaError(f"phoneme entry {idx} ({symbol}) has non-integer timing")
            if start_ms < 0 or end_ms < start_ms:
                raise ValidationError(f"phoneme entry {idx} ({symbol}) has invalid timing")
            timing = (start_ms, end_ms)
        scores.append(PhonemeScore(symbol, float(confidence), idx, timing))

    if transcript and not scores:
        raise ValidationError("non-empty transcript with empty phoneme list")
    return RecognizerOutput(transcript, tuple(scores), source)


def flag_phoneme_issues(
    output: RecognizerOutput, issue_threshold: float = DEFAULT_ISSUE_THRESHOLD
) -> list[PhonemeIssue]:
    """Phonemes with confidence strictly below the threshold, utterance order."""
    if not 0.0 < issue_threshold < 1.0:
        raise ValidationError(f"issue threshold {issue_threshold} outside (0, 1)")
    return [PhonemeIssue(p) for p in output.phonemes if p.confidence < issue_threshold]
