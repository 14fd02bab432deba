"""Recognizer backends and frame aggregation.

A backend turns a decoded clip into (transcript, frames); the shared
aggregator collapses frames into the per-phoneme documents the engine
consumes. Confidence is the mean frame posterior over each emitted
phoneme, which is the whole posterior-to-confidence story: no language
model rescoring, no calibration.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Any, Protocol

from .arpabet import fold_label
from .audio import Clip
from .errors import ConfigError


@dataclass(frozen=True)
class Frame:
    """One acoustic frame: raw model label, its posterior, a timestamp."""

    label: str
    posterior: float
    t_ms: int


class RecognizerModel(Protocol):
    def transcribe(self, clip: Clip) -> tuple[str, list[Frame]]: ...


def aggregate_frames(frames: list[Frame]) -> list[dict[str, Any]]:
    """Collapse frame runs into emitted phonemes.

    A run is a maximal stretch of frames folding to the same inventory
    symbol; blank frames break runs and are dropped. Each run emits one
    phoneme with confidence = mean posterior (fsum keeps the mean exact
    for equal posteriors) and the run's first/last timestamps.
    """
    out: list[dict[str, Any]] = []
    run_symbol: str | None = None
    run: list[Frame] = []

    def emit() -> None:
        if run_symbol is None:
            return
        conf = math.fsum(f.posterior for f in run) / len(run)
        out.append(
            {
                "symbol": run_symbol,
                "confidence": min(1.0, max(0.0, conf)),
                "start_ms": run[0].t_ms,
                "end_ms": run[-1].t_ms,
            }
        )

    for frame in frames:
        symbol = fold_label(frame.label)
        if symbol != run_symbol:
            emit()
            run_symbol = symbol
            run = []
        run.append(frame)
    emit()
    return out


class StubRecognizer:
    """Deterministic CI backend.

    Silence transcribes to nothing. Any other clip replays the bundled
    utterance as synthetic frames (two per phoneme, at the segment
    boundaries), so the wire path from frames to document is the same
    one a real model would use.
    """

    def __init__(self) -> None:
        ref = resources.files("phonocoach_bridge").joinpath("data/stub_utterance.json")
        self._doc = json.loads(ref.read_text(encoding="utf-8"))

    def transcribe(self, clip: Clip) -> tuple[str, list[Frame]]:
        if clip.is_silent():
            return "", []
        frames: list[Frame] = []
        for entry in self._doc["phonemes"]:
            if frames:
                frames.append(Frame("SIL", 0.0, frames[-1].t_ms))
            frames.append(Frame(entry["symbol"], entry["confidence"], entry["start_ms"]))
            frames.append(Frame(entry["symbol"], entry["confidence"], entry["end_ms"]))
        return self._doc["transcript"], frames


def load_recognizer(model_id: str) -> RecognizerModel:
    if model_id == "stub":
        return StubRecognizer()
    raise ConfigError(
        f"recognizer model {model_id!r} is not bundled; only 'stub' ships with "
        "this build (real acoustic models need the full adapter install)"
    )
