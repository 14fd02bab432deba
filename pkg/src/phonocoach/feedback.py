"""Five-part feedback assembly: guidance, tips, visual guides, overall text,
and optional per-exercise accuracy scoring.

Selections from the guidance and tip pools are keyed by (seed, analysis id)
so a repeated request returns the same bundle while different sessions see
different picks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any, Iterable, Mapping

from .analysis import AnalysisResult, Severity
from .categories import CATEGORY_ORDER, ENUM_RANK, DisorderCategory
from .errors import ConfigError, ValidationError
from .therapy import derived_rng

DEFAULT_LAMBDA_FB = 0.2
SUCCESS_CUTOFF = 0.70
ASSESS_THRESHOLDS = (("excellent", 0.85), ("good", 0.70), ("fair", 0.50))
GENERAL_TIP_COUNT = 3

OVERALL_TEXT = {
    Severity.mild: "Simple practice",
    Severity.moderate: "Focused practice",
    Severity.severe: "Intensive practice",
}


@dataclass(frozen=True)
class VisualGuide:
    category: DisorderCategory
    guide_type: str
    description: str
    reference: str

    def to_dict(self) -> dict[str, str]:
        return {
            "category": self.category.value,
            "guide_type": self.guide_type,
            "description": self.description,
            "reference": self.reference,
        }


@dataclass(frozen=True)
class PerformanceRecord:
    category: DisorderCategory
    targets_attempted: int
    targets_correct: int
    prior_accuracy: float | None = None

    def __post_init__(self) -> None:
        if self.targets_attempted < 0:
            raise ValidationError("targets_attempted cannot be negative")
        if not 0 <= self.targets_correct <= self.targets_attempted:
            raise ValidationError("targets_correct must lie in [0, targets_attempted]")
        if self.prior_accuracy is not None and not 0.0 <= self.prior_accuracy <= 1.0:
            raise ValidationError("prior_accuracy must lie in [0, 1]")


@dataclass(frozen=True)
class ExerciseFeedback:
    accuracy: dict[DisorderCategory, float]
    assessment: dict[DisorderCategory, str]
    improvement_areas: tuple[DisorderCategory, ...]
    strengths: tuple[DisorderCategory, ...]

    def to_dict(self) -> dict[str, Any]:
        order = sorted(self.accuracy, key=ENUM_RANK.__getitem__)
        return {
            "accuracy": {c.value: self.accuracy[c] for c in order},
            "assessment": {c.value: self.assessment[c] for c in order},
            "improvement_areas": [c.value for c in self.improvement_areas],
            "strengths": [c.value for c in self.strengths],
        }


@dataclass(frozen=True)
class FeedbackBundle:
    analysis_id: str
    specific: tuple[tuple[DisorderCategory, str], ...]
    general: tuple[str, ...]
    visual: tuple[VisualGuide, ...]
    overall: str
    exercise: ExerciseFeedback | None

    def to_document(self) -> dict[str, Any]:
        return {
            "analysis_id": self.analysis_id,
            "specific": [{"category": c.value, "text": t} for c, t in self.specific],
            "general": list(self.general),
            "visual": [v.to_dict() for v in self.visual],
            "overall": self.overall,
            "exercise": self.exercise.to_dict() if self.exercise else None,
        }


@dataclass(frozen=True)
class FeedbackAssets:
    guidance: dict[DisorderCategory, tuple[str, ...]]
    tips: tuple[str, ...]
    visual: dict[DisorderCategory, VisualGuide]


def _asset_root():
    return resources.files("phonocoach.data")


def load_feedback_assets(
    guidance_path: str | None = None,
    tips_path: str | None = None,
    visual_path: str | None = None,
) -> FeedbackAssets:
    """Load and validate the three asset tables.

    A visual reference that does not resolve to a shipped file fails here, at
    startup, rather than during a request.
    """

    def read(path: str | None, default_name: str) -> Any:
        if path is None:
            text = _asset_root().joinpath(default_name).read_text("utf-8")
        else:
            try:
                with open(path, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read asset {path}: {exc}") from exc
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"asset {path or default_name} is not valid JSON: {exc}") from exc

    raw_guidance = read(guidance_path, "guidance.json")
    raw_tips = read(tips_path, "tips.json")
    raw_visual = read(visual_path, "visual_guides.json")

    guidance: dict[DisorderCategory, tuple[str, ...]] = {}
    for cat in CATEGORY_ORDER:
        entries = raw_guidance.get(cat.value)
        if not isinstance(entries, list) or len(entries) < 3:
            raise ConfigError(f"guidance for {cat.value} needs at least 3 entries")
        guidance[cat] = tuple(str(e) for e in entries)

    if not isinstance(raw_tips, list) or len(raw_tips) < GENERAL_TIP_COUNT:
        raise ConfigError(f"tip pool needs at least {GENERAL_TIP_COUNT} entries")
    tips = tuple(str(t) for t in raw_tips)

    visual: dict[DisorderCategory, VisualGuide] = {}
    for cat in CATEGORY_ORDER:
        entry = raw_visual.get(cat.value)
        if not isinstance(entry, dict):
            raise ConfigError(f"visual guide table is missing {cat.value}")
        try:
            guide = VisualGuide(
                cat, str(entry["guide_type"]), str(entry["description"]), str(entry["reference"])
            )
        except KeyError as exc:
            raise ConfigError(f"visual guide for {cat.value} lacks {exc}") from exc
        if not _asset_root().joinpath(guide.reference).is_file():
            raise ConfigError(
                f"visual asset {guide.reference!r} for {cat.value} does not resolve to a shipped file"
            )
        visual[cat] = guide
    return FeedbackAssets(guidance, tips, visual)


def specific_guidance(
    flagged: Iterable[DisorderCategory], assets: FeedbackAssets, seed: int, session: str
) -> list[tuple[DisorderCategory, str]]:
    """One guidance text per flagged category, keeping the given order."""
    out = []
    for cat in flagged:
        options = assets.guidance[cat]
        idx = derived_rng(seed, session, cat.value, "guidance").randrange(len(options))
        out.append((cat, options[idx]))
    return out


def general_tips(assets: FeedbackAssets, seed: int, session: str) -> list[str]:
    rng = derived_rng(seed, session, "tips")
    return rng.sample(list(assets.tips), GENERAL_TIP_COUNT)


def visual_guides(
    flagged: Iterable[DisorderCategory], assets: FeedbackAssets
) -> list[VisualGuide]:
    """One guide per flagged category, in category declaration order."""
    return [assets.visual[cat] for cat in sorted(set(flagged), key=ENUM_RANK.__getitem__)]


def single_accuracy(
    record: PerformanceRecord, lambda_fb: float = DEFAULT_LAMBDA_FB
) -> tuple[float, float]:
    """(base, corrected) accuracy for one record; attempts must be positive."""
    if record.targets_attempted == 0:
        raise ValidationError("cannot score a record with zero attempts")
    base = record.targets_correct / record.targets_attempted
    adj = base - record.prior_accuracy if record.prior_accuracy is not None else 0.0
    return base, min(1.0, max(0.0, base + lambda_fb * adj))


def exercise_accuracy(
    records: Iterable[PerformanceRecord], lambda_fb: float = DEFAULT_LAMBDA_FB
) -> dict[DisorderCategory, float]:
    """Per-category accuracy: clamp(base + lambda*(base - prior), 0, 1).

    Records for the same category are pooled; categories with zero attempts
    are omitted.
    """
    attempted: dict[DisorderCategory, int] = {}
    correct: dict[DisorderCategory, int] = {}
    prior: dict[DisorderCategory, float] = {}
    for rec in records:
        attempted[rec.category] = attempted.get(rec.category, 0) + rec.targets_attempted
        correct[rec.category] = correct.get(rec.category, 0) + rec.targets_correct
        if rec.prior_accuracy is not None:
            prior[rec.category] = rec.prior_accuracy
    out: dict[DisorderCategory, float] = {}
    for cat, n in attempted.items():
        if n == 0:
            continue
        base = correct[cat] / n
        adj = base - prior[cat] if cat in prior else 0.0
        out[cat] = min(1.0, max(0.0, base + lambda_fb * adj))
    return out


def assess(a_c: float) -> str:
    if not 0.0 <= a_c <= 1.0:
        raise ValidationError(f"accuracy {a_c} outside [0, 1]")
    for label, cutoff in ASSESS_THRESHOLDS:
        if a_c >= cutoff:
            return label
    return "needs-work"


def build_exercise_feedback(accuracy: Mapping[DisorderCategory, float]) -> ExerciseFeedback:
    assessment = {cat: assess(a) for cat, a in accuracy.items()}
    order = sorted(accuracy, key=ENUM_RANK.__getitem__)
    improvement = tuple(c for c in order if assessment[c] in ("fair", "needs-work"))
    strengths = tuple(c for c in order if assessment[c] == "excellent")
    return ExerciseFeedback(dict(accuracy), assessment, improvement, strengths)


def overall_assessment(severity: Severity) -> str:
    return OVERALL_TEXT[severity]


def generate_feedback(
    analysis: AnalysisResult,
    assets: FeedbackAssets,
    performance: Iterable[PerformanceRecord] | None = None,
    lambda_fb: float = DEFAULT_LAMBDA_FB,
    seed: int = 0,
) -> FeedbackBundle:
    """Assemble the bundle; specific guidance follows descending confidence."""
    flagged = analysis.flagged_categories  # already confidence-descending
    exercise = None
    if performance is not None:
        exercise = build_exercise_feedback(exercise_accuracy(performance, lambda_fb))
    return FeedbackBundle(
        analysis_id=analysis.analysis_id,
        specific=tuple(specific_guidance(flagged, assets, seed, analysis.analysis_id)),
        general=tuple(general_tips(assets, seed, analysis.analysis_id)),
        visual=tuple(visual_guides(flagged, assets)),
        overall=overall_assessment(analysis.severity),
        exercise=exercise,
    )
