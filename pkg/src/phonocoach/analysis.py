"""Per-category confidence scoring, disorder flagging, and severity.

Confidence per category combines three normalized components: mean deficit of
the flagged phonemes the category claims, spike density of its neuron block,
and the membrane-pattern mismatch score. A category is flagged when its
confidence reaches the configured threshold; severity depends only on how
many phonemes were flagged.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable

from .categories import (
    CATEGORY_ORDER,
    CategoryConfig,
    CategoryMap,
    DisorderCategory,
    issues_for_category,
    sort_flagged,
)
from .errors import ConfigError, ValidationError
from .ingest import (
    DEFAULT_ISSUE_THRESHOLD,
    PhonemeIssue,
    PhonemeScore,
    RecognizerOutput,
    Source,
    flag_phoneme_issues,
)
from .jsonutil import content_id
from .lif import DEFAULT_PARAMS, LifParams, encode_stimulus, simulate_lif, spike_density
from .patterns import ReferencePatternBank, pattern_match_score
from .phonemes import cluster_positions

S_MAX = 1.0
WEIGHT_TOL = 1e-9


class Severity(str, Enum):
    mild = "mild"
    moderate = "moderate"
    severe = "severe"


@dataclass(frozen=True)
class SpikeSummary:
    spike_density: float
    pattern_mismatch: float

    def to_dict(self) -> dict[str, float]:
        return {"spike_density": self.spike_density, "pattern_mismatch": self.pattern_mismatch}


@dataclass(frozen=True)
class AnalysisResult:
    analysis_id: str
    transcript: str
    source: Source
    phoneme_issues: tuple[PhonemeIssue, ...]
    category_confidences: dict[DisorderCategory, float]
    flagged: tuple[tuple[DisorderCategory, float], ...]
    severity: Severity
    spike_summary: dict[DisorderCategory, SpikeSummary]
    issue_threshold: float
    seed: int
    warnings: tuple[str, ...] = ()

    @property
    def flagged_categories(self) -> tuple[DisorderCategory, ...]:
        return tuple(cat for cat, _ in self.flagged)

    def to_document(self) -> dict[str, Any]:
        return {
            "analysis_id": self.analysis_id,
            "transcript": self.transcript,
            "source": self.source.value,
            "phoneme_issues": [i.to_dict() for i in self.phoneme_issues],
            "category_confidences": {
                cat.value: self.category_confidences[cat] for cat in CATEGORY_ORDER
            },
            "flagged": [
                {"category": cat.value, "confidence": conf} for cat, conf in self.flagged
            ],
            "severity": self.severity.value,
            "spike_summary": {
                cat.value: self.spike_summary[cat].to_dict() for cat in CATEGORY_ORDER
            },
            "issue_threshold": self.issue_threshold,
            "seed": self.seed,
            "warnings": list(self.warnings),
        }


def result_from_document(doc: dict[str, Any]) -> AnalysisResult:
    issues = tuple(
        PhonemeIssue(PhonemeScore(e["symbol"], float(e["confidence"]), int(e["position"])))
        for e in doc["phoneme_issues"]
    )
    return AnalysisResult(
        analysis_id=doc["analysis_id"],
        transcript=doc["transcript"],
        source=Source(doc.get("source", "file")),
        phoneme_issues=issues,
        category_confidences={
            DisorderCategory(k): float(v) for k, v in doc["category_confidences"].items()
        },
        flagged=tuple(
            (DisorderCategory(e["category"]), float(e["confidence"])) for e in doc["flagged"]
        ),
        severity=Severity(doc["severity"]),
        spike_summary={
            DisorderCategory(k): SpikeSummary(float(v["spike_density"]), float(v["pattern_mismatch"]))
            for k, v in doc["spike_summary"].items()
        },
        issue_threshold=float(doc["issue_threshold"]),
        seed=int(doc["seed"]),
        warnings=tuple(doc.get("warnings", [])),
    )


def category_confidence(
    issues: Iterable[PhonemeIssue],
    s_i: float,
    m_i: float,
    config: CategoryConfig,
    cluster_pos: frozenset[int] = frozenset(),
) -> float:
    """Weighted sum alpha*meanDeficit + beta*(S_i/S_max) + gamma*M_i."""
    if abs(sum(config.weights) - 1.0) > WEIGHT_TOL:
        raise ConfigError(f"{config.category.value}: weights do not sum to 1")
    if not (0.0 <= s_i <= 1.0 and 0.0 <= m_i <= 1.0):
        raise ValidationError(f"s_i={s_i}, m_i={m_i} must lie in [0, 1]")
    matched = issues_for_category(issues, config, cluster_pos)
    if matched:
        mean_deficit = sum(i.deficit for i in matched) / len(matched)
    else:
        mean_deficit = 0.0
    return config.alpha * mean_deficit + config.beta * (s_i / S_MAX) + config.gamma * m_i


def build_profile(
    issues: Iterable[PhonemeIssue],
    spike_summary: dict[DisorderCategory, SpikeSummary],
    configs: CategoryMap,
    cluster_pos: frozenset[int] = frozenset(),
) -> tuple[dict[DisorderCategory, float], list[tuple[DisorderCategory, float]]]:
    issues = list(issues)
    confidences = {
        cat: category_confidence(
            issues,
            spike_summary[cat].spike_density,
            spike_summary[cat].pattern_mismatch,
            configs[cat],
            cluster_pos,
        )
        for cat in CATEGORY_ORDER
    }
    return confidences, sort_flagged(confidences, configs)


def classify_severity(issue_count: int) -> Severity:
    if issue_count < 0:
        raise ValidationError("issue count cannot be negative")
    if issue_count <= 5:
        return Severity.mild
    if issue_count <= 10:
        return Severity.moderate
    return Severity.severe


def _density_warnings(
    spike_summary: dict[DisorderCategory, SpikeSummary], configs: CategoryMap
) -> list[str]:
    # Diagnostic only: the typical band plays no role in scoring. Quiescent
    # blocks (density 0) are skipped; no activity is not an observation.
    out = []
    for cat in CATEGORY_ORDER:
        s = spike_summary[cat].spike_density
        lo, hi = configs[cat].typical_density
        if s > 0.0 and not lo <= s <= hi:
            out.append(
                f"{cat.value}: spike density {s:.4f} outside typical band [{lo}, {hi}]"
            )
    return out


def _analysis_id(output: RecognizerOutput, params: LifParams, issue_threshold: float, seed: int) -> str:
    return content_id(
        "an",
        {
            "doc": output.to_document(),
            "lif": [params.decay, params.threshold, params.reset, params.steps],
            "threshold": issue_threshold,
            "seed": seed,
        },
    )


def analyze(
    output: RecognizerOutput,
    configs: CategoryMap,
    params: LifParams = DEFAULT_PARAMS,
    bank: ReferencePatternBank | None = None,
    issue_threshold: float = DEFAULT_ISSUE_THRESHOLD,
    seed: int = 0,
) -> AnalysisResult:
    """Full pipeline from recognizer output to a category profile.

    With no sub-threshold phoneme there is nothing to encode, so every
    component is zero and no category can flag; the simulation is skipped
    rather than letting quiescent pattern mismatch invent a disorder.
    """
    issues = tuple(flag_phoneme_issues(output, issue_threshold))
    cluster_pos = frozenset(cluster_positions(output.symbols))
    if issues:
        if bank is None:
            raise ValidationError("pattern bank required when issues are present")
        currents = encode_stimulus(issues, configs, cluster_pos, params.steps)
        spikes, pots = simulate_lif(currents, params)
        spike_summary = {
            cat: SpikeSummary(
                spike_density(spikes, configs[cat].neuron_range),
                pattern_match_score(pots, bank, cat, configs),
            )
            for cat in CATEGORY_ORDER
        }
        confidences, flagged = build_profile(issues, spike_summary, configs, cluster_pos)
        warnings = _density_warnings(spike_summary, configs)
    else:
        spike_summary = {cat: SpikeSummary(0.0, 0.0) for cat in CATEGORY_ORDER}
        confidences = {cat: 0.0 for cat in CATEGORY_ORDER}
        flagged = []
        warnings = []
    return AnalysisResult(
        analysis_id=_analysis_id(output, params, issue_threshold, seed),
        transcript=output.transcript,
        source=output.source,
        phoneme_issues=issues,
        category_confidences=confidences,
        flagged=tuple(flagged),
        severity=classify_severity(len(issues)),
        spike_summary=spike_summary,
        issue_threshold=issue_threshold,
        seed=seed,
        warnings=tuple(warnings),
    )
