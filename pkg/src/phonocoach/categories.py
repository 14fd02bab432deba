"""Disorder categories and their neuron/threshold/weight configuration.

The default configuration ships as data/categories.json and can be replaced
with an edited copy (same shape) at load time. Each category owns a 64-neuron
block; the six blocks partition neurons 1..384.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

from .errors import ConfigError
from .ingest import PhonemeIssue
from .phonemes import INVENTORY

NUM_NEURONS = 384
WEIGHT_TOL = 1e-9


class DisorderCategory(str, Enum):
    # Declaration order is the tie-break order for flag sorting.
    RSound = "RSound"
    SSound = "SSound"
    ThSound = "ThSound"
    LSound = "LSound"
    ConsonantCluster = "ConsonantCluster"
    VowelDistortion = "VowelDistortion"


CATEGORY_ORDER: tuple[DisorderCategory, ...] = tuple(DisorderCategory)
ENUM_RANK: dict[DisorderCategory, int] = {c: i for i, c in enumerate(CATEGORY_ORDER)}


@dataclass(frozen=True)
class CategoryConfig:
    category: DisorderCategory
    display: str
    neuron_range: tuple[int, int]  # 1-based inclusive, as configured
    typical_density: tuple[float, float]  # diagnostic band, no scoring role
    threshold: float
    weights: tuple[float, float, float]  # (alpha, beta, gamma)
    target_phonemes: frozenset[str]
    cluster_based: bool = False

    @property
    def alpha(self) -> float:
        return self.weights[0]

    @property
    def beta(self) -> float:
        return self.weights[1]

    @property
    def gamma(self) -> float:
        return self.weights[2]

    @property
    def neuron_slice(self) -> slice:
        lo, hi = self.neuron_range
        return slice(lo - 1, hi)

    @property
    def size(self) -> int:
        lo, hi = self.neuron_range
        return hi - lo + 1

    def matches(self, symbol: str, position: int, cluster_positions: frozenset[int]) -> bool:
        """Whether a phoneme at an utterance position belongs to this category."""
        if self.cluster_based:
            return position in cluster_positions
        return symbol in self.target_phonemes


CategoryMap = dict[DisorderCategory, CategoryConfig]


def _parse_config(entry: dict) -> CategoryConfig:
    try:
        cat = DisorderCategory(entry["id"])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"unknown category id in config: {entry.get('id')!r}") from exc
    try:
        lo, hi = entry["neuron_range"]
        dlo, dhi = entry["typical_density"]
        threshold = float(entry["threshold"])
        weights = tuple(float(w) for w in entry["weights"])
        match_mode = entry.get("match", "phonemes")
        phonemes = frozenset(str(p).upper() for p in entry.get("target_phonemes", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed config for {cat.value}: {exc}") from exc
    if len(weights) != 3:
        raise ConfigError(f"{cat.value}: weights must have three entries")
    return CategoryConfig(
        category=cat,
        display=str(entry.get("display", cat.value)),
        neuron_range=(int(lo), int(hi)),
        typical_density=(float(dlo), float(dhi)),
        threshold=threshold,
        weights=weights,  # type: ignore[arg-type]
        target_phonemes=phonemes,
        cluster_based=(match_mode == "clusters"),
    )


def validate_categories(configs: CategoryMap) -> None:
    if set(configs) != set(DisorderCategory):
        missing = sorted(c.value for c in set(DisorderCategory) - set(configs))
        raise ConfigError(f"config must define all six categories; missing {missing}")
    covered: list[int] = []
    for cat in CATEGORY_ORDER:
        cfg = configs[cat]
        a, b, g = cfg.weights
        if abs((a + b + g) - 1.0) > WEIGHT_TOL:
            raise ConfigError(f"{cat.value}: weights sum to {a + b + g}, expected 1")
        if min(cfg.weights) < 0:
            raise ConfigError(f"{cat.value}: negative weight")
        if not 0.0 < cfg.threshold < 1.0:
            raise ConfigError(f"{cat.value}: threshold {cfg.threshold} outside (0, 1)")
        lo, hi = cfg.neuron_range
        if not (1 <= lo <= hi <= NUM_NEURONS):
            raise ConfigError(f"{cat.value}: neuron range {cfg.neuron_range} out of bounds")
        covered.extend(range(lo, hi + 1))
        if not cfg.cluster_based:
            unknown = cfg.target_phonemes - INVENTORY
            if unknown:
                raise ConfigError(f"{cat.value}: unknown phonemes {sorted(unknown)}")
            if not cfg.target_phonemes:
                raise ConfigError(f"{cat.value}: empty target phoneme set")
        dlo, dhi = cfg.typical_density
        if not (0.0 <= dlo <= dhi <= 1.0):
            raise ConfigError(f"{cat.value}: typical density band {cfg.typical_density} invalid")
    if sorted(covered) != list(range(1, NUM_NEURONS + 1)):
        raise ConfigError("neuron ranges must partition 1..384 exactly")


def parse_categories(document: dict) -> CategoryMap:
    if not isinstance(document, dict) or not isinstance(document.get("categories"), list):
        raise ConfigError("category config must be an object with a 'categories' array")
    if int(document.get("num_neurons", NUM_NEURONS)) != NUM_NEURONS:
        raise ConfigError("num_neurons must be 384")
    configs: CategoryMap = {}
    for entry in document["categories"]:
        cfg = _parse_config(entry)
        if cfg.category in configs:
            raise ConfigError(f"duplicate category {cfg.category.value}")
        configs[cfg.category] = cfg
    validate_categories(configs)
    return {cat: configs[cat] for cat in CATEGORY_ORDER}


@lru_cache(maxsize=1)
def _default_document() -> str:
    return resources.files("phonocoach.data").joinpath("categories.json").read_text("utf-8")


def load_categories(path: str | None = None) -> CategoryMap:
    """Load category configs from a JSON file, or the bundled defaults."""
    if path is None:
        text = _default_document()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read category config {path}: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"category config is not valid JSON: {exc}") from exc
    return parse_categories(document)


def issues_for_category(
    issues: Iterable[PhonemeIssue],
    config: CategoryConfig,
    cluster_positions: frozenset[int],
) -> list[PhonemeIssue]:
    """Flagged issues whose phoneme belongs to the category."""
    return [i for i in issues if config.matches(i.symbol, i.position, cluster_positions)]


def sort_flagged(
    scored: Mapping[DisorderCategory, float], configs: CategoryMap
) -> list[tuple[DisorderCategory, float]]:
    """Categories at or above their threshold, by confidence desc, enum order on ties."""
    hits = [(c, v) for c, v in scored.items() if v >= configs[c].threshold]
    hits.sort(key=lambda cv: (-cv[1], ENUM_RANK[cv[0]]))
    return hits
