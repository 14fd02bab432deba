"""Reference membrane patterns and the pattern-mismatch score.

The bank holds one (64 x steps) membrane matrix per category, produced by
simulating a canonical pure stimulus (current 1.0 on that category's neurons
alone). The mismatch score is 1 minus the mean per-neuron cosine similarity
between an observed membrane trace and the stored pattern; rows that are all
zero on either side contribute similarity 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .categories import CATEGORY_ORDER, NUM_NEURONS, CategoryMap, DisorderCategory
from .errors import ConfigError, ValidationError
from .lif import DEFAULT_PARAMS, LifParams, simulate_lif

BANK_VERSION = 1
DEFAULT_BANK_SEED = 0


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of two vectors with the zero-vector-means-0 convention.

    Reductions use an explicit elementwise product + sum so the result does
    not depend on the BLAS build.
    """
    num = float(np.sum(a * b))
    na = math.sqrt(float(np.sum(a * a)))
    nb = math.sqrt(float(np.sum(b * b)))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return num / (na * nb)


@dataclass(frozen=True)
class ReferencePatternBank:
    patterns: dict[DisorderCategory, np.ndarray]
    params: LifParams
    seed: int = DEFAULT_BANK_SEED
    version: int = BANK_VERSION

    def pattern(self, category: DisorderCategory) -> np.ndarray:
        try:
            return self.patterns[category]
        except KeyError:
            raise ConfigError(f"bank has no pattern for {category.value}") from None


def generate_bank(
    configs: CategoryMap, params: LifParams = DEFAULT_PARAMS, seed: int = DEFAULT_BANK_SEED
) -> ReferencePatternBank:
    """Simulate each category's canonical pure stimulus and keep its rows."""
    patterns: dict[DisorderCategory, np.ndarray] = {}
    for cat in CATEGORY_ORDER:
        cfg = configs[cat]
        currents = np.zeros((NUM_NEURONS, params.steps), dtype=np.float64)
        currents[cfg.neuron_slice, :] = 1.0
        _, pots = simulate_lif(currents, params)
        patterns[cat] = np.ascontiguousarray(pots[cfg.neuron_slice])
    return ReferencePatternBank(patterns, params, seed)


def pattern_match_score(
    potentials: np.ndarray, bank: ReferencePatternBank, category: DisorderCategory, configs: CategoryMap
) -> float:
    """1 - mean cosine similarity between observed rows and the stored pattern."""
    cfg = configs[category]
    rows = potentials[cfg.neuron_slice]
    ref = bank.pattern(category)
    if rows.shape != ref.shape:
        raise ValidationError(
            f"trace rows {rows.shape} do not match reference {ref.shape} for {category.value}"
        )
    total = 0.0
    for n in range(rows.shape[0]):
        total += cosine_similarity(rows[n], ref[n])
    return 1.0 - total / rows.shape[0]


def save_bank(bank: ReferencePatternBank, path: str) -> None:
    doc = {
        "version": bank.version,
        "seed": bank.seed,
        "params": {
            "decay": bank.params.decay,
            "threshold": bank.params.threshold,
            "reset": bank.params.reset,
            "steps": bank.params.steps,
        },
        "patterns": {cat.value: bank.patterns[cat].tolist() for cat in CATEGORY_ORDER},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"), sort_keys=True)
        fh.write("\n")


def load_bank(path: str) -> ReferencePatternBank:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot load pattern bank {path}: {exc}") from exc
    if doc.get("version") != BANK_VERSION:
        raise ConfigError(f"unsupported bank version {doc.get('version')!r}")
    try:
        params = LifParams(**doc["params"])
        patterns = {
            DisorderCategory(name): np.asarray(mat, dtype=np.float64)
            for name, mat in doc["patterns"].items()
        }
        seed = int(doc["seed"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed pattern bank {path}: {exc}") from exc
    if set(patterns) != set(DisorderCategory):
        raise ConfigError("pattern bank must cover all six categories")
    for cat, mat in patterns.items():
        if mat.shape != (64, params.steps):
            raise ConfigError(f"pattern for {cat.value} has shape {mat.shape}")
    return ReferencePatternBank(patterns, params, seed)
