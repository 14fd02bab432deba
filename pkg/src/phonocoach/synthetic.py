"""Synthetic recognizer documents with known, recoverable deficits.

Every occurrence of a targeted category's phonemes carries confidence
1 - deficit; every other phoneme stays at or above the issue threshold, so
the emitted document contains exactly the planted issues.

Layout rule: consonant units are always separated by vowels, so the only
consonant runs are the planted cluster pairs. When the vowel category itself
is targeted, the separators are the planted vowels (they must carry their
deficit anyway); otherwise they are neutral vowels no category claims.
Planted symbols land in a single category each: ER is left out of RSound
units because it belongs to the vowel set too, and cluster pairs avoid
consonants owned by the R/S/TH/L categories.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .categories import CATEGORY_ORDER, DisorderCategory
from .errors import ValidationError
from .ingest import DEFAULT_ISSUE_THRESHOLD

# symbols planted for a target; each belongs to that category alone
UNIT_PHONEMES: dict[DisorderCategory, tuple[str, ...]] = {
    DisorderCategory.RSound: ("R",),
    DisorderCategory.SSound: ("S", "Z"),
    DisorderCategory.ThSound: ("TH", "DH"),
    DisorderCategory.LSound: ("L",),
    DisorderCategory.VowelDistortion: ("AA", "IY", "UW", "EY", "OW"),
}
CLUSTER_PAIRS: tuple[tuple[str, str], ...] = (("P", "T"), ("K", "T"), ("B", "D"), ("F", "T"))
NEUTRAL_VOWELS: tuple[str, ...] = ("AH", "IH", "EH", "AO", "UH")
NEUTRAL_CONSONANTS: tuple[str, ...] = ("M", "N", "NG", "W", "HH")


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for one synthetic utterance."""

    targets: dict[DisorderCategory, float] = field(default_factory=dict)
    phoneme_count: int = 20
    seed: int = 0

    def __post_init__(self) -> None:
        for cat, deficit in self.targets.items():
            if not 0.0 < deficit <= 1.0:
                raise ValidationError(f"deficit for {cat.value} must lie in (0, 1], got {deficit}")
        if self.phoneme_count < 1:
            raise ValidationError("phoneme_count must be positive")
        needed = sum(
            3 if cat is DisorderCategory.ConsonantCluster else 2 for cat in self.targets
        )
        if self.phoneme_count < needed:
            raise ValidationError(
                f"phoneme_count {self.phoneme_count} cannot fit one unit per target (need {needed})"
            )


def generate_synthetic(spec: SyntheticSpec, issue_threshold: float = DEFAULT_ISSUE_THRESHOLD) -> dict:
    """Build a recognizer document for the spec. Same spec, same bytes."""
    rng = random.Random(spec.seed)
    planted_conf: dict[str, float] = {}
    vowel_target = DisorderCategory.VowelDistortion
    vowel_deficit = spec.targets.get(vowel_target)
    consonant_cats = [
        c for c in CATEGORY_ORDER if c in spec.targets and c is not vowel_target
    ]

    def pick(options: tuple[str, ...]) -> str:
        return options[rng.randrange(len(options))]

    def separator() -> str:
        if vowel_deficit is not None:
            symbol = pick(UNIT_PHONEMES[vowel_target])
            planted_conf[symbol] = round(1.0 - vowel_deficit, 6)
            return symbol
        return pick(NEUTRAL_VOWELS)

    def unit_for(cat: DisorderCategory) -> list[str]:
        deficit = spec.targets[cat]
        if cat is DisorderCategory.ConsonantCluster:
            unit = list(CLUSTER_PAIRS[rng.randrange(len(CLUSTER_PAIRS))])
        else:
            unit = [pick(UNIT_PHONEMES[cat])]
        for symbol in unit:
            planted_conf[symbol] = round(1.0 - deficit, 6)
        return unit

    symbols: list[str] = []
    cursor = 0
    while len(symbols) < spec.phoneme_count:
        if consonant_cats:
            block = [separator()] + unit_for(consonant_cats[cursor % len(consonant_cats)])
        elif vowel_deficit is not None:
            block = [pick(NEUTRAL_CONSONANTS), separator()]
        else:
            block = [pick(NEUTRAL_VOWELS)]
        if len(symbols) + len(block) > spec.phoneme_count:
            block = [separator()]  # pad the tail without splitting a unit
        else:
            cursor += 1
        symbols.extend(block)

    phonemes = []
    for symbol in symbols:
        conf = planted_conf.get(symbol)
        if conf is None:
            conf = round(rng.uniform(issue_threshold, 1.0), 6)
        phonemes.append({"symbol": symbol, "confidence": conf})
    return {"transcript": " ".join(symbols), "phonemes": phonemes}
