"""Generator backends for POST /generate."""

from __future__ import annotations

import hashlib
import random
from typing import Protocol

from .errors import ConfigError

# Canned continuations for the stub. The engine filters whatever comes
# back, so the pool just needs plausible practice sentences across the
# sound families the prompts ask about.
CANNED_SENTENCES = (
    "the red rabbit ran around the rocky road",
    "rita carries a bright orange umbrella",
    "sunny seas send silver surf ashore",
    "sam sips his soup using a small spoon",
    "think things through thirty times",
    "both brothers thank their father",
    "lucy lifts the yellow lantern slowly",
    "a little lamb follows lily down the lane",
    "strong winds sweep the street at sunset",
    "grassy slopes stretch past the old spring",
    "we eat a meal near the open sea",
    "old oak doors open onto a wide yard",
    "the runner rests near the river rail",
    "seven silly seals sing by the shore",
    "they bathe in the warm smooth water",
    "low lamps light the long library hall",
    "crisp frost clings to the clean glass",
    "everyone saw the yellow autumn leaves",
)


class GeneratorModel(Protocol):
    def generate(self, prompt: str, temperature: float, top_k: int, max_tokens: int) -> str: ...


class StubGenerator:
    """Prompt-keyed canned sampler.

    The pool is ranked deterministically per prompt (a stand-in for the
    model's output distribution). Temperature zero is greedy: the top of
    the ranking, every time. Otherwise a seeded draw over the top_k
    prefix, so identical requests still get identical answers.
    """

    def _ranking(self, prompt: str) -> list[str]:
        key = hashlib.sha256(prompt.encode("utf-8")).digest()
        return sorted(
            CANNED_SENTENCES,
            key=lambda s: hashlib.sha256(key + s.encode("utf-8")).digest(),
        )

    def generate(self, prompt: str, temperature: float, top_k: int, max_tokens: int) -> str:
        if max_tokens <= 0:
            return ""
        ranking = self._ranking(prompt)
        if temperature == 0:
            text = ranking[0]
        else:
            seed_src = f"{prompt}|{temperature!r}|{top_k}"
            rng = random.Random(hashlib.sha256(seed_src.encode("utf-8")).hexdigest())
            text = rng.choice(ranking[: max(1, top_k)])
        words = text.split()
        return " ".join(words[:max_tokens]).strip()


def load_generator(model_id: str) -> GeneratorModel:
    if model_id == "stub":
        return StubGenerator()
    raise ConfigError(
        f"generator model {model_id!r} is not bundled; only 'stub' ships with "
        "this build (real generative models need the full adapter install)"
    )
