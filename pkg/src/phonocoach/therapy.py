"""Practice-sentence generation, scoring, and selection.

Candidates come from a shipped template corpus (seeded sampling) and
optionally from a generative bridge; every candidate passes a quality filter,
gets scored on relevance, difficulty alignment, and personalization, and the
weighted argmax becomes the exercise.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Any, Iterable, Protocol, Sequence

from .analysis import AnalysisResult, Severity
from .categories import CategoryConfig, CategoryMap, DisorderCategory
from .errors import BridgeError, CandidatesExhaustedError, ConfigError, ValidationError
from .g2p import graphemes_to_phonemes, words_of
from .jsonutil import content_id
from .phonemes import INVENTORY_ORDER, cluster_positions, is_consonant, is_vowel

WORD_CAP = 20  # length normalization cap; also the filter's upper word count
EASY_WORD_CAP = 8
MIN_WORDS = 3
MIN_TARGET_OCCURRENCES = 2
WEIGHT_TOL = 1e-9


class DifficultyLevel(str, Enum):
    easy = "easy"
    medium = "medium"
    hard = "hard"


class Origin(str, Enum):
    template = "template"
    generated = "generated"


@dataclass(frozen=True)
class DifficultyParams:
    level: DifficultyLevel
    mu: float
    delta: float
    temperature: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.mu <= 1.0:
            raise ConfigError(f"{self.level.value}: mu {self.mu} outside [0, 1]")
        if not self.delta > 0:
            raise ConfigError(f"{self.level.value}: delta must be positive")
        if not self.temperature > 0:
            raise ConfigError(f"{self.level.value}: temperature must be positive")


@dataclass(frozen=True)
class TherapyWeights:
    omega: tuple[float, float, float] = (0.5, 0.3, 0.2)
    eta: float = 0.5
    lambda_rel: dict[DisorderCategory, float] = None  # type: ignore[assignment]
    alpha_cx: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    gamma_pers: tuple[float, float] = (1.0, 0.5)
    kappa: int = 40

    def __post_init__(self) -> None:
        if self.lambda_rel is None:
            object.__setattr__(self, "lambda_rel", {c: 1.0 for c in DisorderCategory})
        if len(self.omega) != 3 or abs(sum(self.omega) - 1.0) > WEIGHT_TOL:
            raise ConfigError("omega must have three entries summing to 1")
        if min(self.omega) < 0 or self.eta < 0 or min(self.alpha_cx) < 0:
            raise ConfigError("therapy weights must be non-negative")
        if min(self.gamma_pers) < 0 or len(self.gamma_pers) != 2:
            raise ConfigError("gamma_pers must be two non-negative reals")
        if len(self.alpha_cx) != 4:
            raise ConfigError("alpha_cx must have four entries")
        if self.kappa < 1:
            raise ConfigError("kappa must be a positive integer")
        if set(self.lambda_rel) != set(DisorderCategory) or min(self.lambda_rel.values()) < 0:
            raise ConfigError("lambda_rel must map every category to a non-negative real")


@dataclass(frozen=True)
class TherapyConfig:
    weights: TherapyWeights
    difficulty: dict[DifficultyLevel, DifficultyParams]
    prompts: dict[str, dict[str, str]]
    descriptions: dict[DisorderCategory, str]
    severity_map: dict[Severity, DifficultyLevel]
    candidate_count: int = 16
    max_tokens: int = 48


@dataclass(frozen=True)
class TherapyHistory:
    """Past exercise sentences split by outcome, for personalization."""

    successes: tuple[str, ...] = ()
    failures: tuple[str, ...] = ()


EMPTY_HISTORY = TherapyHistory()


@dataclass(frozen=True)
class Candidate:
    sentence: str
    origin: Origin = Origin.template


@dataclass(frozen=True)
class Exercise:
    sentence: str
    category: DisorderCategory
    difficulty: DifficultyLevel
    target_phonemes: frozenset[str]
    relevance: float
    difficulty_alignment: float
    personalization: float
    total: float
    origin: Origin
    description: str = ""
    exercise_id: str = ""

    def to_document(self) -> dict[str, Any]:
        return {
            "exercise_id": self.exercise_id,
            "sentence": self.sentence,
            "category": self.category.value,
            "difficulty": self.difficulty.value,
            "target_phonemes": sorted(self.target_phonemes),
            "score_breakdown": {
                "relevance": self.relevance,
                "difficulty_alignment": self.difficulty_alignment,
                "personalization": self.personalization,
                "total": self.total,
            },
            "origin": self.origin.value,
            "description": self.description,
        }


def exercise_from_document(doc: dict[str, Any]) -> Exercise:
    sb = doc["score_breakdown"]
    return Exercise(
        sentence=doc["sentence"],
        category=DisorderCategory(doc["category"]),
        difficulty=DifficultyLevel(doc["difficulty"]),
        target_phonemes=frozenset(doc["target_phonemes"]),
        relevance=float(sb["relevance"]),
        difficulty_alignment=float(sb["difficulty_alignment"]),
        personalization=float(sb["personalization"]),
        total=float(sb["total"]),
        origin=Origin(doc.get("origin", "template")),
        description=doc.get("description", ""),
        exercise_id=doc.get("exercise_id", ""),
    )


class GeneratorBackend(Protocol):
    def generate(self, prompt: str, temperature: float, top_k: int, max_tokens: int) -> str:
        """Return generated text for the prompt; raise BridgeError on failure."""


# --- configuration -----------------------------------------------------------


def _parse_therapy(document: dict) -> TherapyConfig:
    try:
        w = document["weights"]
        weights = TherapyWeights(
            omega=tuple(float(x) for x in w["omega"]),  # type: ignore[arg-type]
            eta=float(w["eta"]),
            lambda_rel={DisorderCategory(k): float(v) for k, v in w["lambda_rel"].items()},
            alpha_cx=tuple(float(x) for x in w["alpha_cx"]),  # type: ignore[arg-type]
            gamma_pers=tuple(float(x) for x in w["gamma_pers"]),  # type: ignore[arg-type]
            kappa=int(w["kappa"]),
        )
        difficulty = {
            DifficultyLevel(name): DifficultyParams(
                DifficultyLevel(name), float(d["mu"]), float(d["delta"]), float(d["temperature"])
            )
            for name, d in document["difficulty"].items()
        }
        prompts = document["prompts"]
        descriptions = {
            DisorderCategory(k): str(v) for k, v in document["descriptions"].items()
        }
        severity_map = {
            Severity(k): DifficultyLevel(v)
            for k, v in document["severity_difficulty"].items()
        }
        candidate_count = int(document.get("candidate_count", 16))
        max_tokens = int(document.get("max_tokens", 48))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed therapy config: {exc}") from exc
    if set(difficulty) != set(DifficultyLevel):
        raise ConfigError("difficulty table must define easy, medium, and hard")
    for table in ("prefix", "instruction"):
        if set(prompts.get(table, {})) != {c.value for c in DisorderCategory}:
            raise ConfigError(f"prompt table {table!r} must cover all six categories")
    if set(prompts.get("modifier", {})) != {d.value for d in DifficultyLevel}:
        raise ConfigError("prompt table 'modifier' must cover all three levels")
    if set(descriptions) != set(DisorderCategory):
        raise ConfigError("descriptions must cover all six categories")
    if set(severity_map) != set(Severity):
        raise ConfigError("severity_difficulty must cover all three severities")
    if candidate_count < 1:
        raise ConfigError("candidate_count must be positive")
    return TherapyConfig(
        weights, difficulty, prompts, descriptions, severity_map, candidate_count, max_tokens
    )


@lru_cache(maxsize=1)
def _default_therapy_text() -> str:
    return resources.files("phonocoach.data").joinpath("therapy.json").read_text("utf-8")


def load_therapy_config(path: str | None = None) -> TherapyConfig:
    if path is None:
        text = _default_therapy_text()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read therapy config {path}: {exc}") from exc
    try:
        return _parse_therapy(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"therapy config is not valid JSON: {exc}") from exc


# --- sentence features -------------------------------------------------------


@lru_cache(maxsize=4096)
def sentence_phonemes(sentence: str) -> tuple[str, ...]:
    return graphemes_to_phonemes(sentence).phonemes


def category_positions(seq: Sequence[str], config: CategoryConfig) -> list[int]:
    """Positions in the flat phoneme sequence that the category claims."""
    clusters = frozenset(cluster_positions(seq))
    return [i for i, sym in enumerate(seq) if config.matches(sym, i, clusters)]


def relevance(seq: Sequence[str], config: CategoryConfig, weights: TherapyWeights) -> float:
    """Target density weighted up when targets sit in consonant contexts."""
    if not seq:
        return 0.0
    clusters = frozenset(cluster_positions(seq))
    total = 0.0
    for i, sym in enumerate(seq):
        if not config.matches(sym, i, clusters):
            continue
        left = is_consonant(seq[i - 1]) if i > 0 else False
        right = is_consonant(seq[i + 1]) if i + 1 < len(seq) else False
        q = 1.0 if (left and right) else 0.5 if (left or right) else 0.0
        total += 1.0 + weights.eta * q
    return weights.lambda_rel[config.category] * total / len(seq)


def _cluster_runs(phones: Sequence[str]) -> int:
    runs = run = 0
    for p in phones:
        if is_consonant(p):
            run += 1
        else:
            if run >= 2:
                runs += 1
            run = 0
    if run >= 2:
        runs += 1
    return runs


def sentence_complexity(sentence: str, weights: TherapyWeights) -> float:
    """Four normalized components mixed by alpha_cx; 0 for an empty sentence."""
    words = words_of(sentence)
    if not words:
        return 0.0
    length_norm = min(len(words) / WORD_CAP, 1.0)
    vocab_ratio = len(set(words)) / len(words)
    per_word = [graphemes_to_phonemes(w).phonemes for w in words]
    cluster_norm = min(sum(_cluster_runs(p) for p in per_word) / len(words), 1.0)
    syllables = [max(1, sum(1 for s in p if is_vowel(s))) for p in per_word]
    mean = sum(syllables) / len(syllables)
    variance = sum((x - mean) ** 2 for x in syllables) / len(syllables)
    syllable_norm = min(variance, 1.0)
    a1, a2, a3, a4 = weights.alpha_cx
    return a1 * length_norm + a2 * vocab_ratio + a3 * cluster_norm + a4 * syllable_norm


def difficulty_alignment(complexity: float, params: DifficultyParams) -> float:
    return max(0.0, 1.0 - abs(complexity - params.mu) / params.delta)


@lru_cache(maxsize=4096)
def phoneme_bag(sentence: str) -> tuple[int, ...]:
    counts = Counter(sentence_phonemes(sentence))
    return tuple(counts.get(p, 0) for p in INVENTORY_ORDER)


def _bag_cosine(a: tuple[int, ...], b: tuple[int, ...]) -> float:
    num = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(x * x for x in b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return num / (na * nb)


def _max_similarity(sentence: str, others: Iterable[str]) -> float:
    bag = phoneme_bag(sentence)
    best = 0.0
    for other in others:
        best = max(best, _bag_cosine(bag, phoneme_bag(other)))
    return best


def personalization(sentence: str, history: TherapyHistory, weights: TherapyWeights) -> float:
    g1, g2 = weights.gamma_pers
    sim_success = _max_similarity(sentence, history.successes)
    sim_failure = _max_similarity(sentence, history.failures)
    return g1 * sim_success * (1.0 - g2 * sim_failure)


# --- generation --------------------------------------------------------------


def build_prompt(category: DisorderCategory, difficulty: DifficultyLevel, config: TherapyConfig) -> str:
    prefix = config.prompts["prefix"][category.value]
    modifier = config.prompts["modifier"][difficulty.value]
    instruction = config.prompts["instruction"][category.value]
    return f"{prefix} {modifier} {instruction}"


Corpus = dict[tuple[DisorderCategory, DifficultyLevel], tuple[str, ...]]

MIN_CORPUS_ROWS = 20


def parse_corpus(text: str) -> Corpus:
    """Parse the tab-separated template file: category, difficulty, sentence."""
    rows: dict[tuple[DisorderCategory, DifficultyLevel], list[str]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ConfigError(f"corpus line {lineno}: expected 3 tab-separated fields")
        try:
            key = (DisorderCategory(parts[0]), DifficultyLevel(parts[1]))
        except ValueError as exc:
            raise ConfigError(f"corpus line {lineno}: {exc}") from exc
        rows.setdefault(key, []).append(parts[2])
    for cat in DisorderCategory:
        for level in DifficultyLevel:
            if len(rows.get((cat, level), [])) < MIN_CORPUS_ROWS:
                raise ConfigError(
                    f"corpus needs at least {MIN_CORPUS_ROWS} sentences for "
                    f"({cat.value}, {level.value})"
                )
    return {key: tuple(sentences) for key, sentences in rows.items()}


@lru_cache(maxsize=1)
def _default_corpus() -> Corpus:
    text = resources.files("phonocoach.data").joinpath("sentences.tsv").read_text("utf-8")
    return parse_corpus(text)


def load_corpus(path: str | None = None) -> Corpus:
    if path is None:
        return _default_corpus()
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_corpus(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read corpus {path}: {exc}") from exc


def derived_rng(*parts: object) -> random.Random:
    """A Random keyed by the parts, independent of the process hash seed."""
    key = "|".join(str(p) for p in parts).encode("utf-8")
    return random.Random(int.from_bytes(hashlib.sha256(key).digest()[:8], "big"))


def _clean_generated(text: str) -> str:
    for line in text.splitlines():
        line = line.strip()
        if line:
            return line
    return ""


def generate_candidates(
    category: DisorderCategory,
    difficulty: DifficultyLevel,
    count: int,
    corpus: Corpus,
    *,
    tconfig: TherapyConfig,
    configs: CategoryMap,
    seed: int = 0,
    scope: str = "",
    backend: GeneratorBackend | None = None,
) -> tuple[list[Candidate], list[str]]:
    """Up to count distinct candidates plus any degradation warnings.

    Bridge output that fails the quality filter is replaced by template
    sentences; a dead bridge degrades to templates with a warning. scope keys
    the sampling so different analyses draw different templates.
    """
    if count < 0:
        raise ValidationError("candidate count cannot be negative")
    if count == 0:
        return [], []
    warnings: list[str] = []
    out: list[Candidate] = []
    seen: set[str] = set()
    if backend is not None:
        prompt = build_prompt(category, difficulty, tconfig)
        params = tconfig.difficulty[difficulty]
        for _ in range(count):
            try:
                text = _clean_generated(
                    backend.generate(prompt, params.temperature, tconfig.weights.kappa, tconfig.max_tokens)
                )
            except BridgeError as exc:
                warnings.append(f"generator bridge unavailable, using templates: {exc}")
                break
            if not text or text in seen:
                continue
            if quality_filter([text], configs[category], difficulty):
                seen.add(text)
                out.append(Candidate(text, Origin.generated))
    rows = list(corpus[(category, difficulty)])
    rng = derived_rng(seed, scope, category.value, difficulty.value, "candidates")
    rng.shuffle(rows)
    for sentence in rows:
        if len(out) >= count:
            break
        if sentence not in seen:
            seen.add(sentence)
            out.append(Candidate(sentence, Origin.template))
    return out[:count], warnings


# --- filtering and selection -------------------------------------------------


def _speakable(word: str) -> bool:
    # ASCII letters only, and at least one vowel letter so the word can carry
    # a syllable; bars raw consonant strings that str.isalpha would accept.
    return word.isascii() and word.isalpha() and any(ch in "AEIOUY" for ch in word)


def quality_filter(
    sentences: Iterable[str],
    config: CategoryConfig,
    difficulty: DifficultyLevel,
    already_selected: frozenset[str] = frozenset(),
) -> list[str]:
    """Surviving sentences, order kept, batch-deduplicated.

    Rules: at least 2 target-phoneme occurrences; 3..20 words (easy capped at
    8); every word alphabetic with a vowel letter; nothing already selected
    this session.
    """
    cap = EASY_WORD_CAP if difficulty == DifficultyLevel.easy else WORD_CAP
    kept: list[str] = []
    seen: set[str] = set()
    for sentence in sentences:
        if sentence in seen or sentence in already_selected:
            continue
        seen.add(sentence)
        words = words_of(sentence)
        if not MIN_WORDS <= len(words) <= cap:
            continue
        if not all(_speakable(w) for w in words):
            continue
        seq = sentence_phonemes(sentence)
        if len(category_positions(seq, config)) < MIN_TARGET_OCCURRENCES:
            continue
        kept.append(sentence)
    return kept


def score_candidate(
    sentence: str,
    config: CategoryConfig,
    params: DifficultyParams,
    history: TherapyHistory,
    weights: TherapyWeights,
) -> tuple[float, float, float, float]:
    r = relevance(sentence_phonemes(sentence), config, weights)
    d = difficulty_alignment(sentence_complexity(sentence, weights), params)
    p = personalization(sentence, history, weights)
    w1, w2, w3 = weights.omega
    return r, d, p, w1 * r + w2 * d + w3 * p


def select_exercise(
    category: DisorderCategory,
    difficulty: DifficultyLevel,
    history: TherapyHistory,
    candidates: Sequence[Candidate],
    *,
    configs: CategoryMap,
    tconfig: TherapyConfig,
    already_selected: frozenset[str] = frozenset(),
) -> Exercise:
    """Quality-filter the candidates and take the weighted-score argmax.

    Ties go to the lexicographically smallest sentence.
    """
    config = configs[category]
    surviving = set(
        quality_filter((c.sentence for c in candidates), config, difficulty, already_selected)
    )
    pool: list[Candidate] = []
    seen: set[str] = set()
    for cand in candidates:
        if cand.sentence in surviving and cand.sentence not in seen:
            seen.add(cand.sentence)
            pool.append(cand)
    if not pool:
        raise CandidatesExhaustedError(
            f"no candidate for ({category.value}, {difficulty.value}) survived the quality filter"
        )
    params = tconfig.difficulty[difficulty]
    best: tuple[float, str] | None = None
    best_ex: Exercise | None = None
    for cand in pool:
        r, d, p, total = score_candidate(cand.sentence, config, params, history, tconfig.weights)
        key = (-total, cand.sentence)
        if best is None or key < best:
            seq = sentence_phonemes(cand.sentence)
            targets = frozenset(seq[i] for i in category_positions(seq, config))
            best = key
            best_ex = Exercise(
                sentence=cand.sentence,
                category=category,
                difficulty=difficulty,
                target_phonemes=targets,
                relevance=r,
                difficulty_alignment=d,
                personalization=p,
                total=total,
                origin=cand.origin,
                description=tconfig.descriptions[category],
            )
    assert best_ex is not None
    return best_ex


def plan_exercises(
    analysis: AnalysisResult,
    *,
    configs: CategoryMap,
    tconfig: TherapyConfig,
    corpus: Corpus,
    history: TherapyHistory = EMPTY_HISTORY,
    difficulty: DifficultyLevel | None = None,
    count: int | None = None,
    seed: int = 0,
    backend: GeneratorBackend | None = None,
) -> tuple[list[Exercise], list[str]]:
    """One exercise per flagged category (up to count), flag order.

    Difficulty defaults to the severity mapping; sentences already chosen in
    this plan are excluded from later categories.
    """
    level = difficulty or tconfig.severity_map[analysis.severity]
    flagged = analysis.flagged_categories
    if count is not None:
        if count < 0:
            raise ValidationError("count cannot be negative")
        flagged = flagged[:count]
    exercises: list[Exercise] = []
    warnings: list[str] = []
    chosen: set[str] = set()
    for cat in flagged:
        cands, cand_warnings = generate_candidates(
            cat,
            level,
            tconfig.candidate_count,
            corpus,
            tconfig=tconfig,
            configs=configs,
            seed=seed,
            scope=analysis.analysis_id,
            backend=backend,
        )
        warnings.extend(cand_warnings)
        ex = select_exercise(
            cat,
            level,
            history,
            cands,
            configs=configs,
            tconfig=tconfig,
            already_selected=frozenset(chosen),
        )
        ex = replace(
            ex,
            exercise_id=content_id(
                "ex",
                {
                    "analysis": analysis.analysis_id,
                    "category": cat.value,
                    "difficulty": level.value,
                    "sentence": ex.sentence,
                },
            ),
        )
        chosen.add(ex.sentence)
        exercises.append(ex)
    return exercises, warnings
