"""REST service: analyze speech, plan therapy, assemble feedback.

Every response body is the versioned envelope {"version": 1, "data": ...,
"warnings": [...]}; error payloads carry {"error", "message"} under data.
Envelope warnings signal service-level degradation (e.g. a generator bridge
falling back to templates); analysis-level warnings stay inside the analysis
document itself.

Error mapping: malformed body 400, unknown id 404, invalid values or an
unusable-but-well-formed request 422, bridge failure 502, storage failure 500.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from typing import Any, Iterable

import httpx
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .analysis import AnalysisResult, analyze
from .categories import CategoryMap, DisorderCategory, load_categories
from .errors import (
    BridgeError,
    CandidatesExhaustedError,
    NotFoundError,
    PhonoCoachError,
    SchemaError,
    StoreError,
    ValidationError,
)
from .feedback import (
    FeedbackAssets,
    PerformanceRecord,
    generate_feedback,
    load_feedback_assets,
    single_accuracy,
)
from .ingest import DEFAULT_ISSUE_THRESHOLD, Source, parse_recognizer_output
from .lif import BACKEND, LifParams
from .patterns import ReferencePatternBank, generate_bank
from .store import SessionStore
from .therapy import (
    Corpus,
    DifficultyLevel,
    GeneratorBackend,
    TherapyConfig,
    load_corpus,
    load_therapy_config,
    plan_exercises,
)
from .validation import validate_document

DEFAULT_PATIENT = "anonymous"
_ASSET_NAME = re.compile(r"^[A-Za-z0-9_]+\.svg$")


@dataclass(frozen=True)
class ApiConfig:
    host: str = "127.0.0.1"
    port: int = 8077
    store_path: str = "phonocoach-store.jsonl"
    recognizer_url: str | None = None
    generator_url: str | None = None
    categories_path: str | None = None
    therapy_path: str | None = None
    corpus_path: str | None = None
    guidance_path: str | None = None
    tips_path: str | None = None
    visual_path: str | None = None
    seed: int = 0
    issue_threshold: float = DEFAULT_ISSUE_THRESHOLD
    bridge_timeout_s: float = 10.0
    cors_origins: tuple[str, ...] = ("*",)

    @classmethod
    def from_file(cls, path: str) -> "ApiConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ValidationError(f"cannot read config {path!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SchemaError(f"config {path!r} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise SchemaError(f"config {path!r} must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise ValidationError(f"config {path!r} has unknown keys: {sorted(unknown)}")
        if "cors_origins" in raw:
            raw["cors_origins"] = tuple(raw["cors_origins"])
        return cls(**raw)


class HttpGeneratorBackend:
    """Client for the sentence-generator bridge protocol."""

    def __init__(self, base_url: str, timeout_s: float = 10.0):
        self._client = httpx.Client(base_url=base_url, timeout=timeout_s)

    def generate(self, prompt: str, temperature: float, top_k: int, max_tokens: int) -> str:
        payload = {
            "prompt": prompt,
            "temperature": temperature,
            "top_k": top_k,
            "max_tokens": max_tokens,
        }
        try:
            resp = self._client.post("/generate", json=payload)
        except httpx.HTTPError as exc:
            raise BridgeError(f"generator bridge unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise BridgeError(f"generator bridge returned HTTP {resp.status_code}")
        try:
            doc = resp.json()
            validate_document(doc, "generator_bridge", "$defs/response")
        except (ValueError, SchemaError) as exc:
            raise BridgeError(f"generator bridge returned a malformed body: {exc}") from exc
        return doc["text"]


def fetch_recognition(base_url: str, audio: bytes, timeout_s: float = 10.0) -> dict[str, Any]:
    """POST audio to the recognizer bridge, return its validated document."""
    try:
        resp = httpx.post(
            base_url.rstrip("/") + "/recognize",
            content=audio,
            headers={"content-type": "audio/wav"},
            timeout=timeout_s,
        )
    except httpx.HTTPError as exc:
        raise BridgeError(f"recognizer bridge unreachable: {exc}") from exc
    if resp.status_code != 200:
        raise BridgeError(f"recognizer bridge returned HTTP {resp.status_code}")
    try:
        doc = resp.json()
        validate_document(doc, "recognizer")
    except (ValueError, SchemaError) as exc:
        raise BridgeError(f"recognizer bridge returned a malformed body: {exc}") from exc
    return doc


@dataclass
class Runtime:
    """Everything a handler needs, loaded once at startup."""

    config: ApiConfig
    categories: CategoryMap
    therapy: TherapyConfig
    corpus: Corpus
    assets: FeedbackAssets
    bank: ReferencePatternBank
    store: SessionStore
    generator: GeneratorBackend | None = None


def build_runtime(config: ApiConfig) -> Runtime:
    """Load configs, corpus, assets, and the store; fail fast on any of them."""
    categories = load_categories(config.categories_path)
    therapy = load_therapy_config(config.therapy_path)
    corpus = load_corpus(config.corpus_path)
    assets = load_feedback_assets(config.guidance_path, config.tips_path, config.visual_path)
    bank = generate_bank(categories, LifParams())
    store = SessionStore(config.store_path)
    generator = None
    if config.generator_url:
        generator = HttpGeneratorBackend(config.generator_url, config.bridge_timeout_s)
    return Runtime(config, categories, therapy, corpus, assets, bank, store, generator)


def envelope(data: Any, warnings: Iterable[str] = ()) -> dict[str, Any]:
    return {"version": 1, "data": data, "warnings": list(warnings)}


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(envelope({"error": code, "message": message}), status_code=status)


_ERROR_MAP: tuple[tuple[type[PhonoCoachError], int, str], ...] = (
    (SchemaError, 400, "malformed-document"),
    (NotFoundError, 404, "not-found"),
    (CandidatesExhaustedError, 422, "candidates-exhausted"),
    (ValidationError, 422, "invalid-value"),
    (BridgeError, 502, "bridge-failure"),
    (StoreError, 500, "storage-failure"),
)


def _install_error_handlers(app: FastAPI) -> None:
    for exc_type, status, code in _ERROR_MAP:
        def handler(request: Request, exc: Exception, status=status, code=code) -> JSONResponse:
            return _error_response(status, code, str(exc))

        app.add_exception_handler(exc_type, handler)


async def _json_body(request: Request) -> dict[str, Any]:
    raw = await request.body()
    if not raw:
        raise SchemaError("request body is empty")
    try:
        doc = json.loads(raw)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"request body is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("request body must be a JSON object")
    return doc


def _parse_performance(
    raw: Any, rt: Runtime, patient_id: str
) -> list[tuple[str, PerformanceRecord]]:
    """Resolve payload items against issued exercises.

    Returns (exercise_id, record) pairs; unknown or foreign exercises are a
    422-class error, matching the endpoint contract.
    """
    if not isinstance(raw, list) or not raw:
        raise ValidationError("performance must be a non-empty array")
    out: list[tuple[str, PerformanceRecord]] = []
    for idx, item in enumerate(raw):
        if not isinstance(item, dict):
            raise ValidationError(f"performance[{idx}] must be an object")
        try:
            exercise_id = item["exercise_id"]
            attempted = item["targets_attempted"]
            correct = item["targets_correct"]
        except KeyError as exc:
            raise ValidationError(f"performance[{idx}] lacks {exc}") from exc
        if not isinstance(exercise_id, str):
            raise ValidationError(f"performance[{idx}].exercise_id must be a string")
        if not isinstance(attempted, int) or isinstance(attempted, bool) or attempted < 1:
            raise ValidationError(f"performance[{idx}].targets_attempted must be a positive integer")
        if not isinstance(correct, int) or isinstance(correct, bool):
            raise ValidationError(f"performance[{idx}].targets_correct must be an integer")
        try:
            stored = rt.store.get_exercise(exercise_id)
        except NotFoundError as exc:
            raise ValidationError(str(exc)) from exc
        if stored.patient_id != patient_id:
            raise ValidationError(
                f"exercise {exercise_id} was not issued to patient {patient_id!r}"
            )
        prior = item.get("prior_accuracy")
        if prior is not None and (not isinstance(prior, (int, float)) or isinstance(prior, bool)):
            raise ValidationError(f"performance[{idx}].prior_accuracy must be a number")
        if prior is None:
            prior = rt.store.history(patient_id).last_base_accuracy(stored.exercise.category)
        record = PerformanceRecord(stored.exercise.category, attempted, correct, prior)
        out.append((exercise_id, record))
    return out


def create_app(config: ApiConfig | None = None, runtime: Runtime | None = None) -> FastAPI:
    rt = runtime if runtime is not None else build_runtime(config or ApiConfig())
    app = FastAPI(title="phonocoach", docs_url=None, redoc_url=None)
    app.state.runtime = rt
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(rt.config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    _install_error_handlers(app)

    @app.post("/api/speech-analyze")
    async def speech_analyze(request: Request, patient_id: str = DEFAULT_PATIENT):
        content_type = request.headers.get("content-type", "").split(";")[0].strip().lower()
        if content_type.startswith("audio/"):
            if not rt.config.recognizer_url:
                raise ValidationError(
                    "audio input needs a recognizer bridge, and none is configured"
                )
            audio = await request.body()
            if not audio:
                raise SchemaError("request body is empty")
            doc = fetch_recognition(rt.config.recognizer_url, audio, rt.config.bridge_timeout_s)
            output = parse_recognizer_output(doc, source=Source.BRIDGE)
        else:
            output = parse_recognizer_output(await _json_body(request), source=Source.FILE)
        result = analyze(
            output,
            rt.categories,
            bank=rt.bank,
            issue_threshold=rt.config.issue_threshold,
            seed=rt.config.seed,
        )
        rt.store.put_analysis(result, patient_id)
        return JSONResponse(envelope(result.to_document()))

    @app.post("/api/generate-therapy")
    async def generate_therapy(request: Request):
        body = await _json_body(request)
        analysis_id = body.get("analysis_id")
        if not isinstance(analysis_id, str):
            raise SchemaError("analysis_id must be a string")
        stored = rt.store.get_analysis(analysis_id)
        difficulty = None
        if body.get("difficulty") is not None:
            try:
                difficulty = DifficultyLevel(body["difficulty"])
            except ValueError as exc:
                raise ValidationError(f"unknown difficulty {body['difficulty']!r}") from exc
        count = body.get("count")
        if count is not None and (not isinstance(count, int) or isinstance(count, bool) or count < 1):
            raise ValidationError("count must be a positive integer")
        history = rt.store.history(stored.patient_id).therapy_history()
        exercises, warnings = plan_exercises(
            stored.result,
            configs=rt.categories,
            tconfig=rt.therapy,
            corpus=rt.corpus,
            history=history,
            difficulty=difficulty,
            count=count,
            seed=rt.config.seed,
            backend=rt.generator,
        )
        rt.store.record_exercises(analysis_id, exercises)
        effective = difficulty or rt.therapy.severity_map[stored.result.severity]
        data: dict[str, Any] = {
            "analysis_id": analysis_id,
            "difficulty": effective.value,
            "exercises": [ex.to_document() for ex in exercises],
        }
        if not exercises:
            data["note"] = "no flagged categories; nothing to practice"
        return JSONResponse(envelope(data, warnings))

    @app.post("/api/feedback")
    async def feedback(request: Request):
        body = await _json_body(request)
        analysis_id = body.get("analysis_id")
        if not isinstance(analysis_id, str):
            raise SchemaError("analysis_id must be a string")
        stored = rt.store.get_analysis(analysis_id)
        records = None
        if body.get("performance") is not None:
            resolved = _parse_performance(body["performance"], rt, stored.patient_id)
            records = [rec for _, rec in resolved]
            for exercise_id, rec in resolved:
                base, a_c = single_accuracy(rec)
                rt.store.record_performance(stored.patient_id, exercise_id, base, a_c)
        bundle = generate_feedback(
            stored.result, rt.assets, performance=records, seed=rt.config.seed
        )
        doc = bundle.to_document()
        rt.store.record_feedback(analysis_id, doc)
        return JSONResponse(envelope(doc))

    @app.get("/api/analysis/{analysis_id}")
    async def get_analysis(analysis_id: str):
        return JSONResponse(envelope(rt.store.get_analysis(analysis_id).document))

    @app.get("/api/progress")
    async def progress(patient_id: str = DEFAULT_PATIENT, category: str | None = None):
        cat = None
        if category is not None:
            try:
                cat = DisorderCategory(category)
            except ValueError as exc:
                raise ValidationError(f"unknown category {category!r}") from exc
        hist = rt.store.history(patient_id)
        points = [
            e.to_dict() for e in hist.progress if cat is None or e.category is cat
        ]
        data: dict[str, Any] = {"patient_id": patient_id, "points": points}
        if cat is not None:
            data["category"] = cat.value
        return JSONResponse(envelope(data))

    @app.get("/api/health")
    async def health():
        return JSONResponse(envelope({"status": "ok", "lif_backend": BACKEND}))

    @app.get("/api/assets/{name}")
    async def asset(name: str):
        if not _ASSET_NAME.match(name):
            raise NotFoundError(f"no asset named {name!r}")
        ref = resources.files("phonocoach.data").joinpath(f"visual/{name}")
        if not ref.is_file():
            raise NotFoundError(f"no asset named {name!r}")
        return Response(ref.read_bytes(), media_type="image/svg+xml")

    return app
