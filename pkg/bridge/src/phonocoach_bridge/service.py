"""HTTP surface: the two bridge protocols.

Responses are bare protocol documents (no envelope; the engine owns its
own wrapping). Errors use a small {"error", "message"} body: the engine
only looks at the status code, the body is for humans reading logs.
"""

from __future__ import annotations

import json
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .audio import decode_wav
from .config import BridgeConfig
from .errors import AudioError, ModelError, RequestError
from .recognizer import aggregate_frames, load_recognizer
from .generator import load_generator


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse({"error": code, "message": message}, status_code=status)


def _install_error_handlers(app: FastAPI) -> None:
    @app.exception_handler(AudioError)
    async def _audio(_req: Request, exc: AudioError) -> JSONResponse:
        return _error(400, "undecodable-audio", str(exc))

    @app.exception_handler(RequestError)
    async def _request(_req: Request, exc: RequestError) -> JSONResponse:
        return _error(400, "malformed-request", str(exc))

    @app.exception_handler(ModelError)
    async def _model(_req: Request, exc: ModelError) -> JSONResponse:
        return _error(500, "model-failure", str(exc))


def create_app(config: BridgeConfig | None = None) -> FastAPI:
    config = config or BridgeConfig()
    app = FastAPI(title="phonocoach-bridge", docs_url=None, redoc_url=None)
    _install_error_handlers(app)

    recognizer = load_recognizer(config.recognizer) if config.recognizer else None
    generator = load_generator(config.generator) if config.generator else None
    app.state.recognizer = recognizer
    app.state.generator = generator

    # Unconfigured endpoints are simply not registered: callers get a
    # plain 404, the same as any other missing route.
    if recognizer is not None:

        @app.post("/recognize")
        async def recognize(request: Request) -> JSONResponse:
            clip = decode_wav(await request.body())
            transcript, frames = app.state.recognizer.transcribe(clip)
            return JSONResponse(
                {"transcript": transcript, "phonemes": aggregate_frames(frames)}
            )

    if generator is not None:

        @app.post("/generate")
        async def generate(request: Request) -> JSONResponse:
            body = _generate_body(await request.body())
            text = app.state.generator.generate(
                body["prompt"], body["temperature"], body["top_k"], body["max_tokens"]
            )
            return JSONResponse({"text": text.strip()})

    @app.get("/health")
    async def health() -> JSONResponse:
        return JSONResponse(
            {
                "status": "ok",
                "recognizer": config.recognizer,
                "generator": config.generator,
                "device": config.device,
            }
        )

    return app


def _generate_body(raw: bytes) -> dict[str, Any]:
    """Parse and check a /generate request.

    Slightly more liberal than the engine's request schema: max_tokens 0
    is accepted (and yields empty text) even though the engine never
    sends it.
    """
    try:
        body = json.loads(raw)
    except ValueError as exc:
        raise RequestError(f"request body is not valid JSON: {exc}") from exc
    if not isinstance(body, dict):
        raise RequestError("request body must be a JSON object")
    prompt = body.get("prompt")
    if not isinstance(prompt, str) or not prompt:
        raise RequestError("prompt must be a non-empty string")
    temperature = body.get("temperature")
    if not isinstance(temperature, (int, float)) or isinstance(temperature, bool) or temperature < 0:
        raise RequestError("temperature must be a non-negative number")
    top_k = body.get("top_k")
    if not isinstance(top_k, int) or isinstance(top_k, bool) or top_k < 1:
        raise RequestError("top_k must be a positive integer")
    max_tokens = body.get("max_tokens")
    if not isinstance(max_tokens, int) or isinstance(max_tokens, bool) or max_tokens < 0:
        raise RequestError("max_tokens must be a non-negative integer")
    return {
        "prompt": prompt,
        "temperature": float(temperature),
        "top_k": top_k,
        "max_tokens": max_tokens,
    }
