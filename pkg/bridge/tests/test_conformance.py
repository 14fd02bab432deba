"""Wire-protocol conformance: every stub response validates against the
published schemas, over randomized request streams."""

import json
import random
import string
from importlib import resources

import pytest
from jsonschema import Draft202012Validator

from phonocoach_bridge.audio import encode_wav


def load_schema(name: str) -> dict:
    ref = resources.files("phonocoach_bridge").joinpath(f"schemas/{name}.json")
    return json.loads(ref.read_text(encoding="utf-8"))


RECOGNIZER_VALIDATOR = Draft202012Validator(load_schema("recognizer"))
BRIDGE_SCHEMA = load_schema("generator_bridge")
REQUEST_VALIDATOR = Draft202012Validator(BRIDGE_SCHEMA["$defs"]["request"])
RESPONSE_VALIDATOR = Draft202012Validator(BRIDGE_SCHEMA["$defs"]["response"])


def _random_clip(rng: random.Random) -> bytes:
    rate = rng.choice([8000, 16000, 22050, 44100])
    n = rng.randint(1, 4000)
    if rng.random() < 0.15:
        # quiet clip, at or below the silence floor
        samples = [rng.randint(-512, 512) for _ in range(n)]
    else:
        samples = [rng.randint(-32768, 32767) for _ in range(n)]
    return encode_wav(samples, rate)


def _random_generate_request(rng: random.Random) -> dict:
    words = ["".join(rng.choices(string.ascii_letters, k=rng.randint(1, 9)))
             for _ in range(rng.randint(1, 12))]
    return {
        "prompt": " ".join(words),
        "temperature": 0.0 if rng.random() < 0.2 else round(rng.uniform(0.0, 2.0), 3),
        "top_k": rng.randint(1, 50),
        "max_tokens": rng.randint(1, 40),
    }


def test_recognizer_conformance_over_randomized_requests(client):
    rng = random.Random(20260814)
    for _ in range(100):
        resp = client.post(
            "/recognize",
            content=_random_clip(rng),
            headers={"content-type": "audio/wav"},
        )
        assert resp.status_code == 200
        doc = resp.json()
        RECOGNIZER_VALIDATOR.validate(doc)
        for phoneme in doc["phonemes"]:
            # parser-level invariant the schema cannot express
            assert phoneme["end_ms"] >= phoneme["start_ms"]


def test_generator_conformance_over_randomized_requests(client):
    rng = random.Random(97)
    for _ in range(100):
        request = _random_generate_request(rng)
        REQUEST_VALIDATOR.validate(request)
        resp = client.post("/generate", json=request)
        assert resp.status_code == 200
        body = resp.json()
        RESPONSE_VALIDATOR.validate(body)
        assert set(body) == {"text"}


def test_schema_copies_match_the_published_ones():
    pytest.importorskip("phonocoach")

    for name in ("recognizer", "generator_bridge"):
        ours = (
            resources.files("phonocoach_bridge")
            .joinpath(f"schemas/{name}.json")
            .read_bytes()
        )
        published = (
            resources.files("phonocoach")
            .joinpath(f"schemas/{name}.json")
            .read_bytes()
        )
        assert ours == published, f"embedded copy of {name} schema drifted"
