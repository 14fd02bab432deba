"""WAV decoding for the /recognize endpoint.

Only PCM16 WAV is accepted (the dashboard records PCM16 mono 16 kHz).
Stereo is downmixed by averaging; anything undecodable raises AudioError,
which the service maps to HTTP 400.
"""

from __future__ import annotations

import io
import struct
import wave
from dataclasses import dataclass

from .errors import AudioError

# Full-scale is 32767; below this peak a clip counts as silence (~-36 dBFS).
SILENCE_FLOOR = 512


@dataclass(frozen=True)
class Clip:
    samples: tuple[int, ...]
    sample_rate: int

    @property
    def duration_ms(self) -> int:
        if not self.samples:
            return 0
        return round(1000 * len(self.samples) / self.sample_rate)

    def is_silent(self) -> bool:
        return all(abs(s) <= SILENCE_FLOOR for s in self.samples)


def decode_wav(body: bytes) -> Clip:
    """Decode a PCM16 WAV body into a mono clip."""
    if not body:
        raise AudioError("request body is empty")
    try:
        with wave.open(io.BytesIO(body)) as wav:
            channels = wav.getnchannels()
            width = wav.getsampwidth()
            rate = wav.getframerate()
            frames = wav.readframes(wav.getnframes())
    except (wave.Error, EOFError) as exc:
        raise AudioError(f"body is not a decodable WAV file: {exc}") from exc
    if width != 2:
        raise AudioError(f"expected PCM16 (2-byte) samples, got {width}-byte")
    if channels not in (1, 2):
        raise AudioError(f"expected mono or stereo audio, got {channels} channels")
    if rate <= 0:
        raise AudioError("sample rate must be positive")
    raw = struct.unpack(f"<{len(frames) // 2}h", frames)
    if channels == 2:
        raw = tuple((l + r) // 2 for l, r in zip(raw[0::2], raw[1::2]))
    return Clip(samples=tuple(raw), sample_rate=rate)


def encode_wav(samples: list[int] | tuple[int, ...], sample_rate: int = 16000) -> bytes:
    """Inverse of decode_wav, for tests and sample generation."""
    buf = io.BytesIO()
    with wave.open(buf, "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(sample_rate)
        wav.writeframes(struct.pack(f"<{len(samples)}h", *samples))
    return buf.getvalue()
