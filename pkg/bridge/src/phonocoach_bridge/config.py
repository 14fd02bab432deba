"""Adapter configuration."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class BridgeConfig:
    """Which models to expose and where to listen.

    recognizer / generator are model identifiers; None disables that
    endpoint entirely. At least one must be configured or the adapter
    has nothing to serve.
    """

    recognizer: str | None = "stub"
    generator: str | None = "stub"
    device: str = "cpu"
    host: str = "127.0.0.1"
    port: int = 8100

    def __post_init__(self) -> None:
        if self.recognizer is None and self.generator is None:
            raise ConfigError("configure at least one of recognizer, generator")
        if self.recognizer is not None and not self.recognizer:
            raise ConfigError("recognizer model id must be a non-empty string")
        if self.generator is not None and not self.generator:
            raise ConfigError("generator model id must be a non-empty string")
        if not self.device:
            raise ConfigError("device hint must be non-empty")
        if not 0 <= self.port <= 65535:
            raise ConfigError(f"port {self.port} out of range")
