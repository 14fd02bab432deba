"""Model adapter exposing the recognizer and generator bridge protocols."""

from .config import BridgeConfig
from .errors import (
    AudioError,
    BridgeAdapterError,
    ConfigError,
    ModelError,
    RequestError,
)
from .service import create_app

__version__ = "0.1.0"

__all__ = [
    "AudioError",
    "BridgeAdapterError",
    "BridgeConfig",
    "ConfigError",
    "ModelError",
    "RequestError",
    "create_app",
    "__version__",
]
