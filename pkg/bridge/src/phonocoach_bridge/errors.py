"""Exception types for the bridge adapter."""


class BridgeAdapterError(Exception):
    """Base class for adapter errors."""


class AudioError(BridgeAdapterError):
    """The request body is not decodable audio (HTTP 400)."""


class RequestError(BridgeAdapterError):
    """A non-audio request body is malformed (HTTP 400)."""


class ModelError(BridgeAdapterError):
    """A loaded model failed at inference time (HTTP 500)."""


class ConfigError(BridgeAdapterError):
    """The adapter configuration is unusable."""
