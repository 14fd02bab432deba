"""Exception types shared across the pipeline."""


class PhonoCoachError(Exception):
    """Base class for all pipeline errors."""


class SchemaError(PhonoCoachError):
    """A document does not match its published JSON schema."""


class ValidationError(PhonoCoachError):
    """A document parsed but carries invalid values."""


class ConfigError(PhonoCoachError):
    """A configuration file is inconsistent or incomplete."""


class NotFoundError(PhonoCoachError):
    """A referenced identifier does not exist in the store."""


class StoreError(PhonoCoachError):
    """The store file cannot be read or written (distinct from not-found)."""


class BridgeError(PhonoCoachError):
    """An external model bridge is unreachable or returned garbage."""


class CandidatesExhaustedError(PhonoCoachError):
    """Quality filtering rejected every candidate sentence."""
