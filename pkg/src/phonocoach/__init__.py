"""Deterministic speech practice pipeline.

Recognizer confidences go in; flagged disorder categories, scored therapy
exercises, and structured feedback come out. Same input and seed, same bytes
out, every time.
"""

from .analysis import AnalysisResult, Severity, analyze, classify_severity, result_from_document
from .categories import CategoryConfig, DisorderCategory, load_categories
from .errors import (
    BridgeError,
    CandidatesExhaustedError,
    ConfigError,
    NotFoundError,
    PhonoCoachError,
    SchemaError,
    StoreError,
    ValidationError,
)
from .feedback import (
    FeedbackBundle,
    PerformanceRecord,
    generate_feedback,
    load_feedback_assets,
)
from .ingest import (
    PhonemeIssue,
    PhonemeScore,
    RecognizerOutput,
    Source,
    flag_phoneme_issues,
    parse_recognizer_output,
)
from .lif import BACKEND, LifParams, encode_stimulus, simulate_lif, spike_density
from .patterns import ReferencePatternBank, generate_bank, load_bank, save_bank
from .service import ApiConfig, create_app
from .store import PatientHistory, SessionStore
from .synthetic import SyntheticSpec, generate_synthetic
from .therapy import (
    DifficultyLevel,
    Exercise,
    TherapyConfig,
    TherapyHistory,
    load_corpus,
    load_therapy_config,
    plan_exercises,
    select_exercise,
)
from .validation import load_schema, validate_document

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult",
    "ApiConfig",
    "BACKEND",
    "BridgeError",
    "CandidatesExhaustedError",
    "CategoryConfig",
    "ConfigError",
    "DifficultyLevel",
    "DisorderCategory",
    "Exercise",
    "FeedbackBundle",
    "LifParams",
    "NotFoundError",
    "PatientHistory",
    "PerformanceRecord",
    "PhonemeIssue",
    "PhonemeScore",
    "PhonoCoachError",
    "RecognizerOutput",
    "ReferencePatternBank",
    "SchemaError",
    "SessionStore",
    "Severity",
    "Source",
    "StoreError",
    "SyntheticSpec",
    "TherapyConfig",
    "TherapyHistory",
    "ValidationError",
    "analyze",
    "classify_severity",
    "create_app",
    "encode_stimulus",
    "flag_phoneme_issues",
    "generate_bank",
    "generate_feedback",
    "generate_synthetic",
    "load_bank",
    "load_categories",
    "load_corpus",
    "load_feedback_assets",
    "load_schema",
    "load_therapy_config",
    "parse_recognizer_output",
    "plan_exercises",
    "result_from_document",
    "save_bank",
    "select_exercise",
    "simulate_lif",
    "spike_density",
    "validate_document",
    "__version__",
]
