"""Published schema files and the validation helper."""

import pytest

from phonocoach.errors import SchemaError
from phonocoach.validation import SCHEMA_NAMES, load_schema, validate_document


def test_all_published_schemas_are_valid():
    for name in SCHEMA_NAMES:
        schema = load_schema(name)
        assert schema["$schema"].endswith("2020-12/schema")


def test_unknown_schema_name():
    with pytest.raises(SchemaError, match="no published schema"):
        load_schema("bogus")
    with pytest.raises(SchemaError):
        validate_document({}, "bogus")


def test_recognizer_document_happy_path():
    doc = {
        "transcript": "red",
        "phonemes": [{"symbol": "R", "confidence": 0.9}],
    }
    validate_document(doc, "recognizer")


def test_validation_error_names_location():
    doc = {"transcript": "red", "phonemes": [{"symbol": "R", "confidence": 2.0}]}
    with pytest.raises(SchemaError, match=r"phonemes/0/confidence"):
        validate_document(doc, "recognizer")
    with pytest.raises(SchemaError, match="<root>"):
        validate_document({"phonemes": []}, "recognizer")


def test_envelope_schema():
    validate_document({"version": 1, "data": {"x": 1}, "warnings": []}, "envelope")
    with pytest.raises(SchemaError):
        validate_document({"version": 1, "data": {}}, "envelope")  # warnings required
    with pytest.raises(SchemaError):
        validate_document({"version": 2, "data": {}, "warnings": []}, "envelope")


def test_pointer_selects_sub_schema():
    request = {
        "prompt": "Create a sentence:",
        "temperature": 0.7,
        "top_k": 40,
        "max_tokens": 48,
    }
    validate_document(request, "generator_bridge", pointer="$defs/request")
    validate_document({"text": "red door red"}, "generator_bridge", pointer="$defs/response")
    with pytest.raises(SchemaError):
        validate_document({"text": 3}, "generator_bridge", pointer="$defs/response")


def test_analysis_schema_rejects_extra_keys(fixture_doc, configs, bank):
    from phonocoach.analysis import analyze
    from phonocoach.ingest import parse_recognizer_output

    doc = analyze(parse_recognizer_output(fixture_doc), configs, bank=bank).to_document()
    validate_document(doc, "analysis")
    doc["surprise"] = True
    with pytest.raises(SchemaError, match="surprise"):
        validate_document(doc, "analysis")
