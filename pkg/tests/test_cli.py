"""Command line walks: exit codes, determinism, parity with the API."""

import json
import os
import signal
import subprocess
import sys
import time

import httpx
import pytest

CLI = [sys.executable, "-m", "phonocoach.cli"]


def run_cli(*args, cwd=None):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, timeout=120, cwd=cwd
    )


@pytest.fixture(scope="module")
def synthetic_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "utterance.json"
    proc = run_cli("simulate", "--target", "RSound=0.6", "--seed", "4", "--out", str(path))
    assert proc.returncode == 0, proc.stderr
    return str(path)


def test_simulate_emits_valid_document(synthetic_path):
    from phonocoach.validation import validate_document

    doc = json.loads(open(synthetic_path).read())
    validate_document(doc, "recognizer")


def test_simulate_rejects_bad_targets():
    proc = run_cli("simulate", "--target", "XSound=0.6")
    assert proc.returncode == 1
    assert "unknown category" in proc.stderr
    proc = run_cli("simulate", "--target", "RSound=high")
    assert proc.returncode == 1
    proc = run_cli("simulate", "--target", "RSound=0.6", "--target", "RSound=0.7")
    assert proc.returncode == 1
    assert "twice" in proc.stderr


def test_analyze_deterministic_bytes(synthetic_path, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        proc = run_cli("analyze", synthetic_path, "--out", str(out))
        assert proc.returncode == 0, proc.stderr
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["flagged"][0]["category"] == "RSound"


def test_analyze_stdout_equals_file_output(synthetic_path, tmp_path):
    out = tmp_path / "o.json"
    file_proc = run_cli("analyze", synthetic_path, "--out", str(out))
    stdout_proc = run_cli("analyze", synthetic_path)
    assert file_proc.returncode == stdout_proc.returncode == 0
    assert stdout_proc.stdout == out.read_text()


def test_analyze_seed_changes_id(synthetic_path):
    base = json.loads(run_cli("analyze", synthetic_path).stdout)
    other = json.loads(run_cli("analyze", synthetic_path, "--seed", "5").stdout)
    assert base["analysis_id"] != other["analysis_id"]
    assert base["flagged"] == other["flagged"]  # seed keys sampling, not scoring


def test_exit_codes(tmp_path):
    assert run_cli("analyze", str(tmp_path / "absent.json")).returncode == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run_cli("analyze", str(bad)).returncode == 1
    assert run_cli("--no-such-flag").returncode == 1
    assert run_cli("analyze").returncode == 1  # missing argument
    assert run_cli().returncode == 1  # missing command is a usage error
    assert run_cli("--help").returncode == 0


def test_therapy_and_feedback_walk(synthetic_path, tmp_path):
    analysis_path = tmp_path / "analysis.json"
    assert run_cli("analyze", synthetic_path, "--out", str(analysis_path)).returncode == 0

    therapy_proc = run_cli("therapy", str(analysis_path))
    assert therapy_proc.returncode == 0, therapy_proc.stderr
    plan = json.loads(therapy_proc.stdout)
    assert plan["exercises"] and plan["exercises"][0]["category"] == "RSound"
    again = run_cli("therapy", str(analysis_path))
    assert again.stdout == therapy_proc.stdout

    hard = json.loads(run_cli("therapy", str(analysis_path), "--difficulty", "hard").stdout)
    assert hard["difficulty"] == "hard"

    perf_path = tmp_path / "perf.json"
    perf_path.write_text(
        json.dumps([{"category": "RSound", "targets_attempted": 10, "targets_correct": 9}])
    )
    fb_proc = run_cli("feedback", str(analysis_path), "--performance", str(perf_path))
    assert fb_proc.returncode == 0, fb_proc.stderr
    bundle = json.loads(fb_proc.stdout)
    assert bundle["exercise"]["assessment"]["RSound"] == "excellent"
    no_perf = json.loads(run_cli("feedback", str(analysis_path)).stdout)
    assert no_perf["exercise"] is None
    assert no_perf["overall"] == bundle["overall"]


def test_therapy_rejects_invalid_analysis_document(tmp_path):
    path = tmp_path / "analysis.json"
    path.write_text(json.dumps({"analysis_id": "an-1"}))
    proc = run_cli("therapy", str(path))
    assert proc.returncode == 1
    assert "schema" in proc.stderr


def test_export_reads_store(tmp_path):
    config_path = tmp_path / "api.json"
    store_path = tmp_path / "store.jsonl"
    config_path.write_text(json.dumps({"store_path": str(store_path)}))
    proc = run_cli("export", "--config", str(config_path))
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["analyses"] == {} and doc["patients"] == {}


def test_cli_documents_match_library(synthetic_path):
    """The subprocess output and an in-process run must agree byte for byte."""
    from phonocoach.analysis import analyze
    from phonocoach.categories import load_categories
    from phonocoach.ingest import parse_recognizer_output
    from phonocoach.lif import LifParams
    from phonocoach.patterns import generate_bank

    cli_doc = json.loads(run_cli("analyze", synthetic_path).stdout)
    raw = json.loads(open(synthetic_path).read())
    categories = load_categories()
    bank = generate_bank(categories, LifParams())
    lib_doc = analyze(parse_recognizer_output(raw), categories, bank=bank).to_document()
    assert cli_doc == lib_doc


def test_serve_binds_and_answers(tmp_path):
    config_path = tmp_path / "api.json"
    config_path.write_text(json.dumps({"store_path": str(tmp_path / "store.jsonl")}))
    proc = subprocess.Popen(
        CLI + ["serve", "--config", str(config_path), "--port", "0"],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        text=True,
    )
    try:
        url = None
        deadline = time.monotonic() + 60
        while time.monotonic() < deadline:
            line = proc.stdout.readline().strip()
            if line.startswith("listening on "):
                url = line.removeprefix("listening on ")
            elif line == "ready":
                break
            elif proc.poll() is not None:
                pytest.fail(f"serve exited early: {proc.stderr.read()}")
        assert url, "never saw the listening line"
        body = httpx.get(f"{url}/api/health", timeout=10).json()
        assert body["data"]["status"] == "ok"
    finally:
        proc.send_signal(signal.SIGINT)
        try:
            proc.wait(timeout=10)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.wait()
