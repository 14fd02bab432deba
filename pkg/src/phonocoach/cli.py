"""Command line front end.

Commands mirror the REST endpoints plus batch tooling: analyze a recognizer
JSON file, synthesize test input, plan therapy or assemble feedback from a
saved analysis, export the store, and launch the service.

Exit codes: 0 success, 1 usage or input error, 2 internal error.
"""

from __future__ import annotations

import functools
import json
import sys
import threading
import traceback
from dataclasses import replace
from typing import Any

import click

from .analysis import analyze, result_from_document
from .categories import DisorderCategory, load_categories
from .errors import PhonoCoachError, SchemaError, ValidationError
from .feedback import PerformanceRecord, generate_feedback, load_feedback_assets
from .ingest import Source, parse_recognizer_output
from .lif import LifParams
from .patterns import generate_bank
from .service import ApiConfig, create_app
from .store import SessionStore
from .synthetic import SyntheticSpec, generate_synthetic
from .therapy import (
    EMPTY_HISTORY,
    DifficultyLevel,
    load_corpus,
    load_therapy_config,
    plan_exercises,
)
from .validation import validate_document

click.UsageError.exit_code = 1  # bad flags are input errors, not crashes


def cli_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any):
        try:
            return fn(*args, **kwargs)
        except (PhonoCoachError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        except click.ClickException:
            raise
        except Exception:
            traceback.print_exc()
            sys.exit(2)

    return wrapper


def _load_config(path: str | None, seed: int | None) -> ApiConfig:
    config = ApiConfig.from_file(path) if path else ApiConfig()
    if seed is not None:
        config = replace(config, seed=seed)
    return config


def _read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path} is not valid JSON: {exc}") from exc


def _emit(doc: Any, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


config_option = click.option("--config", "config_path", default=None, help="Service config JSON.")
seed_option = click.option("--seed", type=int, default=None, help="Deterministic seed override.")
out_option = click.option("--out", default=None, help="Write the document here instead of stdout.")


@click.group()
def main() -> None:
    """Speech practice pipeline tools."""


@main.command(name="analyze")
@click.argument("path")
@config_option
@seed_option
@out_option
@cli_errors
def analyze_cmd(path: str, config_path: str | None, seed: int | None, out: str | None) -> None:
    """Analyze a recognizer JSON file."""
    config = _load_config(config_path, seed)
    raw = _read_json(path)
    output = parse_recognizer_output(raw, source=Source.FILE)
    categories = load_categories(config.categories_path)
    bank = generate_bank(categories, LifParams())
    result = analyze(
        output, categories, bank=bank, issue_threshold=config.issue_threshold, seed=config.seed
    )
    _emit(result.to_document(), out)


def _parse_target(raw: str) -> tuple[DisorderCategory, float]:
    name, _, value = raw.partition("=")
    try:
        category = DisorderCategory(name)
    except ValueError as exc:
        raise ValidationError(f"unknown category {name!r}") from exc
    try:
        deficit = float(value)
    except ValueError as exc:
        raise ValidationError(f"deficit in {raw!r} is not a number") from exc
    return category, deficit


@main.command()
@click.option(
    "--target",
    "targets",
    multiple=True,
    help="Category=deficit to plant, e.g. RSound=0.6. Repeatable.",
)
@click.option("--phonemes", "phoneme_count", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@out_option
@cli_errors
def simulate(targets: tuple[str, ...], phoneme_count: int, seed: int, out: str | None) -> None:
    """Emit a synthetic recognizer JSON document."""
    parsed: dict[DisorderCategory, float] = {}
    for raw in targets:
        category, deficit = _parse_target(raw)
        if category in parsed:
            raise ValidationError(f"category {category.value} targeted twice")
        parsed[category] = deficit
    spec = SyntheticSpec(parsed, phoneme_count, seed)
    _emit(generate_synthetic(spec), out)


@main.command()
@click.argument("analysis_path")
@config_option
@click.option("--difficulty", type=click.Choice([d.value for d in DifficultyLevel]), default=None)
@click.option("--count", type=int, default=None, help="Cap on number of exercises.")
@seed_option
@out_option
@cli_errors
def therapy(
    analysis_path: str,
    config_path: str | None,
    difficulty: str | None,
    count: int | None,
    seed: int | None,
    out: str | None,
) -> None:
    """Plan exercises from a saved analysis document."""
    config = _load_config(config_path, seed)
    doc = _read_json(analysis_path)
    validate_document(doc, "analysis")
    result = result_from_document(doc)
    categories = load_categories(config.categories_path)
    tconfig = load_therapy_config(config.therapy_path)
    corpus = load_corpus(config.corpus_path)
    level = DifficultyLevel(difficulty) if difficulty else None
    exercises, warnings = plan_exercises(
        result,
        configs=categories,
        tconfig=tconfig,
        corpus=corpus,
        history=EMPTY_HISTORY,
        difficulty=level,
        count=count,
        seed=config.seed,
    )
    for warning in warnings:
        click.echo(f"warning: {warning}", err=True)
    effective = level or tconfig.severity_map[result.severity]
    data: dict[str, Any] = {
        "analysis_id": result.analysis_id,
        "difficulty": effective.value,
        "exercises": [ex.to_document() for ex in exercises],
    }
    if not exercises:
        data["note"] = "no flagged categories; nothing to practice"
    _emit(data, out)


def _parse_performance_file(raw: Any) -> list[PerformanceRecord]:
    if not isinstance(raw, list) or not raw:
        raise ValidationError("performance file must hold a non-empty array")
    records = []
    for idx, item in enumerate(raw):
        if not isinstance(item, dict):
            raise ValidationError(f"performance[{idx}] must be an object")
        try:
            category = DisorderCategory(item["category"])
            attempted = int(item["targets_attempted"])
            correct = int(item["targets_correct"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"performance[{idx}] is malformed: {exc}") from exc
        prior = item.get("prior_accuracy")
        if prior is not None:
            prior = float(prior)
        records.append(PerformanceRecord(category, attempted, correct, prior))
    return records


@main.command()
@click.argument("analysis_path")
@click.option("--performance", "performance_path", default=None, help="Performance records JSON.")
@config_option
@seed_option
@out_option
@cli_errors
def feedback(
    analysis_path: str,
    performance_path: str | None,
    config_path: str | None,
    seed: int | None,
    out: str | None,
) -> None:
    """Assemble a feedback bundle from a saved analysis document."""
    config = _load_config(config_path, seed)
    doc = _read_json(analysis_path)
    validate_document(doc, "analysis")
    result = result_from_document(doc)
    assets = load_feedback_assets(config.guidance_path, config.tips_path, config.visual_path)
    records = None
    if performance_path:
        records = _parse_performance_file(_read_json(performance_path))
    bundle = generate_feedback(result, assets, performance=records, seed=config.seed)
    _emit(bundle.to_document(), out)


@main.command()
@config_option
@out_option
@cli_errors
def export(config_path: str | None, out: str | None) -> None:
    """Dump the whole session store as one JSON document."""
    config = _load_config(config_path, None)
    with SessionStore(config.store_path) as store:
        _emit(store.export(), out)


@main.command()
@config_option
@click.option("--host", default=None, help="Bind address override.")
@click.option("--port", type=int, default=None, help="Bind port override; 0 picks a free port.")
@cli_errors
def serve(config_path: str | None, host: str | None, port: int | None) -> None:
    """Run the REST service until interrupted."""
    import uvicorn

    config = _load_config(config_path, None)
    if host is not None:
        config = replace(config, host=host)
    if port is not None:
        config = replace(config, port=port)
    app = create_app(config)
    server = uvicorn.Server(
        uvicorn.Config(app, host=config.host, port=config.port, log_level="warning")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    while not server.started:
        if not thread.is_alive():
            raise PhonoCoachError("service failed to start")
        thread.join(0.05)
    bound = server.servers[0].sockets[0].getsockname()
    click.echo(f"listening on http://{bound[0]}:{bound[1]}")
    click.echo("ready")
    try:
        thread.join()
    except KeyboardInterrupt:
        server.should_exit = True
        thread.join(5.0)


if __name__ == "__main__":
    main()
