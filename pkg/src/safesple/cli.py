"""safesple command line.

Exit codes: 0 admit/valid, 1 deny/invalid, 2 unresolved or incomplete,
3 input error.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

import click

from .cases.instantiate import NodeStatus, render_instance_graph
from .service.decide import combined_status
from .fm import (
    Configuration,
    ParseError,
    SemanticError,
    Verdict,
    check_configuration,
    count_variants,
    parse_feature_model,
    slice_count,
)
from .fm.parser import configuration_from_doc
from .gsn.catalog import ParseError as TemplateParseError, StructureError, load_template_file, validate_template
from .service.pipeline import EntryPipeline, InvalidConfigurationError, ValidationError
from .service.policy import PolicyError
from .service.store import NotFoundError

EXIT_OK = 0
EXIT_DENY = 1
EXIT_UNRESOLVED = 2
EXIT_INPUT = 3


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INPUT)


def _load_model(path: str):
    try:
        return parse_feature_model(Path(path).read_text())
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
    except (ParseError, SemanticError) as exc:
        _fail(f"{path}: {exc}")


@click.group()
def main() -> None:
    """Airspace-entry safety cases from feature models and per-flight evidence."""


@main.command()
@click.argument("model_file", type=click.Path())
def parse(model_file: str) -> None:
    """Parse a feature model and summarize it."""
    model = _load_model(model_file)
    groups = sum(1 for f in model.features.values() if f.group_kind.value in ("or", "xor"))
    click.echo(f"model {model.name}: {len(model.features)} features, "
               f"{groups} groups, {len(model.cross_tree_constraints)} constraints, "
               f"{len(model.hazard_traces)} hazards")
    sys.exit(EXIT_OK)


@main.command()
@click.argument("model_file", type=click.Path())
@click.option("--fix", "fixes", multiple=True, metavar="NAME=BOOL",
              help="Fix a feature (e.g. --fix Sparse=true) and count the slice.")
def count(model_file: str, fixes: tuple[str, ...]) -> None:
    """Count valid configurations, optionally within a slice."""
    model = _load_model(model_file)
    selected, deselected = set(), set()
    for item in fixes:
        name, _, raw = item.partition("=")
        value = raw.strip().lower() if raw else "true"
        if value in ("true", "1", "yes"):
            selected.add(name)
        elif value in ("false", "0", "no"):
            deselected.add(name)
        else:
            _fail(f"bad --fix value {item!r}; use NAME=true or NAME=false")
    try:
        if selected or deselected:
            result = slice_count(model, Configuration(
                selected=frozenset(selected), deselected=frozenset(deselected)))
        else:
            result = count_variants(model)
    except Exception as exc:
        _fail(str(exc))
    click.echo(str(result))
    sys.exit(EXIT_OK)


@main.command("check-config")
@click.argument("model_file", type=click.Path())
@click.argument("config_file", type=click.Path())
def check_config(model_file: str, config_file: str) -> None:
    """Check a configuration document against the model."""
    model = _load_model(model_file)
    try:
        config = configuration_from_doc(json.loads(Path(config_file).read_text()))
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        _fail(f"cannot load configuration: {exc}")
    report = check_configuration(model, config)
    click.echo(report.verdict.value)
    for violation in report.violations:
        click.echo(f"  - {violation}")
    sys.exit({
        Verdict.VALID: EXIT_OK,
        Verdict.INVALID: EXIT_DENY,
        Verdict.INCOMPLETE_BUT_EXTENSIBLE: EXIT_UNRESOLVED,
    }[report.verdict])


@main.command("validate-templates")
@click.argument("catalog_dir", type=click.Path())
def validate_templates(catalog_dir: str) -> None:
    """Load every template in a directory and report findings."""
    path = Path(catalog_dir)
    files = sorted(path.glob("*.json")) if path.is_dir() else [path]
    if not files:
        _fail(f"no template documents under {catalog_dir}")
    total = 0
    for file in files:
        try:
            template = load_template_file(file)
        except (TemplateParseError, StructureError, OSError) as exc:
            _fail(f"{file.name}: {exc}")
        findings = validate_template(template)
        click.echo(f"{template.template_id}: {len(findings)} finding(s)")
        for finding in findings:
            click.echo(f"  - [{finding.kind}] {finding.message}")
        total += len(findings)
    sys.exit(EXIT_OK if total == 0 else EXIT_DENY)


def _build_pipeline(fixtures: str | None, policy: str | None, store: str | None = None):
    try:
        return EntryPipeline(
            fixtures=fixtures,
            policy_path=policy,
            store_dir=store or tempfile.mkdtemp(prefix="safesple-"),
        )
    except (OSError, PolicyError, ParseError, SemanticError,
            TemplateParseError, StructureError) as exc:
        _fail(f"cannot load artifacts: {exc}")


def _read_request(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _fail(f"cannot read request {path}: {exc}")


def _parse_what_if(items: tuple[str, ...]) -> dict:
    overrides: dict = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep:
            _fail(f"bad --what-if {item!r}; use key=value")
        try:
            overrides[key] = json.loads(raw)
        except json.JSONDecodeError:
            overrides[key] = raw
    return overrides


@main.command()
@click.option("--request", "request_file", required=True, type=click.Path())
@click.option("--fixtures", type=click.Path(), default=None)
@click.option("--policy", type=click.Path(), default=None)
@click.option("--what-if", "what_if_items", multiple=True, metavar="KEY=VALUE")
@click.option("--format", "output_format", type=click.Choice(["doc", "graph"]), default="doc")
def instantiate(request_file: str, fixtures: str | None, policy: str | None,
                what_if_items: tuple[str, ...], output_format: str) -> None:
    """Instantiate the safety cases for a request and print them."""
    pipeline = _build_pipeline(fixtures, policy)
    payload = _read_request(request_file)
    try:
        result = pipeline.evaluate_payload(
            payload,
            overrides=_parse_what_if(what_if_items) or None,
            hypothetical=bool(what_if_items),
        )
    except (ValidationError, InvalidConfigurationError, PolicyError) as exc:
        _fail(str(exc))
    if output_format == "graph":
        for instance, template in result.pairs:
            click.echo(render_instance_graph(instance, template), nl=False)
    else:
        click.echo(json.dumps(result.case_docs(), indent=2))
    overall = combined_status(result.pairs)
    sys.exit({
        NodeStatus.SATISFIED: EXIT_OK,
        NodeStatus.VIOLATED: EXIT_DENY,
        NodeStatus.UNRESOLVED: EXIT_UNRESOLVED,
    }[overall])


@main.command()
@click.option("--request", "request_file", required=True, type=click.Path())
@click.option("--policy", type=click.Path(), default=None)
@click.option("--fixtures", type=click.Path(), default=None)
@click.option("--store", type=click.Path(), default=None,
              help="Persist request, case and decision documents here.")
@click.option("--what-if", "what_if_items", multiple=True, metavar="KEY=VALUE")
def decide(request_file: str, policy: str | None, fixtures: str | None,
           store: str | None, what_if_items: tuple[str, ...]) -> None:
    """Run the full pipeline for a request and print the entry decision."""
    pipeline = _build_pipeline(fixtures, policy, store)
    payload = _read_request(request_file)
    try:
        if what_if_items:
            result = pipeline.evaluate_payload(
                payload, overrides=_parse_what_if(what_if_items), hypothetical=True)
        else:
            result = pipeline.submit(payload)
    except (ValidationError, InvalidConfigurationError, PolicyError) as exc:
        _fail(str(exc))
    click.echo(json.dumps(result.decision_doc(), indent=2))
    verdict = result.decision.verdict.value
    if verdict in ("admit", "admitWithAdvisory"):
        sys.exit(EXIT_OK)
    advisory = result.decision.advisory
    if advisory is not None and advisory.re_evaluate:
        sys.exit(EXIT_UNRESOLVED)
    sys.exit(EXIT_DENY)


@main.command()
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
@click.option("--fixtures", type=click.Path(), default=None)
@click.option("--policy", type=click.Path(), default=None)
@click.option("--store", type=click.Path(), default=None)
def serve(port: int, host: str, fixtures: str | None, policy: str | None,
          store: str | None) -> None:
    """Run the HTTP entry service."""
    import uvicorn

    from .service.app import create_app

    pipeline = _build_pipeline(fixtures, policy, store)
    uvicorn.run(create_app(pipeline), host=host, port=port)


if __name__ == "__main__":
    main()
