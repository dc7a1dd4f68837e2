"""Batch front-door: discover, layout, intervene, attribute, serve.

Documents written here go through the same canonical serializer as the HTTP
service, so the outputs are byte-identical for the same inputs and seeds.
Exit codes: 0 success, 1 user/input error, 2 internal failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import serialize
from .data import ingest_file, load_column_config
from .discovery import discover
from .errors import CausalKitError
from .inference import InterventionSpec, attribute as run_attribution
from .inference import fit_cpds, intervene as run_intervention
from .layout import build_layout
from .scoring import ScoreParams


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _load_dataset(data_path: str, config_path: str | None, delimiter: str):
    specs = None
    if config_path:
        try:
            specs = load_column_config(Path(config_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            _fail(f"cannot read config {config_path}: {exc}")
    try:
        return ingest_file(data_path, specs, delimiter)
    except OSError as exc:
        _fail(f"cannot read data {data_path}: {exc}")
    except CausalKitError as exc:
        _fail(str(exc))


def _load_graph(graph_path: str):
    try:
        doc = json.loads(Path(graph_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(f"cannot read graph {graph_path}: {exc}")
    return serialize.graph_from_doc(doc)


def _write_doc(doc: dict, out: str | None):
    text = serialize.dumps(doc)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)


def _parse_assignments(raw: str) -> list[tuple[str, str]]:
    pairs = []
    for part in raw.split(","):
        if "=" not in part:
            _fail(f"bad assignment {part!r}; expected col=value")
        col, value = part.split("=", 1)
        pairs.append((col.strip(), value.strip()))
    return pairs


@click.group()
def main():
    """Causal discovery, what-if, and layout toolkit."""


@main.command("discover")
@click.option("--data", "data_path", required=True, help="Delimited text table.")
@click.option("--config", "config_path", default=None, help="Column config JSON.")
@click.option("--delimiter", default=",")
@click.option("--penalty", default=1.0, show_default=True)
@click.option("--max-parents", default=8, show_default=True)
@click.option("--out", "out_path", default=None, help="Graph export JSON path.")
def cmd_discover(data_path, config_path, delimiter, penalty, max_parents, out_path):
    """Run the greedy structure search and export the graph."""
    ds = _load_dataset(data_path, config_path, delimiter)
    try:
        params = ScoreParams(penalty_discount=penalty, max_parents=max_parents)
    except ValueError as exc:
        _fail(str(exc))
    try:
        graph = discover(ds, params)
    except CausalKitError as exc:
        _fail(str(exc))
    _write_doc(serialize.graph_to_doc(graph, params), out_path)
    click.echo(f"score={graph.score:.6f} edges={len(graph.edges)}", err=True)


@main.command("layout")
@click.option("--graph", "graph_path", required=True)
@click.option("--out", "out_path", default=None)
def cmd_layout(graph_path, out_path):
    """Compute the layered drawing model for an exported graph."""
    graph = _load_graph(graph_path)
    try:
        layout = build_layout(graph)
    except CausalKitError as exc:
        _fail(str(exc))
    _write_doc(serialize.layout_to_doc(layout), out_path)


@main.command("intervene")
@click.option("--graph", "graph_path", required=True)
@click.option("--data", "data_path", required=True)
@click.option("--config", "config_path", default=None)
@click.option("--delimiter", default=",")
@click.option("--set", "assignments", required=True, help="col=value[,col=value]")
@click.option("--samples", default=10_000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_path", default=None)
def cmd_intervene(graph_path, data_path, config_path, delimiter, assignments, samples, seed, out_path):
    """Clamp dimensions and report observational vs estimated distributions."""
    ds = _load_dataset(data_path, config_path, delimiter)
    graph = _load_graph(graph_path)
    try:
        model = fit_cpds(ds, graph)
        coded = tuple((c, ds.code_of(c, v)) for c, v in _parse_assignments(assignments))
        spec = InterventionSpec(assignments=coded, sample_count=samples, seed=seed)
        result = run_intervention(model, spec)
    except CausalKitError as exc:
        _fail(str(exc))
    _write_doc(serialize.intervention_to_doc(model, result), out_path)


@main.command("attribute")
@click.option("--graph", "graph_path", required=True)
@click.option("--data", "data_path", required=True)
@click.option("--config", "config_path", default=None)
@click.option("--delimiter", default=",")
@click.option("--target", required=True, help="col=value")
@click.option("--samples", default=10_000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_path", default=None)
def cmd_attribute(graph_path, data_path, config_path, delimiter, target, samples, seed, out_path):
    """Rank upstream dimensions by their effect on a target value."""
    ds = _load_dataset(data_path, config_path, delimiter)
    graph = _load_graph(graph_path)
    pairs = _parse_assignments(target)
    if len(pairs) != 1:
        _fail("--target takes exactly one col=value pair")
    col, value = pairs[0]
    try:
        model = fit_cpds(ds, graph)
        result = run_attribution(
            model, (col, ds.code_of(col, value)), sample_count=samples, seed=seed
        )
    except CausalKitError as exc:
        _fail(str(exc))
    _write_doc(serialize.attribution_to_doc(model, result), out_path)
    ranking = sorted(result.effects.items(), key=lambda kv: (-kv[1], kv[0]))
    for name, effect in ranking:
        click.echo(f"{name}\t{effect:.6f}", err=True)


@main.command("serve")
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--data-dir", default=None, help="Write-through persistence directory.")
def cmd_serve(port, host, data_dir):
    """Start the HTTP JSON service."""
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(persist_dir=data_dir), host=host, port=port)


if __name__ == "__main__":
    main()
