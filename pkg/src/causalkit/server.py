"""HTTP JSON service exposing datasets, discovery, layout, and what-if queries.

State is held in memory for the process lifetime; an optional persistence
directory write-through re-loads uploads and discovered graphs on restart.
All compute endpoints are deterministic given the request body (seeds are
part of the body), and responses use the same canonical serializer as the
CLI, so the two surfaces are byte-identical.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from pydantic import BaseModel

from . import serialize
from .data import Dataset, ingest, load_column_config
from .discovery import CausalGraph, causal_subgraph, discover
from .errors import CausalKitError, UnknownNodeError
from .inference import CpdModel, InterventionSpec, attribute, fit_cpds, intervene
from .layout import LayoutGraph, build_layout
from .scoring import ScoreParams

DEFAULT_UPLOAD_CAP = 100 * 1024 * 1024


@dataclass
class GraphBundle:
    dataset_id: str
    dataset: Dataset
    graph: CausalGraph
    model: CpdModel
    layout: LayoutGraph
    params: ScoreParams


@dataclass
class Store:
    datasets: dict[str, Dataset] = field(default_factory=dict)
    graphs: dict[str, GraphBundle] = field(default_factory=dict)
    raw_uploads: dict[str, dict] = field(default_factory=dict)
    persist_dir: Path | None = None

    def persist_dataset(self, dataset_id: str):
        if self.persist_dir is None:
            return
        self.persist_dir.mkdir(parents=True, exist_ok=True)
        path = self.persist_dir / f"dataset-{dataset_id}.json"
        path.write_text(json.dumps(self.raw_uploads[dataset_id]), encoding="utf-8")

    def persist_graph(self, graph_id: str):
        if self.persist_dir is None:
            return
        self.persist_dir.mkdir(parents=True, exist_ok=True)
        bundle = self.graphs[graph_id]
        doc = {
            "datasetId": bundle.dataset_id,
            "graph": serialize.graph_to_doc(bundle.graph, bundle.params),
        }
        path = self.persist_dir / f"graph-{graph_id}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")

    def reload(self):
        if self.persist_dir is None or not self.persist_dir.is_dir():
            return
        for path in sorted(self.persist_dir.glob("dataset-*.json")):
            dataset_id = path.stem.removeprefix("dataset-")
            payload = json.loads(path.read_text(encoding="utf-8"))
            specs = load_column_config(payload.get("config") or {})
            self.raw_uploads[dataset_id] = payload
            self.datasets[dataset_id] = ingest(
                payload["data"], specs, payload.get("delimiter", ",")
            )
        for path in sorted(self.persist_dir.glob("graph-*.json")):
            graph_id = path.stem.removeprefix("graph-")
            doc = json.loads(path.read_text(encoding="utf-8"))
            dataset = self.datasets.get(doc["datasetId"])
            if dataset is None:
                continue
            graph = serialize.graph_from_doc(doc["graph"])
            params_doc = doc["graph"].get("params") or {}
            params = ScoreParams(
                penalty_discount=params_doc.get("penaltyDiscount") or 1.0,
                max_parents=params_doc.get("maxParents") or 8,
            )
            model = fit_cpds(dataset, graph)
            self.graphs[graph_id] = GraphBundle(
                dataset_id=doc["datasetId"],
                dataset=dataset,
                graph=graph,
                model=model,
                layout=build_layout(graph),
                params=params,
            )


class DatasetUpload(BaseModel):
    data: str
    config: dict | None = None
    delimiter: str = ","


class DiscoverRequest(BaseModel):
    penaltyDiscount: float = 1.0
    maxParents: int = 8


class InterveneRequest(BaseModel):
    assignments: list[dict]
    sampleCount: int = 10_000
    seed: int = 0


class AttributeRequest(BaseModel):
    column: str
    value: str
    sampleCount: int = 10_000
    seed: int = 0


def _json(doc: dict, status_code: int = 200) -> Response:
    return Response(
        content=serialize.dumps(doc),
        media_type="application/json",
        status_code=status_code,
    )


def _error(status_code: int, code: str, message: str) -> Response:
    return _json(
        {"schemaVersion": serialize.SCHEMA_VERSION, "code": code, "message": message},
        status_code,
    )


def create_app(
    persist_dir: str | Path | None = None,
    upload_cap: int = DEFAULT_UPLOAD_CAP,
) -> FastAPI:
    app = FastAPI(title="causalkit")
    store = Store(persist_dir=Path(persist_dir) if persist_dir else None)
    store.reload()
    app.state.store = store

    @app.middleware("http")
    async def payload_cap(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > upload_cap:
            return _error(413, "payload_too_large", "request body exceeds the cap")
        return await call_next(request)

    @app.post("/datasets")
    def create_dataset(body: DatasetUpload):
        try:
            specs = load_column_config(body.config or {})
            dataset = ingest(body.data, specs, body.delimiter)
        except CausalKitError as exc:
            return _error(400, exc.code, str(exc))
        dataset_id = uuid.uuid4().hex
        store.datasets[dataset_id] = dataset
        store.raw_uploads[dataset_id] = {
            "data": body.data,
            "config": body.config,
            "delimiter": body.delimiter,
        }
        store.persist_dataset(dataset_id)
        return _json(
            {"datasetId": dataset_id, "summary": serialize.dataset_summary(dataset)}
        )

    @app.post("/datasets/{dataset_id}/discover")
    def run_discover(dataset_id: str, body: DiscoverRequest):
        dataset = store.datasets.get(dataset_id)
        if dataset is None:
            return _error(404, "unknown_dataset", f"no dataset {dataset_id}")
        try:
            params = ScoreParams(
                penalty_discount=body.penaltyDiscount, max_parents=body.maxParents
            )
        except ValueError as exc:
            return _error(422, "invalid_params", str(exc))
        try:
            graph = discover(dataset, params)
        except CausalKitError as exc:
            return _error(422, exc.code, str(exc))
        graph_id = uuid.uuid4().hex
        store.graphs[graph_id] = GraphBundle(
            dataset_id=dataset_id,
            dataset=dataset,
            graph=graph,
            model=fit_cpds(dataset, graph),
            layout=build_layout(graph),
            params=params,
        )
        store.persist_graph(graph_id)
        return _json(
            {
                "schemaVersion": serialize.SCHEMA_VERSION,
                "graphId": graph_id,
                "score": graph.score,
                "edgeCount": len(graph.edges),
            }
        )

    @app.get("/graphs/{graph_id}")
    def get_graph(graph_id: str, focus: str | None = None):
        bundle = store.graphs.get(graph_id)
        if bundle is None:
            return _error(404, "unknown_graph", f"no graph {graph_id}")
        if focus is None:
            layout = bundle.layout
        else:
            try:
                layout = build_layout(causal_subgraph(bundle.graph, focus))
            except UnknownNodeError as exc:
                return _error(422, exc.code, str(exc))
        return _json(serialize.layout_to_doc(layout, bundle.dataset))

    @app.post("/graphs/{graph_id}/intervene")
    def run_intervene(graph_id: str, body: InterveneRequest):
        bundle = store.graphs.get(graph_id)
        if bundle is None:
            return _error(404, "unknown_graph", f"no graph {graph_id}")
        try:
            assignments = tuple(
                (a["column"], bundle.dataset.code_of(a["column"], a["value"]))
                for a in body.assignments
            )
            spec = InterventionSpec(
                assignments=assignments,
                sample_count=body.sampleCount,
                seed=body.seed,
            )
            result = intervene(bundle.model, spec)
        except CausalKitError as exc:
            return _error(422, exc.code, str(exc))
        return _json(serialize.intervention_to_doc(bundle.model, result))

    @app.post("/graphs/{graph_id}/attribute")
    def run_attribute(graph_id: str, body: AttributeRequest):
        bundle = store.graphs.get(graph_id)
        if bundle is None:
            return _error(404, "unknown_graph", f"no graph {graph_id}")
        try:
            code = bundle.dataset.code_of(body.column, body.value)
            result = attribute(
                bundle.model,
                (body.column, code),
                sample_count=body.sampleCount,
                seed=body.seed,
            )
        except CausalKitError as exc:
            return _error(422, exc.code, str(exc))
        return _json(serialize.attribution_to_doc(bundle.model, result))

    return app
