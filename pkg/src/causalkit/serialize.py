"""JSON document schemas shared by the CLI, the HTTP service, and the UI.

All documents carry ``schemaVersion``; serialization goes through
:func:`dumps` so the CLI files and the service responses are byte-identical
for the same inputs.
"""

from __future__ import annotations

import json

from .data import Dataset
from .discovery import CausalGraph
from .inference import AttributionResult, CpdModel, InterventionResult
from .layout import LayoutGraph
from .scoring import ScoreParams

SCHEMA_VERSION = 1


def dumps(doc: dict) -> str:
    """Canonical JSON used everywhere a document leaves the process."""
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def graph_to_doc(graph: CausalGraph, params: ScoreParams | None = None) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "nodes": [{"id": n, "name": n} for n in graph.nodes],
        "edges": [
            {"source": s, "target": t, "uncertainty": u}
            for (s, t), u in sorted(graph.edges.items())
        ],
        "score": graph.score,
        "params": {
            "penaltyDiscount": params.penalty_discount if params else None,
            "maxParents": params.max_parents if params else None,
        },
    }


def graph_from_doc(doc: dict) -> CausalGraph:
    graph = CausalGraph(
        nodes=[n["id"] for n in doc["nodes"]],
        edges={
            (e["source"], e["target"]): e["uncertainty"] for e in doc["edges"]
        },
    )
    graph.score = doc.get("score", 0.0)
    return graph


def layout_to_doc(
    layout: LayoutGraph,
    dataset: Dataset | None = None,
    attribution: AttributionResult | None = None,
    glyph_display_cap: int = 5,
) -> dict:
    """Layout export consumed by the web UI.

    Glyph capping is a rendering hint: ``displayedGlyphs`` caps at
    ``glyph_display_cap`` while ``hiddenCauses`` stays complete.
    """
    nodes = []
    for n in sorted(layout.nodes, key=lambda x: (x.layer, x.order_in_layer)):
        entry = {
            "id": n.id,
            "label": n.id,
            "kind": n.kind,
            "members": n.members,
            "layer": n.layer,
            "orderInLayer": n.order_in_layer,
            "role": n.role,
            "hiddenCauses": n.hidden_causes,
            "displayedGlyphs": min(len(n.hidden_causes), glyph_display_cap),
        }
        if dataset is not None and n.kind == "plain" and n.id in dataset.column_names:
            dist = dataset.marginal(n.id)
            entry["valueDistribution"] = dist.as_labeled(dataset.labels(n.id))
        if attribution is not None:
            score = max(
                (attribution.effects.get(m, 0.0) for m in (n.members or [n.id])),
                default=0.0,
            )
            entry["attributionScore"] = score
        nodes.append(entry)
    return {
        "schemaVersion": SCHEMA_VERSION,
        "nodes": nodes,
        "drawnEdges": [
            {"source": s, "target": t, "uncertainty": u}
            for s, t, u in layout.drawn_edges
        ],
        "hiddenEdges": [
            {"source": s, "target": t, "uncertainty": u}
            for s, t, u in layout.hidden_edges
        ],
        "layers": layout.layers,
        "crossings": layout.crossings,
    }


def intervention_to_doc(model: CpdModel, result: InterventionResult) -> dict:
    per_dimension = {}
    for node, (d1, d2) in result.per_dimension.items():
        labels = model.value_labels[node]
        per_dimension[node] = {
            "original": d1.as_labeled(labels),
            "estimated": d2.as_labeled(labels),
        }
    return {"schemaVersion": SCHEMA_VERSION, "perDimension": per_dimension}


def attribution_to_doc(model: CpdModel, result: AttributionResult) -> dict:
    col, code = result.target
    return {
        "schemaVersion": SCHEMA_VERSION,
        "target": {"column": col, "value": model.value_labels[col][code]},
        "effects": {n: e for n, e in sorted(result.effects.items())},
        "outOfPath": sorted(result.out_of_path),
    }


def dataset_summary(ds: Dataset) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "sampleSize": ds.sample_size,
        "columns": [
            {
                "name": spec.name,
                "kind": spec.kind,
                "cardinality": ds.cardinality(spec.name),
                "maxDisplayedValues": spec.max_displayed_values,
                "marginal": ds.marginal(spec.name).as_labeled(ds.labels(spec.name)),
            }
            for spec in ds.columns
        ],
    }
