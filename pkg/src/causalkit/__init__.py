"""Causal what-if engine for categorical tabular data.

Discovers a causal DAG with a greedy score-based search, quantifies
per-edge uncertainty, answers intervention and attribution queries by
sampling the fitted network, and lays the DAG out in readable layers.
"""

from .data import ColumnSpec, Dataset, ValueDistribution, ingest, ingest_file
from .discovery import CausalGraph, causal_subgraph, discover, edge_uncertainty
from .inference import (
    AttributionResult,
    CpdModel,
    InterventionResult,
    InterventionSpec,
    attribute,
    fit_cpds,
    intervene,
    sample_graph,
)
from .layout import LayoutGraph, build_layout
from .scoring import ScoreParams, local_score

__all__ = [
    "AttributionResult",
    "CausalGraph",
    "ColumnSpec",
    "CpdModel",
    "Dataset",
    "InterventionResult",
    "InterventionSpec",
    "LayoutGraph",
    "ScoreParams",
    "ValueDistribution",
    "attribute",
    "build_layout",
    "causal_subgraph",
    "discover",
    "edge_uncertainty",
    "fit_cpds",
    "ingest",
    "ingest_file",
    "intervene",
    "local_score",
    "sample_graph",
]

__version__ = "0.1.0"
