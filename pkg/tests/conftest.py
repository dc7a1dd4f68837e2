import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from causalkit import CausalGraph, CpdModel, ValueDistribution, ingest_file

REPO = Path(__file__).resolve().parent.parent
AUDIOLOGY_CSV = REPO / "data" / "audiology.csv"


@pytest.fixture(scope="session")
def audiology():
    return ingest_file(AUDIOLOGY_CSV)


def make_ab_model(p_a1=0.5, p_b1_given_a=(0.1, 0.9)) -> CpdModel:
    """Exact two-node model A -> B with binary CPDs."""
    graph = CausalGraph(nodes=["A", "B"], edges={("A", "B"): 1.0})
    p0, p1 = p_b1_given_a
    marg_b1 = (1 - p_a1) * p0 + p_a1 * p1
    return CpdModel(
        graph=graph,
        cardinalities={"A": 2, "B": 2},
        value_labels={"A": ["0", "1"], "B": ["0", "1"]},
        tables={
            "A": {(): np.array([1 - p_a1, p_a1])},
            "B": {(0,): np.array([1 - p0, p0]), (1,): np.array([1 - p1, p1])},
        },
        observational={
            "A": ValueDistribution("A", {0: 1 - p_a1, 1: p_a1}),
            "B": ValueDistribution("B", {0: 1 - marg_b1, 1: marg_b1}),
        },
    )


@pytest.fixture
def ab_model():
    return make_ab_model()


def csv_from_columns(columns: dict[str, list]) -> str:
    names = list(columns)
    n = len(next(iter(columns.values())))
    lines = [",".join(names)]
    for i in range(n):
        lines.append(",".join(str(columns[name][i]) for name in names))
    return "\n".join(lines) + "\n"
