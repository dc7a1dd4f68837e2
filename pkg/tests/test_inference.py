import itertools

import numpy as np
import pytest

from causalkit import (
    CausalGraph,
    CpdModel,
    InterventionSpec,
    ValueDistribution,
    attribute,
    discover,
    fit_cpds,
    ingest,
    intervene,
    sample_graph,
)
from causalkit.errors import InvalidAssignmentError, UnknownNodeError
from conftest import csv_from_columns, make_ab_model
from oracles import oracle_enum_marginal


def l1(d1: dict, d2: dict) -> float:
    keys = set(d1) | set(d2)
    return sum(abs(d1.get(k, 0.0) - d2.get(k, 0.0)) for k in keys)


def random_binary_model(n_nodes, edges, rng) -> CpdModel:
    """Exact binary model with random CPD rows, plus matching marginals."""
    nodes = [f"v{i}" for i in range(n_nodes)]
    graph = CausalGraph(nodes=nodes, edges={e: 1.0 for e in edges})
    tables = {}
    for node in nodes:
        parents = graph.parents(node)
        node_table = {}
        for cfg in itertools.product(range(2), repeat=len(parents)):
            p = rng.uniform(0.05, 0.95)
            node_table[cfg] = np.array([1 - p, p])
        tables[node] = node_table
    model = CpdModel(
        graph=graph,
        cardinalities={n: 2 for n in nodes},
        value_labels={n: ["0", "1"] for n in nodes},
        tables=tables,
        observational={n: ValueDistribution(n, {0: 0.5, 1: 0.5}) for n in nodes},
    )
    # true observational marginals by enumeration
    for node in nodes:
        dist = oracle_enum_marginal(
            nodes,
            model.cardinalities,
            model.parents,
            lambda nd, cfg: model.tables[nd][cfg],
            node,
        )
        model.observational[node] = ValueDistribution(node, dict(enumerate(dist)))
    return model


def test_fit_root_node_is_smoothed_marginal():
    ds = ingest("A\n" + "a\n" * 9 + "b\n")
    g = CausalGraph(nodes=["A"])
    model = fit_cpds(ds, g, alpha=1.0)
    assert model.row("A", ()).tolist() == pytest.approx([10 / 12, 2 / 12])


def test_fit_unsmoothed_counts():
    cols = {"A": [1] * 10, "B": [0] + [1] * 9}
    ds = ingest(csv_from_columns(cols))
    g = CausalGraph(nodes=["A", "B"], edges={("A", "B"): 1.0})
    model = fit_cpds(ds, g, alpha=0.0)
    assert model.row("B", (0,)).tolist() == pytest.approx([0.1, 0.9])


def test_unseen_configuration_uniform_fallback():
    model = make_ab_model()
    assert model.row("B", (5,)).tolist() == [0.5, 0.5]


def test_fit_errors():
    ds = ingest("A\nx\ny\n")
    g = CausalGraph(nodes=["A", "Z"])
    with pytest.raises(UnknownNodeError):
        fit_cpds(ds, g)
    with pytest.raises(ValueError):
        fit_cpds(ds, CausalGraph(nodes=["A"]), alpha=-1)


def test_probability_rows_sum_to_one(audiology):
    g = discover(audiology)
    model = fit_cpds(audiology, g, alpha=1.0)
    for node, table in model.tables.items():
        for row in table.values():
            assert row.sum() == pytest.approx(1.0, abs=1e-9)
            assert (row > 0).all()


def test_fully_clamped_samples(ab_model):
    spec = InterventionSpec(assignments=(("A", 1), ("B", 0)), sample_count=100, seed=1)
    samples = sample_graph(ab_model, spec)
    assert (samples[:, 0] == 1).all()
    assert (samples[:, 1] == 0).all()


def test_seed_determinism(ab_model):
    spec = InterventionSpec(assignments=(("A", 1),), sample_count=5000, seed=42)
    s1 = sample_graph(ab_model, spec)
    s2 = sample_graph(ab_model, spec)
    assert (s1 == s2).all()


def test_duplicate_assignment_rejected():
    with pytest.raises(InvalidAssignmentError):
        InterventionSpec(assignments=(("A", 0), ("A", 1)))


def test_observational_samples_match_enumeration():
    rng = np.random.default_rng(8)
    model = random_binary_model(
        4, [("v0", "v1"), ("v0", "v2"), ("v1", "v3"), ("v2", "v3")], rng
    )
    spec = InterventionSpec(assignments=(), sample_count=10_000, seed=3)
    samples = sample_graph(model, spec)
    for j, node in enumerate(model.graph.nodes):
        empirical = {
            c: float((samples[:, j] == c).mean()) for c in range(2)
        }
        exact = dict(enumerate(
            oracle_enum_marginal(
                model.graph.nodes,
                model.cardinalities,
                model.parents,
                lambda nd, cfg: model.tables[nd][cfg],
                node,
            )
        ))
        assert l1(empirical, exact) < 0.05


def test_do_does_not_propagate_upstream(ab_model):
    spec = InterventionSpec(assignments=(("B", 1),), sample_count=10_000, seed=5)
    samples = sample_graph(ab_model, spec)
    empirical = {c: float((samples[:, 0] == c).mean()) for c in range(2)}
    assert l1(empirical, {0: 0.5, 1: 0.5}) < 0.05


def test_intervene_point_mass_and_effect(ab_model):
    spec = InterventionSpec(assignments=(("A", 1),), sample_count=50_000, seed=7)
    res = intervene(ab_model, spec)
    d1_a, d2_a = res.per_dimension["A"]
    assert d2_a.proportions == {0: 0.0, 1: 1.0}
    _, d2_b = res.per_dimension["B"]
    assert d2_b.proportions[1] == pytest.approx(0.9, abs=0.02)


def test_intervene_no_descendants(ab_model):
    spec = InterventionSpec(assignments=(("B", 1),), sample_count=10_000, seed=9)
    res = intervene(ab_model, spec)
    d1_a, d2_a = res.per_dimension["A"]
    assert l1(d1_a.proportions, d2_a.proportions) < 0.05


def test_intervene_invalid_value(ab_model):
    with pytest.raises(InvalidAssignmentError):
        intervene(ab_model, InterventionSpec(assignments=(("A", 7),)))
    with pytest.raises(InvalidAssignmentError):
        intervene(ab_model, InterventionSpec(assignments=(("Q", 0),)))


def test_attribution_ab_exact(ab_model):
    res = attribute(ab_model, ("B", 1))
    assert res.effects["A"] == pytest.approx(0.8, abs=1e-12)
    assert res.effects["B"] == 0.0
    assert res.out_of_path == {"B"}


def test_attribution_root_target(ab_model):
    res = attribute(ab_model, ("A", 1))
    assert all(e == 0.0 for e in res.effects.values())
    assert res.out_of_path == {"A", "B"}


def test_attribution_bounds_random_models():
    rng = np.random.default_rng(10)
    model = random_binary_model(
        5,
        [("v0", "v2"), ("v1", "v2"), ("v2", "v3"), ("v1", "v4")],
        rng,
    )
    res = attribute(model, ("v3", 1))
    for node, effect in res.effects.items():
        assert 0.0 <= effect <= 1.0
        if node in res.out_of_path:
            assert effect == 0.0
    assert res.out_of_path == {"v3", "v4"}


def test_attribution_unknown_target(ab_model):
    with pytest.raises(InvalidAssignmentError):
        attribute(ab_model, ("Z", 0))


def test_mc_matches_enumeration_when_forced():
    """Monte Carlo do-marginals converge to the exact enumerated values."""
    import causalkit.inference as inf

    rng = np.random.default_rng(12)
    model = random_binary_model(3, [("v0", "v1"), ("v1", "v2")], rng)
    exact = oracle_enum_marginal(
        model.graph.nodes,
        model.cardinalities,
        model.parents,
        lambda nd, cfg: model.tables[nd][cfg],
        "v2",
        clamps={"v0": 1},
    )
    samples = inf._sample(model, {"v0": 1}, 50_000, seed=21)
    empirical = [float((samples[:, 2] == c).mean()) for c in range(2)]
    assert sum(abs(a - b) for a, b in zip(empirical, exact)) < 0.03
