"""Conditional probability tables, interventional sampling, and attribution.

Sampling follows the topological order of the graph; intervened nodes are
clamped (their CPDs ignored), so effects propagate to descendants only.
Attribution compares paired interventions do(V=v) vs do(V!=v); both
probabilities come from exact enumeration when the target's ancestral state
space is small, otherwise from seeded Monte Carlo.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, ValueDistribution
from .discovery import CausalGraph
from .errors import InvalidAssignmentError, UnknownNodeError

SAMPLE_CHUNK = 10_000
ENUMERATION_LIMIT = 1_000_000


@dataclass(frozen=True)
class InterventionSpec:
    """do()-assignments plus sampling budget; assignments are value codes."""

    assignments: tuple[tuple[str, int], ...] = ()
    sample_count: int = 10_000
    seed: int = 0

    def __post_init__(self):
        cols = [c for c, _ in self.assignments]
        if len(cols) != len(set(cols)):
            raise InvalidAssignmentError("a column appears twice in the assignments")
        if self.sample_count < 1:
            raise ValueError("sample_count must be positive")


@dataclass
class InterventionResult:
    """Per-dimension (observational, post-intervention) distribution pairs."""

    per_dimension: dict[str, tuple[ValueDistribution, ValueDistribution]]


@dataclass
class AttributionResult:
    target: tuple[str, int]
    effects: dict[str, float]
    out_of_path: set[str]


@dataclass
class CpdModel:
    """Per-node CPTs over a causal graph, ready for ancestral sampling.

    ``tables[node]`` maps a parent-configuration tuple (codes, parents in
    sorted order) to a probability row over the node's values; configurations
    unseen at fit time fall back to the uniform row.
    """

    graph: CausalGraph
    cardinalities: dict[str, int]
    value_labels: dict[str, list[str]]
    tables: dict[str, dict[tuple[int, ...], np.ndarray]]
    observational: dict[str, ValueDistribution]
    alpha: float = 1.0
    _order: list[str] = field(init=False, repr=False)

    def __post_init__(self):
        order = self.graph.topological_order()
        if order is None:
            raise ValueError("model graph must be acyclic")
        self._order = order

    def parents(self, node: str) -> list[str]:
        return self.graph.parents(node)

    def row(self, node: str, config: tuple[int, ...]) -> np.ndarray:
        table = self.tables[node]
        row = table.get(config)
        if row is None:
            r = self.cardinalities[node]
            return np.full(r, 1.0 / r)
        return row

    def validate_assignment(self, column: str, code: int):
        if column not in self.cardinalities:
            raise InvalidAssignmentError(f"unknown column: {column!r}")
        if not 0 <= code < self.cardinalities[column]:
            raise InvalidAssignmentError(
                f"value code {code} out of range for column {column!r}"
            )


def fit_cpds(ds: Dataset, graph: CausalGraph, alpha: float = 1.0) -> CpdModel:
    """Fit smoothed CPTs: row_k = (N_ijk + a) / (N_ij + a*r)."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    for node in graph.nodes:
        if node not in ds.column_names:
            raise UnknownNodeError(f"graph node {node!r} missing from dataset")
    tables: dict[str, dict[tuple[int, ...], np.ndarray]] = {}
    for node in graph.nodes:
        parents = tuple(graph.parents(node))
        counts = ds.joint_counts(node, parents, max_parents=len(parents) or 1)
        r = ds.cardinality(node)
        node_table = {}
        for config, cnt in counts.items():
            node_table[config] = (cnt + alpha) / (cnt.sum() + alpha * r)
        tables[node] = node_table
    return CpdModel(
        graph=graph,
        cardinalities={n: ds.cardinality(n) for n in graph.nodes},
        value_labels={n: ds.labels(n) for n in graph.nodes},
        tables=tables,
        observational={n: ds.marginal(n) for n in graph.nodes},
        alpha=alpha,
    )


def sample_graph(model: CpdModel, spec: InterventionSpec) -> np.ndarray:
    """Draw spec.sample_count complete rows (codes, graph-node order).

    Chunked with per-chunk derived seeds so the stream is independent of the
    execution schedule.
    """
    clamps = {}
    for column, code in spec.assignments:
        model.validate_assignment(column, code)
        clamps[column] = code
    return _sample(model, clamps, spec.sample_count, spec.seed)


def _sample(
    model: CpdModel,
    clamps: dict[str, int | np.ndarray],
    sample_count: int,
    seed: int,
) -> np.ndarray:
    """Ancestral sampling with point or distribution clamps."""
    node_pos = {n: i for i, n in enumerate(model.graph.nodes)}
    n_chunks = -(-sample_count // SAMPLE_CHUNK)
    seeds = np.random.SeedSequence(seed).spawn(n_chunks)
    out = np.empty((sample_count, len(model.graph.nodes)), dtype=np.int64)
    start = 0
    for chunk_seed in seeds:
        size = min(SAMPLE_CHUNK, sample_count - start)
        rng = np.random.default_rng(chunk_seed)
        chunk = np.empty((size, len(model.graph.nodes)), dtype=np.int64)
        for node in model._order:
            j = node_pos[node]
            clamp = clamps.get(node)
            if clamp is not None and np.isscalar(clamp):
                chunk[:, j] = clamp
                continue
            if clamp is not None:
                chunk[:, j] = _draw_rows(np.asarray(clamp)[None, :], size, rng, tile=True)
                continue
            parents = model.parents(node)
            if not parents:
                row = model.row(node, ())
                chunk[:, j] = _draw_rows(row[None, :], size, rng, tile=True)
            else:
                rows = _lookup_rows(model, node, chunk[:, [node_pos[p] for p in parents]])
                chunk[:, j] = _draw_rows(rows, size, rng, tile=False)
        out[start : start + size] = chunk
        start += size
    return out


def _lookup_rows(model: CpdModel, node: str, parent_codes: np.ndarray) -> np.ndarray:
    """CPD row per sample for the given parent code matrix (n, n_parents)."""
    parents = model.parents(node)
    radices = [model.cardinalities[p] for p in parents]
    ids = np.zeros(len(parent_codes), dtype=np.int64)
    for k, r in enumerate(radices):
        ids = ids * r + parent_codes[:, k]
    table = model.tables[node]
    r_child = model.cardinalities[node]
    known_ids = []
    for config in table:
        cid = 0
        for k, r in enumerate(radices):
            cid = cid * r + config[k]
        known_ids.append(cid)
    order = np.argsort(known_ids)
    known_sorted = np.asarray(known_ids)[order]
    rows = np.vstack([list(table.values())[i] for i in order]) if table else np.empty((0, r_child))
    uniform = np.full(r_child, 1.0 / r_child)
    pos = np.searchsorted(known_sorted, ids)
    pos = np.clip(pos, 0, max(len(known_sorted) - 1, 0))
    out = np.empty((len(ids), r_child))
    if len(known_sorted):
        hit = known_sorted[pos] == ids
        out[hit] = rows[pos[hit]]
        out[~hit] = uniform
    else:
        out[:] = uniform
    return out


def _draw_rows(rows: np.ndarray, size: int, rng, tile: bool) -> np.ndarray:
    """Inverse-CDF draw; one shared row (tile=True) or one row per sample."""
    u = rng.random(size)
    cdf = np.cumsum(rows, axis=1)
    cdf[:, -1] = 1.0  # guard against rounding drift in the last bin
    if tile:
        return np.searchsorted(cdf[0], u, side="right").clip(0, rows.shape[1] - 1)
    return (u[:, None] < cdf).argmax(axis=1)


def intervene(model: CpdModel, spec: InterventionSpec) -> InterventionResult:
    """Observational vs post-intervention distribution for every dimension."""
    samples = sample_graph(model, spec)
    assigned = dict(spec.assignments)
    per_dimension = {}
    for j, node in enumerate(model.graph.nodes):
        d1 = model.observational[node]
        r = model.cardinalities[node]
        if node in assigned:
            props = {c: (1.0 if c == assigned[node] else 0.0) for c in range(r)}
        else:
            counts = np.bincount(samples[:, j], minlength=r)
            props = {c: counts[c] / spec.sample_count for c in range(r)}
        per_dimension[node] = (d1, ValueDistribution(node, props))
    return InterventionResult(per_dimension=per_dimension)


def attribute(
    model: CpdModel,
    target: tuple[str, int],
    sample_count: int = 10_000,
    seed: int = 0,
) -> AttributionResult:
    """Effect of every upstream variable on the proportion of a target value.

    effect(V) = max over values v of |P(t | do(V=v)) - P(t | do(V!=v))|,
    where do(V!=v) draws V from its observational marginal restricted to the
    complement values, renormalized. Nodes with no directed path to the
    target get effect 0.
    """
    target_col, target_code = target
    if target_col not in model.cardinalities:
        raise InvalidAssignmentError(f"unknown target column: {target_col!r}")
    model.validate_assignment(target_col, target_code)

    in_path = model.graph.ancestors(target_col)
    effects = {n: 0.0 for n in model.graph.nodes}
    for node in sorted(in_path):
        best = 0.0
        r = model.cardinalities[node]
        if r < 2:
            continue
        marginal = np.array(
            [model.observational[node].proportions[c] for c in range(r)]
        )
        for v in range(r):
            p_do = _do_probability(model, {node: v}, target, sample_count, seed)
            complement = marginal.copy()
            complement[v] = 0.0
            total = complement.sum()
            if total > 0:
                complement /= total
            else:
                # all observed mass sits on v: fall back to uniform complement
                complement[:] = 1.0 / (r - 1)
                complement[v] = 0.0
            p_not = _do_probability(model, {node: complement}, target, sample_count, seed)
            best = max(best, abs(p_do - p_not))
        effects[node] = best
    out_of_path = {n for n in model.graph.nodes if n not in in_path}
    return AttributionResult(target=target, effects=effects, out_of_path=out_of_path)


def _do_probability(
    model: CpdModel,
    clamps: dict[str, int | np.ndarray],
    target: tuple[str, int],
    sample_count: int,
    seed: int,
) -> float:
    target_col, target_code = target
    relevant = model.graph.ancestors(target_col) | {target_col}
    space = 1
    for n in relevant:
        space *= model.cardinalities[n]
        if space > ENUMERATION_LIMIT:
            break
    if space <= ENUMERATION_LIMIT:
        dist = enumerate_do_marginal(model, clamps, target_col)
        return float(dist[target_code])
    samples = _sample(model, clamps, sample_count, seed)
    j = model.graph.nodes.index(target_col)
    return float((samples[:, j] == target_code).mean())


def enumerate_do_marginal(
    model: CpdModel, clamps: dict[str, int | np.ndarray], target_col: str
) -> np.ndarray:
    """Exact target marginal under clamps, by tensor products over ancestors.

    The ancestral set of the target is closed under parents, so the joint over
    it factorizes with no dangling references.
    """
    relevant = model.graph.ancestors(target_col) | {target_col}
    nodes = [n for n in model._order if n in relevant]
    axis = {n: i for i, n in enumerate(nodes)}
    dims = [model.cardinalities[n] for n in nodes]
    joint = np.ones([1] * len(nodes))
    for node in nodes:
        clamp = clamps.get(node)
        r = model.cardinalities[node]
        if clamp is not None:
            vec = np.zeros(r)
            if np.isscalar(clamp):
                vec[int(clamp)] = 1.0
            else:
                vec = np.asarray(clamp, dtype=float)
            shape = [1] * len(nodes)
            shape[axis[node]] = r
            joint = joint * vec.reshape(shape)
            continue
        parents = model.parents(node)
        involved = sorted([axis[p] for p in parents] + [axis[node]])
        dense = _dense_cpt(model, node, parents, involved, axis)
        shape = [1] * len(nodes)
        for a in involved:
            shape[a] = dims[a]
        joint = joint * dense.reshape(shape)
    sum_axes = tuple(i for i, n in enumerate(nodes) if n != target_col)
    return joint.sum(axis=sum_axes)


def _dense_cpt(model, node, parents, involved_axes, axis):
    """CPT as a dense array whose axes follow ascending joint-axis order."""
    r = model.cardinalities[node]
    pr = [model.cardinalities[p] for p in parents]
    dense = np.empty(pr + [r])
    if parents:
        for config in np.ndindex(*pr):
            dense[config] = model.row(node, tuple(config))
    else:
        dense[...] = model.row(node, ())
    # current axis order: parents (sorted-name order) then child
    current = [axis[p] for p in parents] + [axis[node]]
    perm = np.argsort(current)
    return np.transpose(dense, perm)
