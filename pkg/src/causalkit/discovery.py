"""Greedy forward/backward structure search over DAGs.

Forward phase: repeatedly apply the single-edge addition with the largest
positive score delta (acyclicity- and cap-respecting). Backward phase: same
with single-edge deletions. Each edge of the final graph carries an
uncertainty, the score drop that deleting it would cause; the backward
stopping rule makes it strictly positive.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .data import Dataset
from .errors import EdgeAbsentError, TooFewColumnsError, UnknownNodeError
from .scoring import (
    INELIGIBLE,
    ScoreCache,
    ScoreParams,
    delta_delete,
    delta_insert,
    graph_score,
    local_score,
)


TIE_EPSILON = 1e-9


@dataclass
class Move:
    kind: str  # "insert" | "delete"
    source: str
    target: str
    delta: float


@dataclass
class CausalGraph:
    """DAG over named nodes; each edge carries a positive uncertainty."""

    nodes: list[str]
    edges: dict[tuple[str, str], float] = field(default_factory=dict)
    score_trace: list[Move] = field(default_factory=list)
    score: float = 0.0

    def __post_init__(self):
        self._parents: dict[str, set[str]] = {n: set() for n in self.nodes}
        self._children: dict[str, set[str]] = {n: set() for n in self.nodes}
        for (s, t) in self.edges:
            self._parents[t].add(s)
            self._children[s].add(t)

    def copy(self) -> "CausalGraph":
        return CausalGraph(
            nodes=list(self.nodes),
            edges=dict(self.edges),
            score_trace=list(self.score_trace),
            score=self.score,
        )

    def has_edge(self, source: str, target: str) -> bool:
        return (source, target) in self.edges

    def parents(self, node: str) -> list[str]:
        return sorted(self._parents[node])

    def children(self, node: str) -> list[str]:
        return sorted(self._children[node])

    def add_edge(self, source: str, target: str, uncertainty: float = 0.0):
        self.edges[(source, target)] = uncertainty
        self._parents[target].add(source)
        self._children[source].add(target)

    def remove_edge(self, source: str, target: str):
        if (source, target) not in self.edges:
            raise EdgeAbsentError(f"edge {source}->{target} not in graph")
        del self.edges[(source, target)]
        self._parents[target].discard(source)
        self._children[source].discard(target)

    def has_path(self, source: str, target: str) -> bool:
        """Is there a directed path source ->* target?"""
        if source == target:
            return True
        stack = [source]
        seen = {source}
        while stack:
            node = stack.pop()
            for child in self._children[node]:
                if child == target:
                    return True
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return False

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> list[str] | None:
        """Kahn's algorithm; None when a cycle exists. Deterministic order."""
        indeg = {n: len(self._parents[n]) for n in self.nodes}
        ready = sorted(n for n in self.nodes if indeg[n] == 0)
        order: list[str] = []
        while ready:
            node = ready.pop(0)
            order.append(node)
            newly = []
            for child in self._children[node]:
                indeg[child] -= 1
                if indeg[child] == 0:
                    newly.append(child)
            if newly:
                ready = sorted(ready + newly)
        return order if len(order) == len(self.nodes) else None

    def ancestors(self, node: str) -> set[str]:
        if node not in self._parents:
            raise UnknownNodeError(f"unknown node: {node!r}")
        out: set[str] = set()
        stack = list(self._parents[node])
        while stack:
            cur = stack.pop()
            if cur not in out:
                out.add(cur)
                stack.extend(self._parents[cur])
        return out

    def descendants(self, node: str) -> set[str]:
        if node not in self._children:
            raise UnknownNodeError(f"unknown node: {node!r}")
        out: set[str] = set()
        stack = list(self._children[node])
        while stack:
            cur = stack.pop()
            if cur not in out:
                out.add(cur)
                stack.extend(self._children[cur])
        return out


def discover(
    ds: Dataset,
    params: ScoreParams = ScoreParams(),
    seed_graph: CausalGraph | None = None,
    n_jobs: int = 1,
) -> CausalGraph:
    """Run the forward/backward greedy search and annotate edge uncertainties.

    Deterministic for fixed inputs: ties between equal deltas break
    lexicographically by (source column index, target column index), and
    parallel evaluation reduces to the same argmax as sequential.
    """
    names = ds.column_names
    if len(names) < 2:
        raise TooFewColumnsError("discovery needs at least 2 columns")
    if seed_graph is not None:
        if sorted(seed_graph.nodes) != sorted(names):
            raise UnknownNodeError("seed graph nodes must match dataset columns")
        if not seed_graph.is_acyclic():
            raise ValueError("seed graph must be acyclic")
        graph = seed_graph.copy()
    else:
        graph = CausalGraph(nodes=list(names))
    graph.score_trace = []

    cache = ScoreCache()
    order = {name: i for i, name in enumerate(names)}
    pool = ThreadPoolExecutor(max_workers=n_jobs) if n_jobs > 1 else None
    try:
        _greedy_phase(ds, graph, params, cache, order, forward=True, pool=pool)
        _greedy_phase(ds, graph, params, cache, order, forward=False, pool=pool)
    finally:
        if pool is not None:
            pool.shutdown()

    for (s, t) in sorted(graph.edges, key=lambda e: (order[e[0]], order[e[1]])):
        graph.edges[(s, t)] = edge_uncertainty(ds, graph, (s, t), params, cache)
    graph.score = graph_score(ds, graph, params, cache)
    return graph


def _greedy_phase(ds, graph, params, cache, order, forward: bool, pool=None):
    kind = "insert" if forward else "delete"
    while True:
        if forward:
            candidates = _insert_candidates(graph, params)
            evaluate = lambda e: delta_insert(ds, graph, e[0], e[1], params, cache)
        else:
            candidates = sorted(
                graph.edges, key=lambda e: (order[e[0]], order[e[1]])
            )
            evaluate = lambda e: delta_delete(ds, graph, e[0], e[1], params, cache)
        if not candidates:
            return
        if pool is not None:
            deltas = list(pool.map(evaluate, candidates))
        else:
            deltas = [evaluate(e) for e in candidates]

        best_edge, best_delta = None, 0.0
        for edge, delta in zip(candidates, deltas):
            # TIE_EPSILON absorbs float noise between mathematically equal
            # deltas (e.g. the two orientations of a fresh pair), so ties
            # resolve by the lexicographic candidate order.
            if delta > best_delta + TIE_EPSILON:
                best_edge, best_delta = edge, delta
        if best_edge is None:
            return
        source, target = best_edge
        if forward:
            graph.add_edge(source, target)
        else:
            graph.remove_edge(source, target)
        graph.score_trace.append(Move(kind, source, target, best_delta))


def _insert_candidates(graph: CausalGraph, params: ScoreParams):
    """Ordered pairs not yet adjacent whose addition keeps the graph acyclic."""
    out = []
    for source in graph.nodes:
        for target in graph.nodes:
            if source == target:
                continue
            if graph.has_edge(source, target) or graph.has_edge(target, source):
                continue
            if len(graph._parents[target]) + 1 > params.max_parents:
                continue
            if graph.has_path(target, source):
                continue
            out.append((source, target))
    return out


def edge_uncertainty(
    ds: Dataset,
    graph: CausalGraph,
    edge: tuple[str, str],
    params: ScoreParams = ScoreParams(),
    cache: ScoreCache | None = None,
) -> float:
    """Score drop from removing the edge: S(G) - S(G without e)."""
    source, target = edge
    if not graph.has_edge(source, target):
        raise EdgeAbsentError(f"edge {source}->{target} not in graph")
    pa = tuple(sorted(graph.parents(target)))
    reduced = tuple(p for p in pa if p != source)
    return local_score(ds, target, pa, params, cache) - local_score(
        ds, target, reduced, params, cache
    )


def causal_subgraph(graph: CausalGraph, node: str) -> CausalGraph:
    """Induced subgraph on the node plus all its ancestors and descendants."""
    if node not in graph._parents:
        raise UnknownNodeError(f"unknown node: {node!r}")
    keep = graph.ancestors(node) | graph.descendants(node) | {node}
    nodes = [n for n in graph.nodes if n in keep]
    edges = {
        (s, t): u for (s, t), u in graph.edges.items() if s in keep and t in keep
    }
    return CausalGraph(nodes=nodes, edges=edges)
