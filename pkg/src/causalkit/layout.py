"""Layered drawing model for causal DAGs.

Pipeline: contract qualifying chains into aggregate nodes, assign layers by
longest path from the roots, hide edges that span more than one layer
(recording them as glyph counts on the target), then order each layer with
leaves pinned left and a greedy crossing-reducing sweep.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .discovery import CausalGraph
from .errors import CycleError

SWEEP_CAP = 20


@dataclass
class LayoutNode:
    id: str
    kind: str = "plain"  # "plain" | "aggregate"
    members: list[str] = field(default_factory=list)
    layer: int = 0
    order_in_layer: int = 0
    role: str = "internal"  # "root" | "leaf" | "internal"
    hidden_causes: list[str] = field(default_factory=list)


@dataclass
class LayoutGraph:
    nodes: list[LayoutNode]
    drawn_edges: list[tuple[str, str, float]]
    layers: int
    crossings: int
    hidden_edges: list[tuple[str, str, float]] = field(default_factory=list)

    def node(self, node_id: str) -> LayoutNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)


def assign_layers(graph: CausalGraph) -> dict[str, int]:
    """Layer = 0 for roots, else 1 + max layer over causes."""
    order = graph.topological_order()
    if order is None:
        raise CycleError("layer assignment requires an acyclic graph")
    layers: dict[str, int] = {}
    for node in order:
        parents = graph.parents(node)
        layers[node] = max((layers[p] for p in parents), default=-1) + 1
    return layers


def aggregate_chains(graph: CausalGraph) -> tuple[CausalGraph, dict[str, list[str]]]:
    """Contract maximal interior chain runs into aggregate nodes.

    A node qualifies as chain interior when its only incident edges are one
    in-edge and one out-edge. Runs of length >= 2 collapse into one node
    (single interior nodes gain nothing: no layer is saved); endpoints with
    external edges stay outside the aggregate.
    """
    interior = {
        n
        for n in graph.nodes
        if len(graph._parents[n]) == 1 and len(graph._children[n]) == 1
    }
    runs: list[list[str]] = []
    seen: set[str] = set()
    for node in graph.nodes:
        if node not in interior or node in seen:
            continue
        run = [node]
        # walk upstream
        cur = node
        while True:
            (p,) = graph._parents[cur]
            if p in interior and p not in seen:
                run.insert(0, p)
                cur = p
            else:
                break
        # walk downstream
        cur = node
        while True:
            (c,) = graph._children[cur]
            if c in interior and c not in seen:
                run.append(c)
                cur = c
            else:
                break
        seen.update(run)
        if len(run) >= 2:
            runs.append(run)

    member_map: dict[str, list[str]] = {}
    replaced: dict[str, str] = {}
    for run in runs:
        agg_id = "+".join(run)
        member_map[agg_id] = list(run)
        for m in run:
            replaced[m] = agg_id

    nodes: list[str] = []
    added: set[str] = set()
    for n in graph.nodes:
        rep = replaced.get(n, n)
        if rep not in added:
            nodes.append(rep)
            added.add(rep)
    edges: dict[tuple[str, str], float] = {}
    for (s, t), u in graph.edges.items():
        rs, rt = replaced.get(s, s), replaced.get(t, t)
        if rs == rt:
            continue  # internal chain edge
        edges[(rs, rt)] = u
    return CausalGraph(nodes=nodes, edges=edges), member_map


def extract_cross_layer_edges(
    graph: CausalGraph, layers: dict[str, int]
) -> tuple[list[tuple[str, str, float]], list[tuple[str, str, float]]]:
    """Split edges into drawn (adjacent layers) and hidden (gap >= 2)."""
    drawn, hidden = [], []
    for (s, t), u in sorted(graph.edges.items()):
        if layers[t] - layers[s] == 1:
            drawn.append((s, t, u))
        else:
            hidden.append((s, t, u))
    return drawn, hidden


def count_crossings(
    orders: dict[str, int],
    layers: dict[str, int],
    drawn_edges: list[tuple[str, str, float]],
) -> int:
    """Pairs of drawn edges between consecutive layers whose endpoints interleave."""
    by_gap: dict[int, list[tuple[int, int]]] = {}
    for s, t, _ in drawn_edges:
        by_gap.setdefault(layers[s], []).append((orders[s], orders[t]))
    total = 0
    for pairs in by_gap.values():
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                (a1, b1), (a2, b2) = pairs[i], pairs[j]
                if (a1 - a2) * (b1 - b2) < 0:
                    total += 1
    return total


def order_layers(
    graph: CausalGraph,
    layers: dict[str, int],
    drawn_edges: list[tuple[str, str, float]],
    sweep_cap: int = SWEEP_CAP,
) -> dict[str, int]:
    """Within-layer order: barycenter init, then greedy crossing-reducing swaps.

    Leaves (no outgoing edges) always precede non-leaves in their layer; swaps
    across that boundary are never considered. Only strictly crossing-reducing
    adjacent swaps are accepted, so crossings never increase past the
    barycenter baseline.
    """
    n_layers = max(layers.values(), default=0) + 1
    per_layer: dict[int, list[str]] = {i: [] for i in range(n_layers)}
    for node in graph.nodes:
        per_layer[layers[node]].append(node)

    out_deg = {n: len(graph._children[n]) for n in graph.nodes}
    is_leaf = {n: out_deg[n] == 0 for n in graph.nodes}
    up = {n: [] for n in graph.nodes}
    for s, t, _ in drawn_edges:
        up[t].append(s)

    orders: dict[str, int] = {}
    for li in range(n_layers):
        members = per_layer[li]
        if li == 0:
            ranked = sorted(members)
        else:
            def bary(n):
                srcs = up[n]
                if not srcs:
                    return (float("inf"), n)
                return (sum(orders[s] for s in srcs) / len(srcs), n)

            ranked = sorted(members, key=bary)
        ranked = [n for n in ranked if is_leaf[n]] + [n for n in ranked if not is_leaf[n]]
        for pos, n in enumerate(ranked):
            orders[n] = pos

    current = count_crossings(orders, layers, drawn_edges)
    for _ in range(sweep_cap):
        improved = False
        for li in list(range(n_layers)) + list(range(n_layers - 1, -1, -1)):
            members = sorted(per_layer[li], key=lambda n: orders[n])
            for i in range(len(members) - 1):
                a, b = members[i], members[i + 1]
                if is_leaf[a] != is_leaf[b]:
                    continue  # keep the leaf block pinned left
                orders[a], orders[b] = orders[b], orders[a]
                trial = count_crossings(orders, layers, drawn_edges)
                if trial < current:
                    current = trial
                    members[i], members[i + 1] = b, a
                    improved = True
                else:
                    orders[a], orders[b] = orders[b], orders[a]
        if not improved:
            break
    return orders


def build_layout(graph: CausalGraph) -> LayoutGraph:
    """Full pipeline: aggregate, layer, hide cross-layer edges, order."""
    contracted, member_map = aggregate_chains(graph)
    layers = assign_layers(contracted)
    drawn, hidden = extract_cross_layer_edges(contracted, layers)
    orders = order_layers(contracted, layers, drawn)

    hidden_causes: dict[str, list[str]] = {}
    for s, t, _ in hidden:
        hidden_causes.setdefault(t, []).append(s)

    nodes = []
    for n in contracted.nodes:
        indeg = len(contracted._parents[n])
        outdeg = len(contracted._children[n])
        role = "root" if indeg == 0 else ("leaf" if outdeg == 0 else "internal")
        nodes.append(
            LayoutNode(
                id=n,
                kind="aggregate" if n in member_map else "plain",
                members=member_map.get(n, []),
                layer=layers[n],
                order_in_layer=orders[n],
                role=role,
                hidden_causes=sorted(hidden_causes.get(n, [])),
            )
        )
    return LayoutGraph(
        nodes=nodes,
        drawn_edges=drawn,
        layers=max(layers.values(), default=0) + 1,
        crossings=count_crossings(orders, layers, drawn),
        hidden_edges=hidden,
    )
