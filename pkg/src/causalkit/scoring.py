"""Decomposable BIC-style scoring of candidate parent sets.

The graph score to maximize is S(G) = sum of per-node local scores,
S_local = 2*LL - penalty * ln(n) * k_local, i.e. the negated BIC
ln(n)k - 2ln(L) restricted to one node. LL is the plug-in multinomial
log-likelihood over observed parent configurations; k_local = q*(r-1)
with q the product of parent cardinalities.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import EdgeAbsentError, ParentCapExceededError

INELIGIBLE = float("-inf")


@dataclass(frozen=True)
class ScoreParams:
    penalty_discount: float = 1.0
    max_parents: int = 8

    def __post_init__(self):
        if self.penalty_discount <= 0:
            raise ValueError("penalty_discount must be positive")
        if self.max_parents < 1:
            raise ValueError("max_parents must be positive")


class ScoreCache:
    """Memo of local scores keyed by (child, sorted parent tuple).

    Insert-if-absent under a lock so concurrent delta evaluations can share
    one cache; values are deterministic so double computation is harmless.
    """

    def __init__(self):
        self._store: dict[tuple, float] = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._store.get(key)

    def put(self, key, value: float) -> float:
        with self._lock:
            return self._store.setdefault(key, value)

    def __len__(self):
        return len(self._store)


def local_score(
    ds: Dataset,
    child: str,
    parents: tuple[str, ...] | list[str] | frozenset,
    params: ScoreParams = ScoreParams(),
    cache: ScoreCache | None = None,
) -> float:
    """Score of one node given a parent set; higher is better."""
    parents = tuple(sorted(parents))
    if len(parents) > params.max_parents:
        raise ParentCapExceededError(
            f"{len(parents)} parents exceed the cap of {params.max_parents}"
        )
    key = (child, parents, params.penalty_discount)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit

    ci = ds.column_index(child)
    r_child = len(ds.value_labels[ci])
    n = ds.sample_size
    if r_child <= 1:
        value = 0.0
    else:
        ll = _log_likelihood(ds, ci, [ds.column_index(p) for p in parents])
        q = 1
        for p in parents:
            q *= ds.cardinality(p)
        k = q * (r_child - 1)
        value = 2.0 * ll - params.penalty_discount * math.log(n) * k

    if cache is not None:
        value = cache.put(key, value)
    return value


def _log_likelihood(ds: Dataset, child_idx: int, parent_idxs: list[int]) -> float:
    """Sum of N_ijk ln(N_ijk / N_ij) over observed cells; 0 ln 0 := 0."""
    child_codes = ds.codes[child_idx]
    r_child = len(ds.value_labels[child_idx])
    if parent_idxs:
        config = ds._config_ids(parent_idxs)
        cell = config * r_child + child_codes
        _, cell_counts = np.unique(cell, return_counts=True)
        _, cfg_counts = np.unique(config, return_counts=True)
    else:
        cell_counts = np.bincount(child_codes, minlength=r_child)
        cell_counts = cell_counts[cell_counts > 0]
        cfg_counts = np.array([ds.sample_size])
    return float(
        (cell_counts * np.log(cell_counts)).sum()
        - (cfg_counts * np.log(cfg_counts)).sum()
    )


def delta_insert(
    ds: Dataset,
    graph,
    source: str,
    target: str,
    params: ScoreParams = ScoreParams(),
    cache: ScoreCache | None = None,
) -> float:
    """Score change from adding source -> target; INELIGIBLE if over the cap."""
    pa = tuple(sorted(graph.parents(target)))
    new_pa = tuple(sorted(pa + (source,)))
    if len(new_pa) > params.max_parents:
        return INELIGIBLE
    return local_score(ds, target, new_pa, params, cache) - local_score(
        ds, target, pa, params, cache
    )


def delta_delete(
    ds: Dataset,
    graph,
    source: str,
    target: str,
    params: ScoreParams = ScoreParams(),
    cache: ScoreCache | None = None,
) -> float:
    """Score change from deleting an existing edge source -> target."""
    if not graph.has_edge(source, target):
        raise EdgeAbsentError(f"edge {source}->{target} not in graph")
    pa = tuple(sorted(graph.parents(target)))
    reduced = tuple(p for p in pa if p != source)
    return local_score(ds, target, reduced, params, cache) - local_score(
        ds, target, pa, params, cache
    )


def graph_score(
    ds: Dataset,
    graph,
    params: ScoreParams = ScoreParams(),
    cache: ScoreCache | None = None,
) -> float:
    """Total S(G): sum of local scores over all nodes."""
    return sum(
        local_score(ds, node, tuple(graph.parents(node)), params, cache)
        for node in graph.nodes
    )
