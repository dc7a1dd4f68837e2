"""Categorical dataset: ingestion, dictionary encoding, and count queries.

Tables are stored column-major as integer codes. Numeric columns are
discretized into equal-frequency bins at ingest time; everything downstream
(scoring, CPD fitting, sampling) only ever sees categorical codes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptyTableError,
    MissingColumnError,
    ParentCapExceededError,
    UnknownColumnError,
    UnparsableNumericError,
)

MISSING_LABEL = "⟨missing⟩"

CATEGORICAL = "categorical"
NUMERIC_BINNED = "numeric-binned"


@dataclass(frozen=True)
class ColumnSpec:
    """How a raw column is encoded.

    Numeric columns are split into ``bins`` equal-frequency bins; categorical
    columns are dictionary-encoded as-is.
    """

    name: str
    kind: str = CATEGORICAL
    bins: int = 4
    max_displayed_values: int = 10

    def __post_init__(self):
        if self.kind not in (CATEGORICAL, NUMERIC_BINNED):
            raise ValueError(f"unknown column kind: {self.kind!r}")
        if self.kind == NUMERIC_BINNED and self.bins < 2:
            raise ValueError("numeric-binned columns need bins >= 2")


@dataclass(frozen=True)
class ValueDistribution:
    """Proportions of each value code within one column."""

    column: str
    proportions: dict[int, float]

    def as_labeled(self, labels: list[str]) -> dict[str, float]:
        return {labels[code]: float(p) for code, p in self.proportions.items()}


@dataclass
class Dataset:
    """Immutable column-encoded categorical table.

    ``codes`` has shape (n_columns, n_rows); ``value_labels[i][c]`` is the
    original label of code ``c`` in column ``i``.
    """

    columns: list[ColumnSpec]
    codes: np.ndarray
    value_labels: list[list[str]]
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self._index = {spec.name: i for i, spec in enumerate(self.columns)}
        if len(self._index) != len(self.columns):
            raise ValueError("duplicate column names")
        self.codes.setflags(write=False)

    @property
    def sample_size(self) -> int:
        return self.codes.shape[1]

    @property
    def column_names(self) -> list[str]:
        return [spec.name for spec in self.columns]

    def column_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownColumnError(f"unknown column: {name!r}") from None

    def cardinality(self, name: str) -> int:
        return len(self.value_labels[self.column_index(name)])

    @property
    def cardinalities(self) -> list[int]:
        return [len(labels) for labels in self.value_labels]

    def labels(self, name: str) -> list[str]:
        return self.value_labels[self.column_index(name)]

    def code_of(self, name: str, label: str) -> int:
        labels = self.labels(name)
        try:
            return labels.index(label)
        except ValueError:
            raise UnknownColumnError(
                f"column {name!r} has no value {label!r}"
            ) from None

    def column_codes(self, name: str) -> np.ndarray:
        return self.codes[self.column_index(name)]

    def marginal(self, name: str) -> ValueDistribution:
        """Observed proportion of every value of a column."""
        idx = self.column_index(name)
        counts = np.bincount(self.codes[idx], minlength=len(self.value_labels[idx]))
        n = self.sample_size
        return ValueDistribution(
            column=name,
            proportions={c: counts[c] / n for c in range(len(counts))},
        )

    def joint_counts(
        self, child: str, parents: tuple[str, ...] | list[str], max_parents: int = 8
    ) -> dict[tuple[int, ...], np.ndarray]:
        """Sparse contingency table of a child against a parent set.

        Maps each observed parent configuration (tuple of codes, in the given
        parent order) to a count vector over the child's values. Only observed
        configurations appear; counts sum to the sample size.
        """
        parents = tuple(parents)
        if child in parents:
            raise ValueError("child must not be among its parents")
        if len(parents) > max_parents:
            raise ParentCapExceededError(
                f"{len(parents)} parents exceed the cap of {max_parents}"
            )
        ci = self.column_index(child)
        pis = [self.column_index(p) for p in parents]
        r_child = len(self.value_labels[ci])
        child_codes = self.codes[ci]

        if not parents:
            counts = np.bincount(child_codes, minlength=r_child)
            return {(): counts}

        config_ids = self._config_ids(pis)
        table: dict[tuple[int, ...], np.ndarray] = {}
        uniq, inverse = np.unique(config_ids, return_inverse=True)
        radices = [len(self.value_labels[i]) for i in pis]
        for slot, cid in enumerate(uniq):
            mask = inverse == slot
            counts = np.bincount(child_codes[mask], minlength=r_child)
            table[_decode_config(int(cid), radices)] = counts
        return table

    def _config_ids(self, column_indices: list[int]) -> np.ndarray:
        """Mixed-radix encoding of a tuple of columns into one int64 per row."""
        ids = np.zeros(self.sample_size, dtype=np.int64)
        for i in column_indices:
            ids = ids * len(self.value_labels[i]) + self.codes[i]
        return ids


def _decode_config(cid: int, radices: list[int]) -> tuple[int, ...]:
    out = []
    for r in reversed(radices):
        out.append(cid % r)
        cid //= r
    return tuple(reversed(out))


def equal_frequency_bins(values: np.ndarray, bins: int) -> np.ndarray:
    """Assign each value a bin code in [0, bins) with near-equal bin sizes.

    Ties (equal values) always land in the same bin; on fully distinct values
    every bin holds floor(n/bins) or ceil(n/bins) entries.
    """
    n = len(values)
    order = np.argsort(values, kind="stable")
    prelim = (np.arange(n) * bins) // n
    codes = np.empty(n, dtype=np.int64)
    codes[order] = prelim
    # Collapse ties onto the bin of the first occurrence in sorted order.
    sorted_vals = values[order]
    for start in range(1, n):
        if sorted_vals[start] == sorted_vals[start - 1]:
            codes[order[start]] = codes[order[start - 1]]
    return codes


def load_column_config(doc: str | dict) -> list[ColumnSpec]:
    """Parse a JSON column-config document into ColumnSpec entries."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    specs = []
    for entry in doc.get("columns", []):
        specs.append(
            ColumnSpec(
                name=entry["name"],
                kind=entry.get("kind", CATEGORICAL),
                bins=entry.get("bins", 4),
                max_displayed_values=entry.get("maxDisplayedValues", 10),
            )
        )
    return specs


def ingest(
    raw_table: str,
    specs: list[ColumnSpec] | None = None,
    delimiter: str = ",",
) -> Dataset:
    """Parse delimited text (header row first) into an encoded Dataset.

    Columns without a spec default to categorical. Missing cells become their
    own category so data-quality problems stay visible downstream.
    """
    reader = csv.reader(io.StringIO(raw_table), delimiter=delimiter)
    # keep interior blank lines as all-missing rows; drop trailing ones
    rows = [row if row else [""] for row in reader]
    while rows and rows[-1] == [""]:
        rows.pop()
    if not rows:
        raise EmptyTableError("input table is empty")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    if not body:
        raise EmptyTableError("input table has a header but no data rows")

    spec_by_name = {s.name: s for s in (specs or [])}
    for name in spec_by_name:
        if name not in header:
            raise MissingColumnError(f"configured column {name!r} not in header")

    columns: list[ColumnSpec] = []
    all_codes: list[np.ndarray] = []
    value_labels: list[list[str]] = []
    for col_pos, name in enumerate(header):
        spec = spec_by_name.get(name, ColumnSpec(name=name))
        cells = [row[col_pos].strip() if col_pos < len(row) else "" for row in body]
        if spec.kind == NUMERIC_BINNED:
            codes, labels = _encode_numeric(name, cells, spec.bins)
        else:
            codes, labels = _encode_categorical(cells)
        columns.append(spec)
        all_codes.append(codes)
        value_labels.append(labels)

    return Dataset(
        columns=columns,
        codes=np.vstack(all_codes),
        value_labels=value_labels,
    )


def ingest_file(path, specs=None, delimiter: str = ",") -> Dataset:
    with open(path, encoding="utf-8") as fh:
        return ingest(fh.read(), specs, delimiter)


def _encode_categorical(cells: list[str]) -> tuple[np.ndarray, list[str]]:
    labels: list[str] = []
    index: dict[str, int] = {}
    codes = np.empty(len(cells), dtype=np.int64)
    for i, cell in enumerate(cells):
        label = cell if cell != "" else MISSING_LABEL
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        codes[i] = index[label]
    return codes, labels


def _encode_numeric(
    name: str, cells: list[str], bins: int
) -> tuple[np.ndarray, list[str]]:
    present_idx: list[int] = []
    values: list[float] = []
    for i, cell in enumerate(cells):
        if cell == "":
            continue
        try:
            values.append(float(cell))
        except ValueError:
            raise UnparsableNumericError(
                f"column {name!r}, row {i}: cannot parse {cell!r} as a number"
            ) from None
        present_idx.append(i)

    codes = np.full(len(cells), -1, dtype=np.int64)
    labels: list[str] = []
    if values:
        arr = np.asarray(values)
        bins_eff = min(bins, len(np.unique(arr)))
        bin_codes = equal_frequency_bins(arr, bins_eff)
        used = sorted(set(bin_codes.tolist()))
        remap = {b: i for i, b in enumerate(used)}
        for b in used:
            in_bin = arr[bin_codes == b]
            labels.append(f"[{in_bin.min():g}, {in_bin.max():g}]")
        for pos, i in enumerate(present_idx):
            codes[i] = remap[bin_codes[pos]]
    if (codes == -1).any():
        codes[codes == -1] = len(labels)
        labels = labels + [MISSING_LABEL]
    return codes, labels
