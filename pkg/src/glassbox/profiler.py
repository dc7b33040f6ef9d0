"""Dataset Information: per-column statistics, warnings, and correlations.

Works on raw string tables (what a CSV gives you, before any schema is
chosen) so it can run ahead of training. Missing cells are None or "".
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from glassbox.errors import NotFoundError, ValidationError

BOOLEAN_WORDS = {"true", "false", "0", "1", "yes", "no"}

WARNING_KINDS = ("high_missing", "constant", "high_cardinality")


@dataclass(frozen=True)
class ProfileConfig:
    missing_warn_fraction: float = 0.10
    high_cardinality_threshold: int = 50
    histogram_bins: int = 10
    top_values: int = 10


@dataclass(frozen=True)
class RawTable:
    """Column-major table of raw string cells; None/"" mark missing."""

    names: tuple[str, ...]
    columns: tuple[tuple[str | None, ...], ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise ValidationError("table needs at least one column")
        if len(self.names) != len(self.columns):
            raise ValidationError("names and columns must align")
        lengths = {len(c) for c in self.columns}
        if len(lengths) > 1:
            raise ValidationError("ragged columns")
        if lengths == {0}:
            raise ValidationError("table needs at least one row")

    @classmethod
    def from_rows(cls, names: list[str], rows: list[list[str | None]]) -> "RawTable":
        columns = tuple(
            tuple(row[j] for row in rows) for j in range(len(names))
        )
        return cls(tuple(names), columns)

    @property
    def row_count(self) -> int:
        return len(self.columns[0])


def read_csv_table(path: Path) -> RawTable:
    """Load a header-row CSV as raw strings; empty cells become missing."""
    path = Path(path)
    if not path.exists():
        raise NotFoundError(f"CSV file not found: {path}")
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if not header:
            raise ValidationError(f"{path}: empty CSV")
        rows: list[list[str | None]] = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValidationError(
                    f"{path}:{line_no}: expected {len(header)} cells, got {len(row)}"
                )
            rows.append([None if cell == "" else cell for cell in row])
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    return RawTable.from_rows(header, rows)


def _is_missing(value: str | None) -> bool:
    return value is None or value == ""


def _parse_number(value: str) -> float | None:
    try:
        return float(value)
    except ValueError:
        return None


def infer_kind(values) -> str:
    """numeric if everything parses as a number, boolean for two-valued
    yes/no-style columns, categorical otherwise."""
    present = [v for v in values if not _is_missing(v)]
    if not present:
        raise ValidationError("cannot infer a kind for an all-missing column")
    if all(_parse_number(v) is not None for v in present):
        return "numeric"
    distinct = {v.strip().lower() for v in present}
    if len(distinct) == 2 and distinct <= BOOLEAN_WORDS:
        return "boolean"
    return "categorical"


@dataclass(frozen=True)
class NumericStats:
    minimum: float
    maximum: float
    mean: float
    std: float
    q1: float
    q2: float
    q3: float


@dataclass(frozen=True)
class HistogramBin:
    lower: float
    upper: float
    count: int


@dataclass(frozen=True)
class ColumnProfile:
    name: str
    inferred_kind: str
    count: int
    missing_count: int
    distinct_count: int
    numeric: NumericStats | None = None
    histogram: tuple[HistogramBin, ...] = ()
    top_values: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class ProfileWarning:
    column: str
    kind: str
    detail: str


@dataclass(frozen=True)
class DatasetProfile:
    columns: tuple[ColumnProfile, ...]
    warnings: tuple[ProfileWarning, ...]
    correlation_columns: tuple[str, ...]
    correlation: tuple[tuple[float | None, ...], ...]
    correlation_excluded: tuple[tuple[str, str], ...]  # (column, reason)
    correlation_method: str = "pearson, pairwise-complete"
    row_count: int = 0


def _numeric_histogram(values: np.ndarray, bins: int) -> tuple[HistogramBin, ...]:
    lo, hi = float(values.min()), float(values.max())
    if lo == hi:
        out = [HistogramBin(lo, hi, len(values))]
        out.extend(HistogramBin(lo, hi, 0) for _ in range(bins - 1))
        return tuple(out)
    width = (hi - lo) / bins
    edges = [lo + i * width for i in range(bins)] + [hi]
    counts = [0] * bins
    for v in values:
        # right-closed last bin; all others half-open
        idx = min(int((v - lo) / width), bins - 1)
        counts[idx] += 1
    return tuple(
        HistogramBin(edges[i], edges[i + 1], counts[i]) for i in range(bins)
    )


def _profile_column(name: str, values, config: ProfileConfig) -> ColumnProfile:
    count = len(values)
    present = [v for v in values if not _is_missing(v)]
    missing = count - len(present)
    kind = infer_kind(values)
    distinct = len(set(present))
    if kind == "numeric":
        arr = np.asarray([_parse_number(v) for v in present], dtype=np.float64)
        q1, q2, q3 = (float(q) for q in np.percentile(arr, [25, 50, 75]))
        stats = NumericStats(
            minimum=float(arr.min()),
            maximum=float(arr.max()),
            mean=float(arr.mean()),
            std=float(arr.std()),
            q1=q1,
            q2=q2,
            q3=q3,
        )
        return ColumnProfile(
            name, kind, count, missing, distinct,
            numeric=stats,
            histogram=_numeric_histogram(arr, config.histogram_bins),
        )
    tally: dict[str, int] = {}
    for v in present:
        tally[v] = tally.get(v, 0) + 1
    ranked = sorted(tally.items(), key=lambda kv: (-kv[1], kv[0]))
    return ColumnProfile(
        name, kind, count, missing, distinct,
        top_values=tuple(ranked[: config.top_values]),
    )


def _pairwise_pearson(a, b) -> float | None:
    """Pearson over rows where both values are present; None if undefined."""
    xs, ys = [], []
    for va, vb in zip(a, b):
        if va is None or vb is None:
            continue
        xs.append(va)
        ys.append(vb)
    if len(xs) < 2:
        return None
    x = np.asarray(xs)
    y = np.asarray(ys)
    sx, sy = x.std(), y.std()
    if sx == 0.0 or sy == 0.0:
        return None
    r = float(np.mean((x - x.mean()) * (y - y.mean())) / (sx * sy))
    return min(1.0, max(-1.0, r))


def profile(table: RawTable, config: ProfileConfig = ProfileConfig()) -> DatasetProfile:
    """Column stats (population std, linear-interpolation quartiles),
    pairwise-complete Pearson correlations, and threshold warnings."""
    columns = [
        _profile_column(name, values, config)
        for name, values in zip(table.names, table.columns)
    ]
    warnings: list[ProfileWarning] = []
    for col in columns:
        missing_fraction = col.missing_count / col.count
        if missing_fraction > config.missing_warn_fraction:
            warnings.append(ProfileWarning(
                col.name, "high_missing",
                f"{col.missing_count}/{col.count} cells missing "
                f"({missing_fraction:.0%} > {config.missing_warn_fraction:.0%})",
            ))
        if col.distinct_count == 1:
            warnings.append(ProfileWarning(col.name, "constant", "single distinct value"))
        if col.inferred_kind == "categorical" and col.distinct_count > config.high_cardinality_threshold:
            warnings.append(ProfileWarning(
                col.name, "high_cardinality",
                f"{col.distinct_count} distinct values > {config.high_cardinality_threshold}",
            ))

    numeric_cols: list[str] = []
    excluded: list[tuple[str, str]] = []
    parsed: dict[str, list[float | None]] = {}
    for col, values in zip(columns, table.columns):
        if col.inferred_kind != "numeric":
            continue
        if col.distinct_count == 1:
            excluded.append((col.name, "constant column has no defined correlation"))
            continue
        numeric_cols.append(col.name)
        parsed[col.name] = [
            None if _is_missing(v) else _parse_number(v) for v in values
        ]
    matrix: list[tuple[float | None, ...]] = []
    for i, a in enumerate(numeric_cols):
        row: list[float | None] = []
        for j, b in enumerate(numeric_cols):
            if i == j:
                row.append(1.0)
            elif j < i:
                row.append(matrix[j][i])
            else:
                row.append(_pairwise_pearson(parsed[a], parsed[b]))
        matrix.append(tuple(row))

    return DatasetProfile(
        columns=tuple(columns),
        warnings=tuple(warnings),
        correlation_columns=tuple(numeric_cols),
        correlation=tuple(matrix),
        correlation_excluded=tuple(excluded),
        row_count=table.row_count,
    )
