"""Labeled dataset container plus imputation and holdout splitting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from glassbox.core.types import (
    Cell,
    FeatureSchema,
    ImageSample,
    Sample,
    TabularSample,
    TextSample,
)
from glassbox.errors import ValidationError


@dataclass
class Dataset:
    """Samples of one kind with string class labels.

    ``schema`` is required for tabular datasets and must be None otherwise.
    """

    samples: list[Sample]
    labels: list[str]
    schema: FeatureSchema | None = None

    def __post_init__(self) -> None:
        if len(self.samples) != len(self.labels):
            raise ValidationError("samples and labels must have equal length")
        kinds = {s.kind for s in self.samples}
        if len(kinds) > 1:
            raise ValidationError(f"mixed sample kinds in dataset: {sorted(kinds)}")
        if kinds == {"tabular"}:
            if self.schema is None:
                raise ValidationError("tabular dataset requires a schema")
            width = len(self.schema.columns)
            for i, s in enumerate(self.samples):
                if len(s.values) != width:  # type: ignore[union-attr]
                    raise ValidationError(
                        f"row {i} has {len(s.values)} cells, schema has {width}"
                    )
        elif self.schema is not None:
            raise ValidationError("schema only applies to tabular datasets")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def kind(self) -> str:
        if not self.samples:
            raise ValidationError("empty dataset has no kind")
        return self.samples[0].kind

    @property
    def class_labels(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.labels)))

    def column_values(self, col_index: int) -> list[Cell]:
        return [s.values[col_index] for s in self.samples]  # type: ignore[union-attr]

    def with_column(self, col_index: int, values: list[Cell]) -> "Dataset":
        """Copy of the dataset with one tabular column replaced."""
        if self.kind != "tabular":
            raise ValidationError("with_column only applies to tabular datasets")
        new_samples: list[Sample] = []
        for s, v in zip(self.samples, values):
            cells = list(s.values)  # type: ignore[union-attr]
            cells[col_index] = v
            new_samples.append(TabularSample(tuple(cells)))
        return Dataset(new_samples, list(self.labels), self.schema)


def column_mean(values: list[Cell]) -> float:
    present = [float(v) for v in values if v is not None]
    if not present:
        raise ValidationError("column has no non-missing values")
    return float(np.mean(present))


def column_mode(values: list[Cell]) -> Cell:
    """Most frequent non-missing value; ties go to the smaller value."""
    present = [v for v in values if v is not None]
    if not present:
        raise ValidationError("column has no non-missing values")
    counts: dict[Cell, int] = {}
    for v in present:
        counts[v] = counts.get(v, 0) + 1
    top = max(counts.values())
    candidates = sorted([v for v, c in counts.items() if c == top], key=str)
    return candidates[0]


def impute(dataset: Dataset) -> Dataset:
    """Fill missing tabular cells: numeric -> training mean, else mode.

    Only training may observe missing cells; explainers require complete rows.
    """
    if dataset.kind != "tabular":
        return dataset
    assert dataset.schema is not None
    fills: list[Cell] = []
    for j, col in enumerate(dataset.schema.columns):
        values = dataset.column_values(j)
        if col.kind == "numeric":
            fills.append(column_mean(values))
        else:
            fills.append(column_mode(values))
    new_samples: list[Sample] = []
    for s in dataset.samples:
        cells = [
            fills[j] if v is None else v
            for j, v in enumerate(s.values)  # type: ignore[union-attr]
        ]
        new_samples.append(TabularSample(tuple(cells)))
    return Dataset(new_samples, list(dataset.labels), dataset.schema)


def drop_incomplete(dataset: Dataset) -> Dataset:
    """Tabular rows with no missing cells (labels kept aligned)."""
    if dataset.kind != "tabular":
        return dataset
    kept = [
        (s, lab)
        for s, lab in zip(dataset.samples, dataset.labels)
        if s.is_complete()  # type: ignore[union-attr]
    ]
    if not kept:
        raise ValidationError("no complete rows in dataset")
    return Dataset([s for s, _ in kept], [lab for _, lab in kept], dataset.schema)


def split_holdout(
    dataset: Dataset, fraction: float = 0.2, seed: int = 0
) -> tuple[Dataset, Dataset]:
    """Deterministic shuffled split into (train, holdout)."""
    n = len(dataset)
    if n < 2:
        raise ValidationError("need >=2 samples to split")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    n_hold = max(1, int(round(n * fraction)))
    hold_idx = set(order[:n_hold].tolist())
    train_s, train_l, hold_s, hold_l = [], [], [], []
    for i in range(n):
        if i in hold_idx:
            hold_s.append(dataset.samples[i])
            hold_l.append(dataset.labels[i])
        else:
            train_s.append(dataset.samples[i])
            train_l.append(dataset.labels[i])
    return (
        Dataset(train_s, train_l, dataset.schema),
        Dataset(hold_s, hold_l, dataset.schema),
    )


def tabular_dataset(
    schema: FeatureSchema, rows: list[tuple[Cell, ...]], labels: list[str]
) -> Dataset:
    return Dataset([TabularSample(tuple(r)) for r in rows], labels, schema)


def text_dataset(texts: list[str], labels: list[str]) -> Dataset:
    return Dataset([TextSample(t) for t in texts], labels)


def image_dataset(images: list[ImageSample], labels: list[str]) -> Dataset:
    return Dataset(list(images), labels)
