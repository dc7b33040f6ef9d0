"""Baselines: the reference input that stands for "unit absent"."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from glassbox.core.types import Cell
from glassbox.errors import ValidationError
from glassbox.models.dataset import Dataset, column_mean, column_mode


@dataclass(frozen=True)
class TabularMeans:
    """Per-column replacement values: training mean (numeric) or mode."""

    values: tuple[Cell, ...]

    kind = "tabular_means"


@dataclass(frozen=True)
class TextRemoval:
    """Absent tokens are simply deleted from the document."""

    kind = "text_removal"


@dataclass(frozen=True)
class ImageMeanColor:
    """Absent segments are painted with the dataset mean color."""

    color: tuple[int, int, int]

    kind = "image_mean_color"

    def __post_init__(self) -> None:
        if len(self.color) != 3 or any(not 0 <= c <= 255 for c in self.color):
            raise ValidationError("mean color must be an 8-bit RGB triple")


Baseline = TabularMeans | TextRemoval | ImageMeanColor


def baseline_from_dataset(dataset: Dataset) -> Baseline:
    """Derive the task-appropriate baseline from training data."""
    kind = dataset.kind
    if kind == "text":
        return TextRemoval()
    if kind == "image":
        total = np.zeros(3, dtype=np.float64)
        count = 0
        for s in dataset.samples:
            total += s.pixels.reshape(-1, 3).sum(axis=0)  # type: ignore[union-attr]
            count += s.height * s.width  # type: ignore[union-attr]
        mean = np.rint(total / count).astype(int)
        return ImageMeanColor(tuple(int(c) for c in mean))
    assert dataset.schema is not None
    values: list[Cell] = []
    for j, col in enumerate(dataset.schema.columns):
        column = dataset.column_values(j)
        if col.kind == "numeric":
            values.append(column_mean(column))
        else:
            values.append(column_mode(column))
    return TabularMeans(tuple(values))
