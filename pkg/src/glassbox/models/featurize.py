"""Featurization: how each sample kind becomes a real feature vector.

Three variants, all deterministic:
  tabular  -> standardized numerics plus one-hot categoricals
  text     -> bag-of-words counts over a training vocabulary
  image    -> per-grid-cell mean RGB, scaled to [0, 1]

Each featurizer also exposes the mapping from feature coordinates back to
interpretable units, which LRP needs to fold input relevances onto columns,
tokens, or segments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from glassbox.core.image import segment_grid
from glassbox.core.text import tokenize
from glassbox.core.types import (
    FeatureSchema,
    ImageSample,
    Sample,
    TabularSample,
    TextSample,
)
from glassbox.errors import IncompatibleError, ValidationError
from glassbox.models.dataset import Dataset


@dataclass(frozen=True)
class TabularStandardizer:
    """Standardization + one-hot encoding fit on training data only.

    ``means``/``stds`` cover numeric and boolean columns (booleans as 0/1);
    categorical columns expand to one-hot blocks. Zero stds are replaced
    by 1 so constant columns standardize to 0.
    """

    schema: FeatureSchema
    means: tuple[float, ...]
    stds: tuple[float, ...]

    kind = "tabular_standardized"

    @property
    def feature_names(self) -> tuple[str, ...]:
        names: list[str] = []
        for col in self.schema.columns:
            if col.kind == "categorical":
                names.extend(f"{col.name}={c}" for c in col.categories or ())
            else:
                names.append(col.name)
        return tuple(names)

    def column_blocks(self) -> list[tuple[str, slice]]:
        """(column name, feature-coordinate slice) per schema column, in order."""
        blocks: list[tuple[str, slice]] = []
        start = 0
        for col in self.schema.columns:
            width = len(col.categories) if col.kind == "categorical" else 1
            blocks.append((col.name, slice(start, start + width)))
            start += width
        return blocks

    def transform(self, sample: TabularSample) -> np.ndarray:
        if not sample.is_complete():
            raise ValidationError("sample has missing cells; featurization needs a complete row")
        if len(sample.values) != len(self.schema.columns):
            raise ValidationError(
                f"row width {len(sample.values)} does not match schema "
                f"width {len(self.schema.columns)}"
            )
        out: list[float] = []
        scale_idx = 0
        for col, value in zip(self.schema.columns, sample.values):
            if col.kind == "categorical":
                if value not in (col.categories or ()):
                    raise ValidationError(
                        f"unknown category {value!r} for column {col.name!r}"
                    )
                onehot = [0.0] * len(col.categories or ())
                onehot[(col.categories or ()).index(value)] = 1.0
                out.extend(onehot)
            else:
                raw = float(value) if col.kind == "numeric" else float(bool(value))
                out.append((raw - self.means[scale_idx]) / self.stds[scale_idx])
                scale_idx += 1
        return np.asarray(out, dtype=np.float64)


@dataclass(frozen=True)
class BagOfWords:
    """Token-count featurization over a fixed, ordered vocabulary."""

    vocabulary: tuple[str, ...]

    kind = "bag_of_words"

    def __post_init__(self) -> None:
        if not self.vocabulary:
            raise ValidationError("bag-of-words vocabulary must be nonempty")
        if len(set(self.vocabulary)) != len(self.vocabulary):
            raise ValidationError("vocabulary entries must be unique")

    @property
    def feature_names(self) -> tuple[str, ...]:
        return self.vocabulary

    def transform(self, sample: TextSample) -> np.ndarray:
        index = {w: i for i, w in enumerate(self.vocabulary)}
        counts = np.zeros(len(self.vocabulary), dtype=np.float64)
        for tok, _pos in tokenize(sample.raw):
            i = index.get(tok)
            if i is not None:
                counts[i] += 1.0
        return counts


@dataclass(frozen=True)
class PatchMeans:
    """Per-segment mean RGB over a fixed grid, scaled to [0, 1].

    Produces 3 features per cell, ordered [seg0_r, seg0_g, seg0_b, seg1_r, ...].
    """

    rows: int
    cols: int

    kind = "image_patch_means"

    @property
    def feature_names(self) -> tuple[str, ...]:
        names: list[str] = []
        for s in range(self.rows * self.cols):
            names.extend((f"seg{s}_r", f"seg{s}_g", f"seg{s}_b"))
        return tuple(names)

    def transform(self, sample: ImageSample) -> np.ndarray:
        segmap = segment_grid(sample, self.rows, self.cols)
        px = sample.pixels.astype(np.float64) / 255.0
        flat_ids = segmap.assignment.reshape(-1)
        flat_px = px.reshape(-1, 3)
        n_seg = segmap.segment_count
        sums = np.zeros((n_seg, 3), dtype=np.float64)
        np.add.at(sums, flat_ids, flat_px)
        counts = np.bincount(flat_ids, minlength=n_seg).astype(np.float64)
        means = sums / counts[:, None]
        return means.reshape(-1)


Featurization = TabularStandardizer | BagOfWords | PatchMeans

_SAMPLE_KIND_BY_FEATURIZER = {
    "tabular_standardized": "tabular",
    "bag_of_words": "text",
    "image_patch_means": "image",
}


def featurize(featurization: Featurization, sample: Sample) -> np.ndarray:
    """Transform *sample* with *featurization*, rejecting kind mismatches."""
    expected = _SAMPLE_KIND_BY_FEATURIZER[featurization.kind]
    if sample.kind != expected:
        raise IncompatibleError(
            f"featurization {featurization.kind} expects a {expected} sample, "
            f"got {sample.kind}"
        )
    return featurization.transform(sample)  # type: ignore[arg-type]


def fit_standardizer(dataset: Dataset) -> TabularStandardizer:
    """Compute per-column means/stds (population) on training data.

    Rows must be complete; impute first if the dataset has gaps.
    """
    assert dataset.schema is not None
    means: list[float] = []
    stds: list[float] = []
    for j, col in enumerate(dataset.schema.columns):
        if col.kind == "categorical":
            continue
        values = dataset.column_values(j)
        if any(v is None for v in values):
            raise ValidationError(
                f"column {col.name!r} has missing cells; impute before fitting"
            )
        raw = np.asarray(
            [float(v) if col.kind == "numeric" else float(bool(v)) for v in values],
            dtype=np.float64,
        )
        means.append(float(raw.mean()))
        std = float(raw.std())
        stds.append(std if std > 0.0 else 1.0)
    return TabularStandardizer(dataset.schema, tuple(means), tuple(stds))


def build_vocabulary(dataset: Dataset) -> BagOfWords:
    """Sorted unique tokens over all training documents."""
    vocab: set[str] = set()
    for s in dataset.samples:
        assert isinstance(s, TextSample)
        vocab.update(tok for tok, _ in tokenize(s.raw))
    if not vocab:
        raise ValidationError("training corpus produced an empty vocabulary")
    return BagOfWords(tuple(sorted(vocab)))


def fit_featurization(dataset: Dataset, grid: tuple[int, int] = (4, 4)) -> Featurization:
    """Pick and fit the featurizer matching the dataset kind."""
    kind = dataset.kind
    if kind == "tabular":
        return fit_standardizer(dataset)
    if kind == "text":
        return build_vocabulary(dataset)
    return PatchMeans(rows=grid[0], cols=grid[1])


def design_matrix(featurization: Featurization, dataset: Dataset) -> np.ndarray:
    return np.stack([featurize(featurization, s) for s in dataset.samples])
