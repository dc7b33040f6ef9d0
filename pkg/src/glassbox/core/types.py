"""Domain data model shared by every other module.

All types here are immutable after construction and validated eagerly,
so anything holding one can trust its invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from glassbox.errors import ValidationError

COLUMN_KINDS = ("numeric", "categorical", "boolean")

ATTRIBUTION_METHODS = (
    "lime",
    "kernel_shap",
    "exact_shapley",
    "lrp",
    "permutation_importance",
)

UNIT_KINDS = ("feature", "token", "segment")

#: A tabular cell: numeric value, category label, boolean, or missing.
Cell = Union[float, str, bool, None]


@dataclass(frozen=True)
class Column:
    name: str
    kind: str
    categories: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in COLUMN_KINDS:
            raise ValidationError(f"unknown column kind {self.kind!r}")
        if self.kind == "categorical":
            if not self.categories:
                raise ValidationError(
                    f"categorical column {self.name!r} needs >=1 category"
                )
            if len(set(self.categories)) != len(self.categories):
                raise ValidationError(
                    f"categorical column {self.name!r} has duplicate categories"
                )
        elif self.categories is not None:
            raise ValidationError(
                f"column {self.name!r}: categories only allowed for categorical kind"
            )


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered tabular column layout; order is significant and stable."""

    columns: tuple[Column, ...]

    def __post_init__(self) -> None:
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValidationError("column names must be unique")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def index_of(self, name: str) -> int:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return i
        raise ValidationError(f"no column named {name!r}")


@dataclass(frozen=True)
class TabularSample:
    """One row of cells aligned to a FeatureSchema; None marks a missing cell."""

    values: tuple[Cell, ...]

    @property
    def kind(self) -> str:
        return "tabular"

    def is_complete(self) -> bool:
        return all(v is not None for v in self.values)


@dataclass(frozen=True)
class TextSample:
    raw: str

    @property
    def kind(self) -> str:
        return "text"


@dataclass(frozen=True)
class ImageSample:
    """Row-major 8-bit RGB raster."""

    height: int
    width: int
    pixels: np.ndarray = field(repr=False)  # (height, width, 3) uint8, read-only

    def __post_init__(self) -> None:
        if self.height < 1 or self.width < 1:
            raise ValidationError("image dimensions must be >= 1")
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.shape != (self.height, self.width, 3):
            raise ValidationError(
                f"pixel array shape {px.shape} does not match "
                f"({self.height}, {self.width}, 3)"
            )
        px = px.copy()
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def kind(self) -> str:
        return "image"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ImageSample):
            return NotImplemented
        return (
            self.height == other.height
            and self.width == other.width
            and np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self) -> int:
        return hash((self.height, self.width, self.pixels.tobytes()))


Sample = Union[TabularSample, TextSample, ImageSample]


@dataclass(frozen=True)
class Prediction:
    """Class probabilities plus the argmax decision (ties -> lowest index)."""

    class_labels: tuple[str, ...]
    probabilities: tuple[float, ...]
    predicted_index: int

    def __post_init__(self) -> None:
        if len(self.class_labels) != len(self.probabilities):
            raise ValidationError("labels and probabilities must align")
        if any(p < 0 for p in self.probabilities):
            raise ValidationError("probabilities must be nonnegative")
        total = float(sum(self.probabilities))
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"probabilities sum to {total}, expected 1")
        expected = int(np.argmax(self.probabilities))
        if self.predicted_index != expected:
            raise ValidationError("predicted_index must be the argmax")

    @classmethod
    def from_probabilities(
        cls, class_labels: tuple[str, ...], probabilities
    ) -> "Prediction":
        probs = tuple(float(p) for p in probabilities)
        return cls(tuple(class_labels), probs, int(np.argmax(probs)))

    @property
    def predicted_class(self) -> str:
        return self.class_labels[self.predicted_index]


def argmax_class(prediction: Prediction) -> str:
    """Label of the highest-probability class; ties go to the lowest index."""
    return prediction.predicted_class


@dataclass(frozen=True)
class Attribution:
    """Signed per-unit relevance scores for one sample and one target class.

    ``units`` and ``scores`` are aligned; unit identifiers are unique within
    one attribution. ``extras`` carries method-specific audit values such as
    LRP's absorbed bias relevance.
    """

    method: str
    target_class: str
    unit_kind: str
    units: tuple[str, ...]
    scores: tuple[float, ...]
    baseline_value: float | None
    prediction_value: float
    seed: int
    extras: tuple[tuple[str, float], ...] = ()

    def __post_init__(self) -> None:
        if self.method not in ATTRIBUTION_METHODS:
            raise ValidationError(f"unknown attribution method {self.method!r}")
        if self.unit_kind not in UNIT_KINDS:
            raise ValidationError(f"unknown unit kind {self.unit_kind!r}")
        if len(self.units) != len(self.scores):
            raise ValidationError("units and scores must have equal length")
        if len(set(self.units)) != len(self.units):
            raise ValidationError("unit identifiers must be unique")

    def score_of(self, unit: str) -> float:
        return self.scores[self.units.index(unit)]

    @property
    def extras_dict(self) -> dict[str, float]:
        return dict(self.extras)


@dataclass(frozen=True)
class SegmentMap:
    """Rectangular-cell partition of an image into rows*cols segments."""

    rows: int
    cols: int
    assignment: np.ndarray = field(repr=False)  # (height, width) int32, read-only

    def __post_init__(self) -> None:
        a = np.asarray(self.assignment, dtype=np.int32).copy()
        a.flags.writeable = False
        object.__setattr__(self, "assignment", a)

    @property
    def segment_count(self) -> int:
        return self.rows * self.cols

    def mask(self, segment_id: int) -> np.ndarray:
        return self.assignment == segment_id


@dataclass(frozen=True)
class HumanAnnotation:
    """Units a human marked relevant for one sample, in Attribution's id space."""

    sample_id: str
    relevant_units: frozenset[str]

    def __post_init__(self) -> None:
        if not self.relevant_units:
            raise ValidationError("annotation must mark at least one unit")
