"""Interpretable-unit spaces and their perturbation semantics.

A UnitSpace names the units of one (model, sample) pair and realizes any
on/off mask as a concrete sample:

  tabular  -> "off" columns snap to baseline mean/mode
  text     -> "off" token occurrences are deleted
  image    -> "off" grid segments fill with the baseline color

LIME, Kernel SHAP, and the exact Shapley oracle all share this one
perturbation scheme, which is what makes their outputs comparable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from glassbox.core.image import fill_segments, segment_grid, segment_unit_id
from glassbox.core.text import join_tokens, token_unit_id, tokenize
from glassbox.core.types import (
    FeatureSchema,
    ImageSample,
    Sample,
    TabularSample,
    TextSample,
)
from glassbox.errors import IncompatibleError, ValidationError
from glassbox.explainers.baseline import (
    Baseline,
    ImageMeanColor,
    TabularMeans,
    TextRemoval,
)
from glassbox.models import Model
from glassbox.models.featurize import PatchMeans, TabularStandardizer


@dataclass(frozen=True)
class UnitSpace:
    unit_kind: str
    ids: tuple[str, ...]
    realize: Callable[[np.ndarray], Sample]

    @property
    def size(self) -> int:
        return len(self.ids)


def model_schema(model: Model) -> FeatureSchema:
    featurization = getattr(model, "featurization", None)
    if isinstance(featurization, TabularStandardizer):
        return featurization.schema
    schema = getattr(model, "schema", None)
    if isinstance(schema, FeatureSchema):
        return schema
    raise IncompatibleError("model has no tabular schema")


def default_baseline_for(model: Model) -> Baseline | None:
    """Baseline that needs no training data; None where data is required."""
    if model.task == "text":
        return TextRemoval()
    return None


def unit_space(model: Model, sample: Sample, baseline: Baseline) -> UnitSpace:
    """Derive the interpretable units for (model, sample) and their realizer."""
    if model.task != sample.kind:
        raise IncompatibleError(
            f"model expects {model.task} samples, got {sample.kind}"
        )
    if sample.kind == "tabular":
        if not isinstance(baseline, TabularMeans):
            raise IncompatibleError("tabular explanation needs a TabularMeans baseline")
        assert isinstance(sample, TabularSample)
        if not sample.is_complete():
            raise ValidationError("explainers require complete rows")
        schema = model_schema(model)
        if len(baseline.values) != len(schema.columns):
            raise ValidationError("baseline width does not match the schema")
        original = sample.values

        def realize_tabular(mask: np.ndarray) -> Sample:
            cells = tuple(
                original[j] if mask[j] else baseline.values[j]
                for j in range(len(original))
            )
            return TabularSample(cells)

        return UnitSpace("feature", schema.names, realize_tabular)

    if sample.kind == "text":
        if not isinstance(baseline, TextRemoval):
            raise IncompatibleError("text explanation needs a TextRemoval baseline")
        assert isinstance(sample, TextSample)
        tokens = tokenize(sample.raw)
        if not tokens:
            raise ValidationError("text sample has no tokens to explain")
        ids = tuple(token_unit_id(tok, pos) for tok, pos in tokens)
        words = [tok for tok, _ in tokens]

        def realize_text(mask: np.ndarray) -> Sample:
            return TextSample(join_tokens([w for w, keep in zip(words, mask) if keep]))

        return UnitSpace("token", ids, realize_text)

    if not isinstance(baseline, ImageMeanColor):
        raise IncompatibleError("image explanation needs an ImageMeanColor baseline")
    assert isinstance(sample, ImageSample)
    featurization = model.featurization
    if not isinstance(featurization, PatchMeans):
        raise IncompatibleError("image explanation needs a patch-mean featurized model")
    segmap = segment_grid(sample, featurization.rows, featurization.cols)
    ids = tuple(segment_unit_id(s) for s in range(segmap.segment_count))

    def realize_image(mask: np.ndarray) -> Sample:
        off = ~np.asarray(mask, dtype=bool)
        if not off.any():
            return sample
        return fill_segments(sample, segmap, off, baseline.color)

    return UnitSpace("segment", ids, realize_image)


class GameValue:
    """v(mask) = target-class probability of the realized sample, cached."""

    def __init__(self, model: Model, space: UnitSpace, target_index: int):
        self.model = model
        self.space = space
        self.target_index = target_index
        self._cache: dict[bytes, float] = {}
        self.calls = 0

    def __call__(self, mask: np.ndarray) -> float:
        mask = np.asarray(mask, dtype=bool)
        key = mask.tobytes()
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        realized = self.space.realize(mask)
        value = float(self.model.predict_proba(realized).probabilities[self.target_index])
        self._cache[key] = value
        return value


def resolve_target(model: Model, sample: Sample, target_class: str | None) -> tuple[str, int]:
    """Target label and its class index; defaults to the predicted class."""
    if target_class is None:
        target_class = model.predict_proba(sample).predicted_class
    if target_class not in model.class_labels:
        raise ValidationError(f"unknown target class {target_class!r}")
    return target_class, model.class_labels.index(target_class)
