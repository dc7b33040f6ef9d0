"""Model-level importances: held-out score drop under column shuffling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from glassbox.errors import IncompatibleError, ValidationError
from glassbox.models import Model, evaluate_accuracy
from glassbox.models.dataset import Dataset

#: Test hook signature: (feature index, repeat index, row count) -> permutation.
Shuffler = Callable[[int, int, int], np.ndarray]


@dataclass(frozen=True)
class GlobalImportance:
    """Per-feature mean accuracy drop on a held-out set, with raw repeats."""

    feature_names: tuple[str, ...]
    importances: tuple[float, ...]
    raw_drops: tuple[tuple[float, ...], ...]  # [feature][repeat]
    repeats: int
    seed: int
    baseline_score: float

    def __post_init__(self) -> None:
        if len(self.importances) != len(self.feature_names):
            raise ValidationError("importances must align with feature names")
        if self.repeats < 1:
            raise ValidationError("repeats must be >= 1")


def _seeded_shuffler(seed: int) -> Shuffler:
    def shuffle(feature: int, repeat: int, n: int) -> np.ndarray:
        # independent stream per (feature, repeat): results do not depend
        # on evaluation order
        rng = np.random.default_rng([seed, feature, repeat])
        return rng.permutation(n)

    return shuffle


def permutation_importance(
    model: Model,
    dataset: Dataset,
    repeats: int = 5,
    seed: int = 0,
    shuffler: Shuffler | None = None,
) -> GlobalImportance:
    """Mean drop in held-out accuracy when one column is shuffled.

    ``shuffler`` overrides the seeded permutation source (test hook).
    """
    if model.task != "tabular":
        raise IncompatibleError("permutation importance applies to tabular models")
    if dataset.kind != "tabular":
        raise IncompatibleError("permutation importance needs a tabular dataset")
    if len(dataset) < 10:
        raise ValidationError("permutation importance needs >= 10 rows")
    if repeats < 1:
        raise ValidationError("repeats must be >= 1")
    if any(not s.is_complete() for s in dataset.samples):  # type: ignore[union-attr]
        raise ValidationError("held-out rows must be complete")
    assert dataset.schema is not None
    shuffle = shuffler if shuffler is not None else _seeded_shuffler(seed)
    baseline = evaluate_accuracy(model, dataset)
    n = len(dataset)
    drops: list[tuple[float, ...]] = []
    means: list[float] = []
    for j in range(len(dataset.schema.columns)):
        column = dataset.column_values(j)
        feature_drops = []
        for r in range(repeats):
            perm = shuffle(j, r, n)
            shuffled = [column[int(i)] for i in perm]
            score = evaluate_accuracy(model, dataset.with_column(j, shuffled))
            feature_drops.append(baseline - score)
        drops.append(tuple(feature_drops))
        means.append(float(np.mean(feature_drops)))
    return GlobalImportance(
        feature_names=dataset.schema.names,
        importances=tuple(means),
        raw_drops=tuple(drops),
        repeats=repeats,
        seed=seed,
        baseline_score=baseline,
    )
