"""Shared test fixtures: synthetic datasets and probe models."""

from __future__ import annotations

import numpy as np

from glassbox.core.text import tokenize
from glassbox.core.types import Column, FeatureSchema, Prediction, TabularSample
from glassbox.models import Dataset, tabular_dataset
from glassbox.models.featurize import TabularStandardizer
from glassbox.models.mlp import MLPModel, init_layers


def numeric_schema(n: int, prefix: str = "f") -> FeatureSchema:
    return FeatureSchema(tuple(Column(f"{prefix}{i}", "numeric") for i in range(n)))


def make_blobs(n_per_class: int = 50, separation: float = 6.0, seed: int = 0) -> Dataset:
    """Two Gaussian blobs separated by `separation` stds along both axes."""
    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, 1.0, size=(n_per_class, 2))
    b = rng.normal(separation, 1.0, size=(n_per_class, 2))
    rows = [tuple(float(v) for v in row) for row in np.vstack([a, b])]
    labels = ["a"] * n_per_class + ["b"] * n_per_class
    return tabular_dataset(numeric_schema(2), rows, labels)


def make_random_labels(n: int = 400, seed: int = 0) -> Dataset:
    """Features carry no information about the balanced binary labels."""
    rng = np.random.default_rng(seed)
    rows = [tuple(float(v) for v in row) for row in rng.normal(size=(n, 2))]
    labels = ["a", "b"] * (n // 2)
    return tabular_dataset(numeric_schema(2), rows, labels)


def make_xor() -> Dataset:
    rows = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
    labels = ["a", "b", "b", "a"]
    return tabular_dataset(numeric_schema(2), rows, labels)


def identity_standardizer(n: int) -> TabularStandardizer:
    return TabularStandardizer(numeric_schema(n), (0.0,) * n, (1.0,) * n)


def random_mlp(
    n_features: int,
    hidden: int,
    n_classes: int,
    seed: int,
    zero_bias: bool = False,
) -> MLPModel:
    layers = init_layers([n_features, hidden, n_classes], seed)
    if zero_bias:
        layers = [(w, np.zeros_like(b)) for w, b in layers]
    labels = tuple(f"c{i}" for i in range(n_classes))
    return MLPModel(labels, identity_standardizer(n_features), layers)


class TokenPresenceProbe:
    """Target-class probability depends only on whether `trigger` is present."""

    task = "text"
    model_kind = "probe"
    class_labels = ("neg", "pos")

    def __init__(self, trigger: str = "late", high: float = 0.9, low: float = 0.1):
        self.trigger = trigger
        self.high = high
        self.low = low

    def predict_proba(self, sample) -> Prediction:
        present = any(tok == self.trigger for tok, _ in tokenize(sample.raw))
        p = self.high if present else self.low
        return Prediction.from_probabilities(self.class_labels, (1 - p, p))


class LinearUnitProbe:
    """p(pos) is exactly linear in the tabular cell values (used with a zero
    baseline so on/off masks hit the coefficients directly)."""

    task = "tabular"
    model_kind = "probe"
    class_labels = ("neg", "pos")

    def __init__(self, coefficients, base: float = 0.3):
        self.coefficients = tuple(float(c) for c in coefficients)
        self.base = base
        self.schema = numeric_schema(len(self.coefficients))

    def predict_proba(self, sample) -> Prediction:
        assert isinstance(sample, TabularSample)
        p = self.base + float(
            np.dot(self.coefficients, [float(v) for v in sample.values])
        )
        return Prediction.from_probabilities(self.class_labels, (1 - p, p))


class ConstantProbe:
    """Ignores its input entirely."""

    task = "text"
    model_kind = "probe"
    class_labels = ("neg", "pos")

    def predict_proba(self, sample) -> Prediction:
        return Prediction.from_probabilities(self.class_labels, (0.4, 0.6))
