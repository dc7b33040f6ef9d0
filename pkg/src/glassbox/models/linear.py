"""Multinomial logistic regression trained by full-batch gradient descent."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from glassbox.core.types import Prediction, Sample
from glassbox.errors import ValidationError
from glassbox.models.config import TrainConfig
from glassbox.models.dataset import Dataset, impute
from glassbox.models.featurize import (
    Featurization,
    design_matrix,
    featurize,
    fit_featurization,
)


def softmax(logits: np.ndarray) -> np.ndarray:
    """Numerically stable softmax along the last axis.

    Shifted logits are floored at -700 so exp never underflows to zero:
    outputs stay strictly positive for all finite inputs.
    """
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    exp = np.exp(np.maximum(shifted, -700.0))
    return exp / np.sum(exp, axis=-1, keepdims=True)


def one_hot_labels(labels: list[str], class_labels: tuple[str, ...]) -> np.ndarray:
    index = {c: i for i, c in enumerate(class_labels)}
    out = np.zeros((len(labels), len(class_labels)), dtype=np.float64)
    for i, lab in enumerate(labels):
        out[i, index[lab]] = 1.0
    return out


def mean_cross_entropy(probs: np.ndarray, targets: np.ndarray) -> float:
    """Mean negative log-likelihood of the target classes."""
    eps = 1e-15
    return float(-np.mean(np.sum(targets * np.log(probs + eps), axis=1)))


@dataclass
class LinearModel:
    """softmax(W x + b) classifier over a fitted featurization."""

    class_labels: tuple[str, ...]
    featurization: Featurization
    weights: np.ndarray  # (classes, features)
    biases: np.ndarray  # (classes,)
    loss_history: list[float] = field(default_factory=list, repr=False, compare=False)

    model_kind = "linear"

    def __post_init__(self) -> None:
        c = len(self.class_labels)
        if self.weights.shape[0] != c or self.biases.shape != (c,):
            raise ValidationError("weight/bias shapes inconsistent with class count")

    @property
    def task(self) -> str:
        return {"tabular_standardized": "tabular", "bag_of_words": "text",
                "image_patch_means": "image"}[self.featurization.kind]

    def logits(self, sample: Sample) -> np.ndarray:
        x = featurize(self.featurization, sample)
        if x.shape[0] != self.weights.shape[1]:
            raise ValidationError(
                f"feature vector length {x.shape[0]} does not match model "
                f"width {self.weights.shape[1]}"
            )
        return self.weights @ x + self.biases

    def predict_proba(self, sample: Sample) -> Prediction:
        return Prediction.from_probabilities(self.class_labels, softmax(self.logits(sample)))


def _check_trainable(dataset: Dataset) -> tuple[str, ...]:
    if len(dataset) == 0:
        raise ValidationError("cannot train on an empty dataset")
    classes = dataset.class_labels
    if len(classes) < 2:
        raise ValidationError("training requires >=2 classes")
    return classes


def train_logistic(dataset: Dataset, config: TrainConfig = TrainConfig()) -> LinearModel:
    """Full-batch gradient descent on mean cross-entropy, weights zero-initialized.

    Deterministic given the dataset: zero init plus full-batch updates leave
    nothing for the seed to influence.
    """
    classes = _check_trainable(dataset)
    if dataset.kind == "tabular":
        dataset = impute(dataset)
    featurization = fit_featurization(dataset, grid=config.grid)
    x = design_matrix(featurization, dataset)
    y = one_hot_labels(dataset.labels, classes)
    n, n_features = x.shape
    w = np.zeros((len(classes), n_features), dtype=np.float64)
    b = np.zeros(len(classes), dtype=np.float64)
    history: list[float] = []
    for _ in range(config.epochs):
        probs = softmax(x @ w.T + b)
        history.append(mean_cross_entropy(probs, y))
        delta = (probs - y) / n  # (n, classes)
        w -= config.learning_rate * (delta.T @ x)
        b -= config.learning_rate * delta.sum(axis=0)
    history.append(mean_cross_entropy(softmax(x @ w.T + b), y))
    return LinearModel(classes, featurization, w, b, loss_history=history)
