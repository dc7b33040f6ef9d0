"""Feedforward rectifier network with softmax output, plus activation traces.

The trace records every layer's pre/post activations; LRP consumes it to
propagate relevance backward without re-deriving the forward pass.
"""

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
from glassbox.models.linear import (
    _check_trainable,
    mean_cross_entropy,
    one_hot_labels,
    softmax,
)

Layer = tuple[np.ndarray, np.ndarray]  # weights (out, in), biases (out,)


@dataclass(frozen=True)
class ActivationTrace:
    """Forward-pass record: input vector, per-layer pre/post activations, logits."""

    input: np.ndarray
    pre_activations: tuple[np.ndarray, ...]
    post_activations: tuple[np.ndarray, ...]
    logits: np.ndarray


@dataclass
class MLPModel:
    class_labels: tuple[str, ...]
    featurization: Featurization
    layers: list[Layer]
    loss_history: list[float] = field(default_factory=list, repr=False, compare=False)

    model_kind = "mlp"

    def __post_init__(self) -> None:
        if len(self.layers) < 2:
            raise ValidationError("MLP needs >=1 hidden layer plus the output layer")
        for (w_prev, _), (w_next, _) in zip(self.layers, self.layers[1:]):
            if w_next.shape[1] != w_prev.shape[0]:
                raise ValidationError("adjacent layer dimensions do not chain")
        if self.layers[-1][0].shape[0] != len(self.class_labels):
            raise ValidationError("final layer dimension must equal class count")

    @property
    def task(self) -> str:
        return {"tabular_standardized": "tabular", "bag_of_words": "text",
                "image_patch_means": "image"}[self.featurization.kind]

    def logits(self, sample: Sample) -> np.ndarray:
        return self.trace(sample).logits

    def trace(self, sample: Sample) -> ActivationTrace:
        x = featurize(self.featurization, sample)
        if x.shape[0] != self.layers[0][0].shape[1]:
            raise ValidationError(
                f"feature vector length {x.shape[0]} does not match model "
                f"input width {self.layers[0][0].shape[1]}"
            )
        pre: list[np.ndarray] = []
        post: list[np.ndarray] = []
        a = x
        for i, (w, b) in enumerate(self.layers):
            z = w @ a + b
            pre.append(z)
            a = z if i == len(self.layers) - 1 else np.maximum(z, 0.0)
            post.append(a)
        if not np.all(np.isfinite(a)):
            raise ValidationError("non-finite activations in forward pass")
        return ActivationTrace(x, tuple(pre), tuple(post), post[-1])

    def predict_proba(self, sample: Sample) -> Prediction:
        return Prediction.from_probabilities(self.class_labels, softmax(self.logits(sample)))


def forward_with_trace(model: MLPModel, sample: Sample) -> tuple[Prediction, ActivationTrace]:
    """Predict and capture the full activation trace in one pass."""
    trace = model.trace(sample)
    pred = Prediction.from_probabilities(model.class_labels, softmax(trace.logits))
    return pred, trace


def init_layers(sizes: list[int], seed: int) -> list[Layer]:
    """Uniform init in [-s, s] with s = 1/sqrt(fan_in), from the seeded generator."""
    rng = np.random.default_rng(seed)
    layers: list[Layer] = []
    for fan_in, fan_out in zip(sizes, sizes[1:]):
        s = 1.0 / np.sqrt(fan_in)
        w = rng.uniform(-s, s, size=(fan_out, fan_in))
        b = rng.uniform(-s, s, size=fan_out)
        layers.append((w, b))
    return layers


def _forward_batch(layers: list[Layer], x: np.ndarray) -> list[np.ndarray]:
    """Post-activations per layer for a batch; last entry is the logits."""
    activations = []
    a = x
    for i, (w, b) in enumerate(layers):
        z = a @ w.T + b
        a = z if i == len(layers) - 1 else np.maximum(z, 0.0)
        activations.append(a)
    return activations


def loss_and_gradients(
    layers: list[Layer], x: np.ndarray, targets: np.ndarray
) -> tuple[float, list[Layer]]:
    """Mean cross-entropy and its analytic gradients w.r.t. every weight and bias.

    Backpropagation through the rectifier layers; gradients align with
    ``layers`` as (dW, db) pairs.
    """
    activations = _forward_batch(layers, x)
    probs = softmax(activations[-1])
    loss = mean_cross_entropy(probs, targets)
    n = x.shape[0]
    grads: list[Layer] = [None] * len(layers)  # type: ignore[list-item]
    delta = (probs - targets) / n  # (n, out)
    for i in range(len(layers) - 1, -1, -1):
        a_prev = x if i == 0 else activations[i - 1]
        grads[i] = (delta.T @ a_prev, delta.sum(axis=0))
        if i > 0:
            w, _ = layers[i]
            delta = (delta @ w) * (activations[i - 1] > 0.0)
    return loss, grads


def train_mlp(dataset: Dataset, config: TrainConfig = TrainConfig()) -> MLPModel:
    """Full-batch gradient descent; deterministic given (dataset, config.seed)."""
    classes = _check_trainable(dataset)
    if dataset.kind == "tabular":
        dataset = impute(dataset)
    featurization = fit_featurization(dataset, grid=config.grid)
    x = design_matrix(featurization, dataset)
    y = one_hot_labels(dataset.labels, classes)
    sizes = [x.shape[1], *config.hidden_sizes, len(classes)]
    layers = init_layers(sizes, config.seed)
    history: list[float] = []
    for _ in range(config.epochs):
        loss, grads = loss_and_gradients(layers, x, y)
        history.append(loss)
        layers = [
            (w - config.learning_rate * dw, b - config.learning_rate * db)
            for (w, b), (dw, db) in zip(layers, grads)
        ]
    history.append(mean_cross_entropy(softmax(_forward_batch(layers, x)[-1]), y))
    return MLPModel(classes, featurization, layers, loss_history=history)
