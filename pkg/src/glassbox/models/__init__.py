"""Desk-scale trainable classifiers: logistic, MLP, and CART tree."""

from __future__ import annotations

from typing import Union

from glassbox.core.types import Prediction, Sample, argmax_class
from glassbox.errors import ValidationError
from glassbox.models.config import TrainConfig
from glassbox.models.dataset import (
    Dataset,
    image_dataset,
    impute,
    split_holdout,
    tabular_dataset,
    text_dataset,
)
from glassbox.models.featurize import (
    BagOfWords,
    Featurization,
    PatchMeans,
    TabularStandardizer,
    build_vocabulary,
    design_matrix,
    featurize,
    fit_featurization,
    fit_standardizer,
)
from glassbox.models.linear import LinearModel, softmax, train_logistic
from glassbox.models.mlp import (
    ActivationTrace,
    MLPModel,
    forward_with_trace,
    loss_and_gradients,
    train_mlp,
)
from glassbox.models.tree import TreeModel, TreeNode, train_tree

Model = Union[LinearModel, MLPModel, TreeModel]


def predict_proba(model: Model, sample: Sample) -> Prediction:
    """Class probabilities for *sample* under *model* (deterministic)."""
    return model.predict_proba(sample)


def evaluate_accuracy(model: Model, dataset: Dataset) -> float:
    """Fraction of samples whose argmax class equals the label."""
    if len(dataset) == 0:
        raise ValidationError("cannot score an empty dataset")
    hits = sum(
        argmax_class(model.predict_proba(s)) == lab
        for s, lab in zip(dataset.samples, dataset.labels)
    )
    return hits / len(dataset)


__all__ = [
    "ActivationTrace",
    "BagOfWords",
    "Dataset",
    "Featurization",
    "LinearModel",
    "MLPModel",
    "Model",
    "PatchMeans",
    "TabularStandardizer",
    "TrainConfig",
    "TreeModel",
    "TreeNode",
    "build_vocabulary",
    "design_matrix",
    "evaluate_accuracy",
    "featurize",
    "fit_featurization",
    "fit_standardizer",
    "forward_with_trace",
    "image_dataset",
    "impute",
    "loss_and_gradients",
    "predict_proba",
    "softmax",
    "split_holdout",
    "tabular_dataset",
    "text_dataset",
    "train_logistic",
    "train_mlp",
    "train_tree",
]
