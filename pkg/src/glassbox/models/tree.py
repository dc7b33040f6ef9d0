"""CART-style decision tree over raw tabular columns (no featurization).

Greedy Gini-impurity splitting; numeric thresholds at midpoints between
sorted distinct values, categorical splits one-vs-rest. Ties between
equal-gain splits resolve to the lowest feature index, then the lowest
threshold / category index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from glassbox.core.types import FeatureSchema, Prediction, Sample, TabularSample
from glassbox.errors import IncompatibleError, ValidationError
from glassbox.models.config import TrainConfig
from glassbox.models.dataset import Dataset, impute
from glassbox.models.linear import _check_trainable


@dataclass(frozen=True)
class TreeNode:
    """Internal node (feature + threshold or category set) or leaf (distribution)."""

    feature: int | None = None
    threshold: float | None = None
    categories: tuple[str, ...] | None = None
    left: int = -1
    right: int = -1
    distribution: tuple[float, ...] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.distribution is not None


@dataclass
class TreeModel:
    class_labels: tuple[str, ...]
    schema: FeatureSchema
    nodes: list[TreeNode]  # root at index 0

    model_kind = "tree"
    task = "tabular"

    def __post_init__(self) -> None:
        if not self.nodes:
            raise ValidationError("tree must have at least one node")
        for node in self.nodes:
            if node.is_leaf:
                total = sum(node.distribution or ())
                if abs(total - 1.0) > 1e-9:
                    raise ValidationError("leaf distribution must sum to 1")
            elif node.left < 0 or node.right < 0:
                raise ValidationError("internal node must have two children")

    def _validate_row(self, sample: TabularSample) -> None:
        if len(sample.values) != len(self.schema.columns):
            raise ValidationError(
                f"row width {len(sample.values)} does not match schema "
                f"width {len(self.schema.columns)}"
            )
        if not sample.is_complete():
            raise ValidationError("sample has missing cells; prediction needs a complete row")
        for col, value in zip(self.schema.columns, sample.values):
            if col.kind == "categorical" and value not in (col.categories or ()):
                raise ValidationError(
                    f"unknown category {value!r} for column {col.name!r}"
                )

    def predict_proba(self, sample: Sample) -> Prediction:
        if sample.kind != "tabular":
            raise IncompatibleError(f"tree model expects a tabular sample, got {sample.kind}")
        assert isinstance(sample, TabularSample)
        self._validate_row(sample)
        node = self.nodes[0]
        while not node.is_leaf:
            value = sample.values[node.feature]  # type: ignore[index]
            if node.categories is not None:
                go_left = value in node.categories
            else:
                go_left = float(value) <= node.threshold  # type: ignore[arg-type, operator]
            node = self.nodes[node.left if go_left else node.right]
        return Prediction.from_probabilities(self.class_labels, node.distribution)


def gini(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts / n
    return float(1.0 - np.sum(p * p))


@dataclass(frozen=True)
class _Split:
    feature: int
    threshold: float | None
    categories: tuple[str, ...] | None
    gain: float
    left_mask: np.ndarray


def _class_counts(y: np.ndarray, n_classes: int) -> np.ndarray:
    return np.bincount(y, minlength=n_classes)


def _candidate_splits(
    column, kind: str, categories: tuple[str, ...] | None,
    y: np.ndarray, n_classes: int, min_leaf: int, feature: int
):
    """Yield valid splits for one column in deterministic threshold order."""
    n = len(y)
    parent = gini(_class_counts(y, n_classes))
    if kind == "categorical":
        present = set(column)
        for cat in categories or ():  # schema order = category index order
            if cat not in present:
                continue
            left_mask = np.asarray([v == cat for v in column])
            n_left = int(left_mask.sum())
            if n_left < min_leaf or n - n_left < min_leaf:
                continue
            yield _make_split(feature, None, (cat,), left_mask, y, n_classes, parent)
    else:
        values = np.asarray([float(v) for v in column], dtype=np.float64)
        distinct = np.unique(values)
        for lo, hi in zip(distinct, distinct[1:]):
            threshold = (lo + hi) / 2.0
            left_mask = values <= threshold
            n_left = int(left_mask.sum())
            if n_left < min_leaf or n - n_left < min_leaf:
                continue
            yield _make_split(feature, threshold, None, left_mask, y, n_classes, parent)


def _make_split(feature, threshold, categories, left_mask, y, n_classes, parent) -> _Split:
    n = len(y)
    left_counts = _class_counts(y[left_mask], n_classes)
    right_counts = _class_counts(y[~left_mask], n_classes)
    n_left = left_counts.sum()
    weighted = (n_left / n) * gini(left_counts) + ((n - n_left) / n) * gini(right_counts)
    return _Split(feature, threshold, categories, parent - weighted, left_mask)


def train_tree(dataset: Dataset, config: TrainConfig = TrainConfig()) -> TreeModel:
    """Greedy CART training; stops at max_depth, min_leaf, purity, or zero gain."""
    classes = _check_trainable(dataset)
    if dataset.kind != "tabular":
        raise IncompatibleError("tree models train on tabular datasets only")
    dataset = impute(dataset)
    assert dataset.schema is not None
    schema = dataset.schema
    class_index = {c: i for i, c in enumerate(classes)}
    y_all = np.asarray([class_index[lab] for lab in dataset.labels], dtype=np.int64)
    columns = [dataset.column_values(j) for j in range(len(schema.columns))]
    kinds = [c.kind for c in schema.columns]
    nodes: list[TreeNode] = []

    def leaf(y: np.ndarray) -> int:
        counts = _class_counts(y, len(classes)).astype(np.float64)
        dist = tuple((counts / counts.sum()).tolist())
        nodes.append(TreeNode(distribution=dist))
        return len(nodes) - 1

    def build(indices: np.ndarray, depth: int) -> int:
        y = y_all[indices]
        if depth >= config.max_depth or len(indices) < 2 * config.min_leaf or len(np.unique(y)) == 1:
            return leaf(y)
        best: _Split | None = None
        for j, col_spec in enumerate(schema.columns):
            col = [columns[j][i] for i in indices]
            for split in _candidate_splits(
                col, kinds[j], col_spec.categories, y, len(classes), config.min_leaf, j
            ):
                if split.gain > 0.0 and (best is None or split.gain > best.gain):
                    best = split
        if best is None:
            return leaf(y)
        placeholder = len(nodes)
        nodes.append(TreeNode())  # patched below once children exist
        left_id = build(indices[best.left_mask], depth + 1)
        right_id = build(indices[~best.left_mask], depth + 1)
        nodes[placeholder] = TreeNode(
            feature=best.feature,
            threshold=best.threshold,
            categories=best.categories,
            left=left_id,
            right=right_id,
        )
        return placeholder

    build(np.arange(len(dataset)), 0)
    return TreeModel(classes, schema, nodes)
