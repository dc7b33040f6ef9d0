"""Layer-wise relevance propagation with the epsilon rule.

Relevance starts at the target-class logit and flows backward through each
linear layer in proportion to every input's contribution to the layer's
pre-activations. Bias (and epsilon) shares are absorbed, not redistributed,
and the absorbed total is reported so conservation stays auditable:

    target logit = sum(input relevances) + absorbed
"""

from __future__ import annotations

import numpy as np

from glassbox.core.text import token_unit_id, tokenize
from glassbox.core.types import Attribution, Sample, TextSample
from glassbox.errors import IncompatibleError, ValidationError
from glassbox.explainers.units import resolve_target
from glassbox.models import Model
from glassbox.models.featurize import BagOfWords, PatchMeans, TabularStandardizer
from glassbox.models.mlp import MLPModel


def _propagate(model: MLPModel, trace, target_index: int, epsilon: float) -> tuple[np.ndarray, float]:
    """Backward pass; returns (input relevances, absorbed bias/epsilon share)."""
    relevance = np.zeros(len(model.class_labels))
    relevance[target_index] = trace.logits[target_index]
    absorbed = 0.0
    for i in range(len(model.layers) - 1, -1, -1):
        w, b = model.layers[i]
        z = trace.pre_activations[i]
        a_prev = trace.input if i == 0 else trace.post_activations[i - 1]
        sign = np.where(z >= 0.0, 1.0, -1.0)  # sign(0) treated as +1
        denom = z + epsilon * sign
        safe = denom != 0.0
        ratio = np.zeros_like(relevance)
        ratio[safe] = relevance[safe] / denom[safe]
        # neurons with a zero denominator absorb their whole relevance share
        absorbed += float(relevance[~safe].sum())
        absorbed += float((ratio * (b + epsilon * sign))[safe].sum())
        relevance = a_prev * (w.T @ ratio)
    return relevance, absorbed


def _fold_input_relevance(model: MLPModel, sample: Sample, r_in: np.ndarray):
    """Map feature-coordinate relevances onto interpretable units."""
    featurization = model.featurization
    if isinstance(featurization, TabularStandardizer):
        units = featurization.schema.names
        scores = [float(r_in[block].sum()) for _, block in featurization.column_blocks()]
        return "feature", tuple(units), scores
    if isinstance(featurization, BagOfWords):
        assert isinstance(sample, TextSample)
        tokens = tokenize(sample.raw)
        if not tokens:
            raise ValidationError("text sample has no tokens to explain")
        vocab_index = {w: i for i, w in enumerate(featurization.vocabulary)}
        counts: dict[str, int] = {}
        for tok, _ in tokens:
            counts[tok] = counts.get(tok, 0) + 1
        units = tuple(token_unit_id(tok, pos) for tok, pos in tokens)
        scores = []
        for tok, _pos in tokens:
            i = vocab_index.get(tok)
            scores.append(0.0 if i is None else float(r_in[i]) / counts[tok])
        return "token", units, scores
    assert isinstance(featurization, PatchMeans)
    per_segment = r_in.reshape(-1, 3).sum(axis=1)
    units = tuple(str(s) for s in range(len(per_segment)))
    return "segment", units, [float(s) for s in per_segment]


def lrp_explain(
    model: Model,
    sample: Sample,
    epsilon: float = 0.0,
    target_class: str | None = None,
) -> Attribution:
    """Epsilon-rule LRP over an MLP's activation trace."""
    if not isinstance(model, MLPModel):
        raise IncompatibleError("method unavailable for this model kind: LRP needs an MLP")
    if epsilon < 0:
        raise ValidationError("epsilon must be >= 0")
    target_label, target_index = resolve_target(model, sample, target_class)
    trace = model.trace(sample)
    r_in, absorbed = _propagate(model, trace, target_index, epsilon)
    unit_kind, units, scores = _fold_input_relevance(model, sample, r_in)
    return Attribution(
        method="lrp",
        target_class=target_label,
        unit_kind=unit_kind,
        units=units,
        scores=tuple(scores),
        baseline_value=None,
        prediction_value=float(trace.logits[target_index]),
        seed=0,
        extras=(("absorbed_relevance", absorbed), ("epsilon", float(epsilon))),
    )
