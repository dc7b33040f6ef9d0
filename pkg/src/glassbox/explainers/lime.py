"""Local surrogate explanations: weighted ridge fit over on/off perturbations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from glassbox.core.types import Attribution, Sample
from glassbox.errors import ValidationError
from glassbox.explainers.baseline import Baseline
from glassbox.explainers.solver import weighted_ridge
from glassbox.explainers.units import GameValue, resolve_target, unit_space
from glassbox.models import Model


@dataclass(frozen=True)
class LimeConfig:
    num_samples: int = 1000
    kernel_width: float | None = None  # default 0.75 * sqrt(M), resolved per call
    ridge_lambda: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kernel_width is not None and self.kernel_width <= 0:
            raise ValidationError("kernel_width must be > 0")
        if self.ridge_lambda < 0:
            raise ValidationError("ridge_lambda must be >= 0")
        if self.num_samples < 2:
            raise ValidationError("num_samples must be >= 2")


def lime_explain(
    model: Model,
    sample: Sample,
    config: LimeConfig,
    background: Baseline,
    target_class: str | None = None,
) -> Attribution:
    """Fit a weighted ridge surrogate around *sample* and report its slopes.

    The binary perturbation matrix always contains the all-ones row; row
    weights decay with Euclidean distance from it (distance normalized by
    sqrt(M)). Deterministic given config.seed.
    """
    space = unit_space(model, sample, background)
    m = space.size
    if config.num_samples < m + 2:
        raise ValidationError(f"num_samples must be >= M+2 = {m + 2}")
    kernel_width = (
        config.kernel_width if config.kernel_width is not None else 0.75 * np.sqrt(m)
    )
    target_label, target_index = resolve_target(model, sample, target_class)
    value = GameValue(model, space, target_index)

    rng = np.random.default_rng(config.seed)
    z = np.ones((config.num_samples, m), dtype=np.float64)
    z[1:] = rng.integers(0, 2, size=(config.num_samples - 1, m)).astype(np.float64)

    targets = np.asarray([value(row.astype(bool)) for row in z])
    distances = np.linalg.norm(z - 1.0, axis=1) / np.sqrt(m)
    weights = np.exp(-(distances**2) / kernel_width**2)

    design = np.hstack([np.ones((config.num_samples, 1)), z])
    beta = weighted_ridge(design, targets, weights, config.ridge_lambda)

    baseline_value = value(np.zeros(m, dtype=bool))
    prediction_value = value(np.ones(m, dtype=bool))
    return Attribution(
        method="lime",
        target_class=target_label,
        unit_kind=space.unit_kind,
        units=space.ids,
        scores=tuple(float(s) for s in beta[1:]),
        baseline_value=baseline_value,
        prediction_value=prediction_value,
        seed=config.seed,
        extras=(("intercept", float(beta[0])), ("kernel_width", float(kernel_width))),
    )
