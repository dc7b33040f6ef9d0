"""Shapley-value attributions: exact coalition enumeration and Kernel SHAP.

Both treat the model as a cooperative game v(S) = target-class probability
with units outside S replaced per the baseline. The exact oracle is the
correctness reference for the kernel estimator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Callable

import numpy as np

from glassbox.core.types import Attribution, Sample
from glassbox.errors import ValidationError
from glassbox.explainers.baseline import Baseline
from glassbox.explainers.solver import solve_penalized_wls
from glassbox.explainers.units import GameValue, resolve_target, unit_space
from glassbox.models import Model

EXACT_ORACLE_MAX_UNITS = 15
EXACT_ENUMERATION_MAX_UNITS = 20


@dataclass(frozen=True)
class ShapConfig:
    """Kernel SHAP coalition strategy plus the perturbation baseline.

    mode "auto" resolves per call: exact enumeration when feasible
    (M <= 12), else kernel-weighted sampling.
    """

    baseline: Baseline
    mode: str = "auto"  # auto | exact_enumeration | sampled
    num_coalitions: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("auto", "exact_enumeration", "sampled"):
            raise ValidationError(f"unknown shap mode {self.mode!r}")


def _masks_from_int(bits: int, m: int) -> np.ndarray:
    return np.asarray([(bits >> j) & 1 for j in range(m)], dtype=bool)


def shapley_from_game(value: Callable[[int], float], m: int) -> list[float]:
    """Exact Shapley values of an m-player game given by bitmask -> value.

    Enumeration order is canonical per player (masks over the remaining
    players in ascending order), so symmetric games yield bit-identical
    values for symmetric players.
    """
    if m < 1:
        raise ValidationError("game needs at least one player")
    weight = [factorial(s) * factorial(m - s - 1) / factorial(m) for s in range(m)]
    values: list[float] = []
    for i in range(m):
        rest = [j for j in range(m) if j != i]
        phi = 0.0
        for sub in range(1 << (m - 1)):
            mask = 0
            for pos, j in enumerate(rest):
                if (sub >> pos) & 1:
                    mask |= 1 << j
            size = bin(sub).count("1")
            phi += weight[size] * (value(mask | (1 << i)) - value(mask))
        values.append(phi)
    return values


def exact_shapley(
    model: Model,
    sample: Sample,
    baseline: Baseline,
    target_class: str | None = None,
) -> Attribution:
    """Brute-force Shapley values over all coalitions; M <= 15 enforced."""
    space = unit_space(model, sample, baseline)
    m = space.size
    if m > EXACT_ORACLE_MAX_UNITS:
        raise ValidationError(
            f"exact enumeration supports at most {EXACT_ORACLE_MAX_UNITS} units, got {m}"
        )
    target_label, target_index = resolve_target(model, sample, target_class)
    value = GameValue(model, space, target_index)
    cache: dict[int, float] = {}

    def v(bits: int) -> float:
        got = cache.get(bits)
        if got is None:
            got = value(_masks_from_int(bits, m))
            cache[bits] = got
        return got

    scores = shapley_from_game(v, m)
    full = (1 << m) - 1
    return Attribution(
        method="exact_shapley",
        target_class=target_label,
        unit_kind=space.unit_kind,
        units=space.ids,
        scores=tuple(scores),
        baseline_value=v(0),
        prediction_value=v(full),
        seed=0,
        extras=(),
    )


def shapley_kernel_weight(m: int, size: int) -> float:
    """pi(z) = (M-1) / (C(M,|z|) * |z| * (M-|z|)) for interior coalition sizes."""
    if size <= 0 or size >= m:
        raise ValidationError("kernel weight is defined for 0 < |z| < M only")
    return (m - 1) / (comb(m, size) * size * (m - size))


def _enumerate_interior(m: int) -> np.ndarray:
    rows = [
        _masks_from_int(bits, m)
        for bits in range(1, (1 << m) - 1)
    ]
    return np.asarray(rows, dtype=bool)


def _sample_coalitions(m: int, count: int, seed: int) -> np.ndarray:
    """Draw interior coalitions with probability proportional to kernel weight.

    Size s has total kernel mass proportional to 1/(s*(M-s)); members of a
    size class are drawn uniformly at random without replacement inside
    each row. Sampling replaces explicit WLS weighting.
    """
    rng = np.random.default_rng(seed)
    sizes = np.arange(1, m)
    mass = 1.0 / (sizes * (m - sizes))
    probs = mass / mass.sum()
    drawn_sizes = rng.choice(sizes, size=count, p=probs)
    rows = np.zeros((count, m), dtype=bool)
    for i, s in enumerate(drawn_sizes):
        rows[i, rng.choice(m, size=int(s), replace=False)] = True
    return rows


def kernel_shap(
    model: Model,
    sample: Sample,
    config: ShapConfig,
    target_class: str | None = None,
) -> Attribution:
    """Shapley estimation via constrained weighted least squares.

    The empty and full coalitions enter as exact constraints: the intercept
    is pinned to v(empty) and one coefficient is eliminated through the
    efficiency identity sum(phi) = v(full) - v(empty), so efficiency holds
    by construction on every output.
    """
    space = unit_space(model, sample, config.baseline)
    m = space.size
    target_label, target_index = resolve_target(model, sample, target_class)
    value = GameValue(model, space, target_index)

    v_empty = value(np.zeros(m, dtype=bool))
    v_full = value(np.ones(m, dtype=bool))
    gap = v_full - v_empty

    mode = config.mode
    if mode == "auto":
        mode = "exact_enumeration" if m <= 12 else "sampled"
    num_coalitions = config.num_coalitions

    if m == 1:
        scores = [gap]
    else:
        if mode == "exact_enumeration":
            if m > EXACT_ENUMERATION_MAX_UNITS:
                raise ValidationError(
                    f"exact enumeration supports at most "
                    f"{EXACT_ENUMERATION_MAX_UNITS} units, got {m}"
                )
            z = _enumerate_interior(m)
            weights = np.asarray(
                [shapley_kernel_weight(m, int(row.sum())) for row in z]
            )
        else:
            if num_coalitions is None:
                num_coalitions = min((1 << m) - 2, max(m + 2, 512))
            if num_coalitions < m + 2:
                raise ValidationError(f"num_coalitions must be >= M+2 = {m + 2}")
            z = _sample_coalitions(m, num_coalitions, config.seed)
            weights = np.ones(len(z))

        targets = np.asarray([value(row) for row in z]) - v_empty
        zf = z.astype(np.float64)
        # eliminate the last unit via the efficiency constraint
        reduced = zf[:, :-1] - zf[:, -1:]
        adjusted = targets - zf[:, -1] * gap
        head = solve_penalized_wls(
            reduced, adjusted, weights, np.zeros(m - 1)
        )
        scores = [float(s) for s in head] + [float(gap - head.sum())]

    return Attribution(
        method="kernel_shap",
        target_class=target_label,
        unit_kind=space.unit_kind,
        units=space.ids,
        scores=tuple(scores),
        baseline_value=v_empty,
        prediction_value=v_full,
        seed=config.seed,
        extras=(("mode_exact", 1.0 if mode == "exact_enumeration" else 0.0),),
    )
