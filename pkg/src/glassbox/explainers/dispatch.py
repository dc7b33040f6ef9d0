"""Single explanation entry point enforcing the scenario-method matrix.

The default policy mirrors the platform's method availability per task:

    text    -> lrp, lime
    image   -> lime, kernel_shap, exact_shapley
    tabular -> lime, kernel_shap, exact_shapley, permutation_importance

The policy is configuration: callers may widen or narrow it. Hard
constraints (LRP needs an MLP, permutation importance is model-level)
always apply.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from glassbox.core.types import Attribution, Sample
from glassbox.errors import IncompatibleError, ValidationError
from glassbox.explainers.baseline import Baseline, TextRemoval
from glassbox.explainers.lime import LimeConfig, lime_explain
from glassbox.explainers.lrp import lrp_explain
from glassbox.explainers.permutation import GlobalImportance, permutation_importance
from glassbox.explainers.shapley import ShapConfig, exact_shapley, kernel_shap
from glassbox.models import Model
from glassbox.models.dataset import Dataset

INSTANCE_METHODS = ("lime", "kernel_shap", "exact_shapley", "lrp")


@dataclass(frozen=True)
class LrpConfig:
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if self.epsilon < 0:
            raise ValidationError("epsilon must be >= 0")


@dataclass(frozen=True)
class MethodPolicy:
    allowed: dict[str, tuple[str, ...]] = field(
        default_factory=lambda: {
            "text": ("lrp", "lime"),
            "image": ("lime", "kernel_shap", "exact_shapley"),
            "tabular": ("lime", "kernel_shap", "exact_shapley", "permutation_importance"),
        }
    )

    def methods_for(self, task: str) -> tuple[str, ...]:
        return self.allowed.get(task, ())

    def check(self, method: str, task: str) -> None:
        if method not in self.methods_for(task):
            raise IncompatibleError(
                f"method {method!r} unavailable for {task} task under this policy"
            )


DEFAULT_POLICY = MethodPolicy()


def explain(
    model: Model,
    sample: Sample,
    method: str,
    *,
    config: LimeConfig | ShapConfig | LrpConfig | None = None,
    baseline: Baseline | None = None,
    target_class: str | None = None,
    seed: int = 0,
    policy: MethodPolicy = DEFAULT_POLICY,
) -> Attribution:
    """Dispatch an instance-based explanation, enforcing the method policy.

    ``baseline`` is required for tabular and image tasks; text defaults to
    token removal. ``seed`` feeds any default config built here.
    """
    if method == "permutation_importance":
        raise IncompatibleError(
            "permutation importance is model-level; use explain_global"
        )
    if method not in INSTANCE_METHODS:
        raise ValidationError(f"unknown method {method!r}")
    if method == "lrp" and model.model_kind != "mlp":
        raise IncompatibleError("method unavailable for this model kind: LRP needs an MLP")
    policy.check(method, model.task)

    if baseline is None:
        if model.task == "text":
            baseline = TextRemoval()
        elif method != "lrp":
            raise ValidationError(
                f"{model.task} explanations need an explicit baseline"
            )

    if method == "lime":
        cfg = config if isinstance(config, LimeConfig) else LimeConfig(seed=seed)
        assert baseline is not None
        return lime_explain(model, sample, cfg, baseline, target_class)
    if method == "kernel_shap":
        if isinstance(config, ShapConfig):
            cfg = config
        else:
            assert baseline is not None
            cfg = ShapConfig(baseline=baseline, seed=seed)
        return kernel_shap(model, sample, cfg, target_class)
    if method == "exact_shapley":
        assert baseline is not None
        return exact_shapley(model, sample, baseline, target_class)
    cfg = config if isinstance(config, LrpConfig) else LrpConfig()
    return lrp_explain(model, sample, cfg.epsilon, target_class)


def explain_global(
    model: Model,
    dataset: Dataset,
    repeats: int = 5,
    seed: int = 0,
    policy: MethodPolicy = DEFAULT_POLICY,
) -> GlobalImportance:
    """Model-level path: permutation importance over a held-out set."""
    policy.check("permutation_importance", model.task)
    return permutation_importance(model, dataset, repeats=repeats, seed=seed)
