"""The four XAI methods plus the exact-Shapley oracle and shared solver."""

from glassbox.explainers.baseline import (
    Baseline,
    ImageMeanColor,
    TabularMeans,
    TextRemoval,
    baseline_from_dataset,
)
from glassbox.explainers.dispatch import (
    DEFAULT_POLICY,
    LrpConfig,
    MethodPolicy,
    explain,
    explain_global,
)
from glassbox.explainers.lime import LimeConfig, lime_explain
from glassbox.explainers.lrp import lrp_explain
from glassbox.explainers.permutation import (
    GlobalImportance,
    permutation_importance,
)
from glassbox.explainers.shapley import (
    ShapConfig,
    exact_shapley,
    kernel_shap,
    shapley_from_game,
    shapley_kernel_weight,
)
from glassbox.explainers.solver import weighted_ridge
from glassbox.explainers.units import GameValue, UnitSpace, unit_space

__all__ = [
    "Baseline",
    "DEFAULT_POLICY",
    "GameValue",
    "GlobalImportance",
    "ImageMeanColor",
    "LimeConfig",
    "LrpConfig",
    "MethodPolicy",
    "ShapConfig",
    "TabularMeans",
    "TextRemoval",
    "UnitSpace",
    "baseline_from_dataset",
    "exact_shapley",
    "explain",
    "explain_global",
    "kernel_shap",
    "lime_explain",
    "lrp_explain",
    "permutation_importance",
    "shapley_from_game",
    "shapley_kernel_weight",
    "unit_space",
    "weighted_ridge",
]
