import pytest

from support import make_blobs, numeric_schema

from glassbox.core.types import TabularSample, TextSample
from glassbox.errors import IncompatibleError, ValidationError
from glassbox.explainers import (
    MethodPolicy,
    TabularMeans,
    explain,
    explain_global,
)
from glassbox.models import TrainConfig, text_dataset, train_logistic, train_mlp, train_tree


@pytest.fixture(scope="module")
def text_models():
    ds = text_dataset(
        ["late bus again", "fine ride today", "late again", "all good"],
        ["bad", "good", "bad", "good"],
    )
    return {
        "mlp": train_mlp(ds, TrainConfig(learning_rate=0.5, epochs=150, seed=0)),
        "linear": train_logistic(ds, TrainConfig(epochs=150)),
    }


@pytest.fixture(scope="module")
def tabular_tree():
    return train_tree(make_blobs(n_per_class=20, seed=30), TrainConfig())


def test_lrp_on_tree_is_method_unavailable(tabular_tree):
    with pytest.raises(IncompatibleError, match="method unavailable"):
        explain(tabular_tree, TabularSample((0.0, 0.0)), "lrp")


def test_lrp_on_tabular_mlp_blocked_by_default_policy():
    # the default matrix offers LRP for the text task only
    ds = make_blobs(n_per_class=15, seed=31)
    mlp = train_mlp(ds, TrainConfig(epochs=30))
    with pytest.raises(IncompatibleError):
        explain(mlp, ds.samples[0], "lrp")


def test_text_lime_dispatches_to_token_units(text_models):
    attr = explain(text_models["mlp"], TextSample("late bus again"), "lime", seed=0)
    assert attr.method == "lime"
    assert attr.unit_kind == "token"


def test_text_lrp_dispatches(text_models):
    attr = explain(text_models["mlp"], TextSample("late bus"), "lrp")
    assert attr.method == "lrp"


def test_shap_for_text_blocked_by_default_policy(text_models):
    with pytest.raises(IncompatibleError):
        explain(text_models["mlp"], TextSample("late bus"), "kernel_shap")


def test_custom_policy_can_widen(text_models):
    policy = MethodPolicy({"text": ("kernel_shap",)})
    attr = explain(
        text_models["mlp"], TextSample("late bus"), "kernel_shap", policy=policy
    )
    assert attr.method == "kernel_shap"


def test_permutation_importance_needs_model_level_path(tabular_tree):
    with pytest.raises(IncompatibleError, match="model-level"):
        explain(tabular_tree, TabularSample((0.0, 0.0)), "permutation_importance")


def test_model_level_path_returns_global_importance(tabular_tree):
    holdout = make_blobs(n_per_class=10, seed=32)
    importance = explain_global(tabular_tree, holdout, repeats=2, seed=0)
    assert importance.feature_names == ("f0", "f1")
    assert len(importance.importances) == 2


def test_tabular_without_baseline_rejected(tabular_tree):
    with pytest.raises(ValidationError, match="baseline"):
        explain(tabular_tree, TabularSample((0.0, 0.0)), "lime")


def test_tabular_with_baseline_works(tabular_tree):
    attr = explain(
        tabular_tree,
        TabularSample((0.0, 0.0)),
        "kernel_shap",
        baseline=TabularMeans((1.0, 2.0)),
        seed=0,
    )
    assert attr.unit_kind == "feature"
    assert attr.seed == 0


def test_unknown_method_rejected(tabular_tree):
    with pytest.raises(ValidationError):
        explain(tabular_tree, TabularSample((0.0, 0.0)), "saliency")


def test_seed_flows_into_default_config(text_models):
    a = explain(text_models["mlp"], TextSample("late bus again today"), "lime", seed=3)
    b = explain(text_models["mlp"], TextSample("late bus again today"), "lime", seed=3)
    assert a == b
    assert a.seed == 3
