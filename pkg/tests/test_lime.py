import numpy as np
import pytest

from support import ConstantProbe, LinearUnitProbe, TokenPresenceProbe

from glassbox.core.types import TabularSample, TextSample
from glassbox.errors import ValidationError
from glassbox.evaluation import spearman
from glassbox.explainers import LimeConfig, TabularMeans, TextRemoval, lime_explain


def test_single_trigger_token_dominates():
    model = TokenPresenceProbe("late")
    sample = TextSample("the bus was very late near the old bridge today")
    attr = lime_explain(model, sample, LimeConfig(seed=0), TextRemoval(), "pos")
    by_unit = dict(zip(attr.units, attr.scores))
    late_score = by_unit.pop("late@4")
    assert late_score > 0
    assert all(late_score >= 5 * abs(v) for v in by_unit.values())


def test_constant_model_all_slopes_zero():
    attr = lime_explain(
        ConstantProbe(), TextSample("alpha beta gamma"), LimeConfig(seed=1), TextRemoval()
    )
    assert max(abs(s) for s in attr.scores) <= 1e-8


def test_deterministic_given_seed():
    model = TokenPresenceProbe()
    sample = TextSample("late bus again late")
    a = lime_explain(model, sample, LimeConfig(seed=5), TextRemoval())
    b = lime_explain(model, sample, LimeConfig(seed=5), TextRemoval())
    assert a == b
    c = lime_explain(model, sample, LimeConfig(seed=6), TextRemoval())
    assert c.scores != a.scores


def test_linear_recovery_ranking():
    coefficients = [0.005 + 0.006 * i for i in range(10)]
    model = LinearUnitProbe(coefficients)
    sample = TabularSample((1.0,) * 10)
    baseline = TabularMeans((0.0,) * 10)
    slopes = np.zeros(10)
    for seed in range(5):
        attr = lime_explain(model, sample, LimeConfig(num_samples=2000, seed=seed),
                            baseline, "pos")
        slopes += np.asarray(attr.scores)
    slopes /= 5
    assert spearman(slopes.tolist(), coefficients) == 1.0


def test_metadata_fields():
    model = TokenPresenceProbe()
    sample = TextSample("late bus")
    attr = lime_explain(model, sample, LimeConfig(seed=9), TextRemoval())
    assert attr.method == "lime"
    assert attr.unit_kind == "token"
    assert attr.seed == 9
    assert attr.target_class == "pos"  # predicted class of the raw sample
    assert attr.prediction_value == pytest.approx(0.9)
    assert attr.baseline_value == pytest.approx(0.1)  # all tokens removed
    assert "intercept" in attr.extras_dict


def test_num_samples_floor():
    model = TokenPresenceProbe()
    sample = TextSample("one two three four five six")
    with pytest.raises(ValidationError):
        lime_explain(model, sample, LimeConfig(num_samples=7, seed=0), TextRemoval())


def test_zero_units_rejected():
    model = TokenPresenceProbe()
    with pytest.raises(ValidationError):
        lime_explain(model, TextSample("!!!"), LimeConfig(seed=0), TextRemoval())
