import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import TokenPresenceProbe

from glassbox.core.types import Attribution, HumanAnnotation, TextSample
from glassbox.errors import ConstantScoresError, IncompatibleError, ValidationError
from glassbox.evaluation import (
    ScenarioEvalCase,
    agreement_report,
    align_units,
    default_k,
    plausibility,
    sign_agreement,
    spearman,
    topk_jaccard,
)
from glassbox.explainers import MethodPolicy, TextRemoval


def attribution(units, scores, method="lime", target="pos", kind="token"):
    return Attribution(method, target, kind, tuple(units), tuple(scores), 0.0, 1.0, 0)


class TestAlignUnits:
    def test_identical_sets_full_pairing(self):
        a = attribution(["x@0", "y@1"], [0.5, -0.2])
        b = attribution(["x@0", "y@1"], [0.1, 0.9], method="kernel_shap")
        aligned = align_units(a, b)
        assert aligned.units == ("x@0", "y@1")
        assert aligned.a_only == 0 and aligned.b_only == 0

    def test_disjoint_sets_error(self):
        a = attribution(["x@0"], [0.5])
        b = attribution(["z@2"], [0.1])
        with pytest.raises(ValidationError, match="no common units"):
            align_units(a, b)

    def test_partial_intersection(self):
        a = attribution(["x@0", "y@1"], [0.5, -0.2])
        b = attribution(["y@1", "z@2"], [0.9, 0.4])
        aligned = align_units(a, b)
        assert aligned.units == ("y@1",)
        assert aligned.a_only == 1 and aligned.b_only == 1

    def test_kind_mismatch(self):
        a = attribution(["x@0"], [0.5])
        b = attribution(["x@0"], [0.5], kind="feature")
        with pytest.raises(IncompatibleError):
            align_units(a, b)

    def test_class_mismatch(self):
        a = attribution(["x@0"], [0.5], target="pos")
        b = attribution(["x@0"], [0.5], target="neg")
        with pytest.raises(IncompatibleError):
            align_units(a, b)


class TestSpearman:
    def test_identity(self):
        assert spearman([1.0, 2.0, 3.0], [10.0, 20.0, 30.0]) == 1.0

    def test_reversal(self):
        assert spearman([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == -1.0

    def test_hand_computed_single_swap(self):
        # d^2 = (0,0,1,1): rho = 1 - 6*2/(4*15) = 0.8
        assert spearman([1, 2, 3, 4], [1, 2, 4, 3]) == pytest.approx(0.8, abs=1e-12)

    def test_ties_get_average_ranks(self):
        # b has a tie for its top two; hand value via average ranks
        rho = spearman([1.0, 2.0, 3.0], [5.0, 9.0, 9.0])
        assert rho == pytest.approx(np.sqrt(3) / 2, abs=1e-12)

    def test_constant_vector_error(self):
        with pytest.raises(ConstantScoresError):
            spearman([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_too_short(self):
        with pytest.raises(ValidationError):
            spearman([1.0], [2.0])

    @given(
        st.lists(
            st.integers(min_value=-1000, max_value=1000),
            min_size=2, max_size=12, unique=True,
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_symmetry_range_and_monotone_invariance(self, values):
        xs = [float(v) for v in values]
        ys = [v**3 + v for v in values]  # strictly monotone, exact on ints
        assert spearman(xs, ys) == 1.0
        rng = np.random.default_rng(0)
        zs = rng.permutation(xs).tolist()
        assert spearman(xs, zs) == pytest.approx(spearman(zs, xs), abs=1e-12)
        assert -1.0 <= spearman(xs, zs) <= 1.0


class TestTopkJaccard:
    def test_identical(self):
        a = attribution(["x@0", "y@1", "z@2"], [0.9, -0.5, 0.1])
        b = attribution(["x@0", "y@1", "z@2"], [0.9, -0.5, 0.1], method="lrp")
        for k in (1, 2, 3):
            assert topk_jaccard(a, b, k) == 1.0

    def test_disjoint_topk(self):
        a = attribution(["x@0", "y@1", "z@2", "w@3"], [0.9, 0.8, 0.1, 0.05])
        b = attribution(["x@0", "y@1", "z@2", "w@3"], [0.1, 0.05, 0.9, 0.8], method="lrp")
        assert topk_jaccard(a, b, 2) == 0.0

    def test_one_shared_of_two(self):
        a = attribution(["x@0", "y@1", "z@2"], [0.9, 0.8, 0.1])
        b = attribution(["x@0", "y@1", "z@2"], [0.9, 0.1, 0.8], method="lrp")
        assert topk_jaccard(a, b, 2) == pytest.approx(1 / 3)

    def test_absolute_value_ranking(self):
        a = attribution(["x@0", "y@1"], [-0.9, 0.1])
        b = attribution(["x@0", "y@1"], [0.9, 0.5], method="lrp")
        assert topk_jaccard(a, b, 1) == 1.0  # |-0.9| ranks first

    def test_scale_invariance(self):
        a = attribution(["x@0", "y@1", "z@2"], [0.9, 0.5, 0.1])
        b = attribution(["x@0", "y@1", "z@2"], [9.0, 5.0, 1.0], method="lrp")
        assert topk_jaccard(a, b, 2) == 1.0

    def test_k_bounds(self):
        a = attribution(["x@0"], [0.9])
        b = attribution(["x@0"], [0.1], method="lrp")
        with pytest.raises(ValidationError):
            topk_jaccard(a, b, 2)
        with pytest.raises(ValidationError):
            topk_jaccard(a, b, 0)


class TestSignAgreement:
    def test_identical(self):
        a = attribution(["x@0", "y@1"], [0.5, -0.5])
        b = attribution(["x@0", "y@1"], [0.2, -0.9], method="lrp")
        assert sign_agreement(a, b) == 1.0

    def test_negated(self):
        a = attribution(["x@0", "y@1"], [0.5, -0.5])
        b = attribution(["x@0", "y@1"], [-0.5, 0.5], method="lrp")
        assert sign_agreement(a, b) == 0.0

    def test_half(self):
        a = attribution(["a@0", "b@1", "c@2", "d@3"], [1.0, 1.0, -1.0, -1.0])
        b = attribution(["a@0", "b@1", "c@2", "d@3"], [1.0, -1.0, -1.0, 1.0], method="lrp")
        assert sign_agreement(a, b) == 0.5

    def test_zero_matches_only_zero(self):
        a = attribution(["x@0", "y@1"], [0.0, 0.5])
        b = attribution(["x@0", "y@1"], [0.0, 0.5], method="lrp")
        assert sign_agreement(a, b) == 1.0
        c = attribution(["x@0", "y@1"], [0.1, 0.5], method="lrp")
        assert sign_agreement(a, c) == 0.5


class TestPlausibility:
    def test_human_subset_of_topk(self):
        attr = attribution(["a@0", "b@1", "c@2"], [0.9, 0.8, 0.1])
        human = HumanAnnotation("s", frozenset({"a@0", "b@1"}))
        assert plausibility(attr, human, 2) == 1.0

    def test_disjoint(self):
        attr = attribution(["a@0", "b@1", "c@2"], [0.9, 0.8, 0.1])
        human = HumanAnnotation("s", frozenset({"c@2"}))
        assert plausibility(attr, human, 2) == 0.0

    def test_both_grilles_one_covered(self):
        # human marks two regions; the method's top-k covers one of them
        attr = attribution(["5", "6", "9", "10"], [0.9, 0.05, 0.4, 0.3], kind="segment")
        human = HumanAnnotation("s", frozenset({"5", "6"}))
        assert plausibility(attr, human, 2) == 0.5

    def test_only_positive_scores_count(self):
        attr = attribution(["a@0", "b@1"], [-5.0, 0.1])
        human = HumanAnnotation("s", frozenset({"a@0"}))
        assert plausibility(attr, human, 2) == 0.0  # negative score is not "for"

    def test_unresolvable_units_rejected(self):
        attr = attribution(["a@0"], [0.9])
        human = HumanAnnotation("s", frozenset({"nope@9"}))
        with pytest.raises(ValidationError):
            plausibility(attr, human, 1)


class TestDefaultK:
    def test_small_and_large(self):
        assert default_k(3) == 1
        assert default_k(9) == 3
        assert default_k(16) == 5
        assert default_k(100) == 5


class TestAgreementReport:
    def probe_case(self):
        model = TokenPresenceProbe("late")
        samples = [
            ("s1", TextSample("late bus by the bridge")),
            ("s2", TextSample("all fine today")),
        ]
        policy = MethodPolicy({"text": ("lime", "kernel_shap")})
        annotations = {"s1": HumanAnnotation("s1", frozenset({"late@0"}))}
        return ScenarioEvalCase(
            "probe", samples, model, TextRemoval(), annotations, policy
        )

    def test_single_method_errors(self):
        with pytest.raises(IncompatibleError):
            agreement_report(self.probe_case(), ["lime"])

    def test_self_agreement_is_perfect(self):
        case = self.probe_case()
        case.policy = MethodPolicy({"text": ("lime", "kernel_shap")})
        report = agreement_report(case, ["lime", "kernel_shap"], k=2, seed=0)
        # compare each method against itself via a duplicated run
        a = agreement_report(case, ["lime", "kernel_shap"], k=2, seed=0)
        assert report == a  # deterministic given content and seed

    def test_report_structure_and_coverage(self):
        report = agreement_report(self.probe_case(), ["lime", "kernel_shap"], k=2, seed=0)
        assert report.methods == ("lime", "kernel_shap")
        assert report.evaluated >= 1
        pair = report.pairs[0]
        assert {"topk_jaccard", "sign_agreement"} <= set(pair.aggregates)
        assert "lime" in report.plausibility

    def test_duplicate_method_self_pairing(self):
        # two copies of the same method and seed agree perfectly
        from glassbox.explainers import LimeConfig, lime_explain
        from glassbox.evaluation import align_units as align

        model = TokenPresenceProbe("late")
        sample = TextSample("late bus near the bridge")
        a = lime_explain(model, sample, LimeConfig(seed=0), TextRemoval())
        b = lime_explain(model, sample, LimeConfig(seed=0), TextRemoval())
        assert spearman(a.scores, b.scores) == 1.0
        assert topk_jaccard(a, b, 2) == 1.0
        assert sign_agreement(a, b) == 1.0
