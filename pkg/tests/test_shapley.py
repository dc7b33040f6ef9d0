import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import LinearUnitProbe, TokenPresenceProbe, make_blobs

from glassbox.core.types import TabularSample, TextSample
from glassbox.errors import ValidationError
from glassbox.explainers import (
    ShapConfig,
    TabularMeans,
    TextRemoval,
    exact_shapley,
    kernel_shap,
    shapley_from_game,
    shapley_kernel_weight,
)
from glassbox.models import TrainConfig, train_logistic, train_tree


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class TestExactOracleAxioms:
    def test_symmetry_is_bitwise_exact(self):
        # size-dependent game: all players are exchangeable
        m = 6
        values = {}

        def v(mask):
            return popcount(mask) ** 2 / 16.0

        phi = shapley_from_game(v, m)
        assert all(p == phi[0] for p in phi)

    def test_dummy_player_is_exactly_zero(self):
        # v depends only on player 2's membership; everyone else is a dummy
        m = 5

        def v(mask):
            return 0.75 if (mask >> 2) & 1 else 0.0

        phi = shapley_from_game(v, m)
        assert phi[2] == pytest.approx(0.75, abs=1e-12)
        for i in (0, 1, 3, 4):
            assert phi[i] == 0.0

    def test_additive_game_recovers_coefficients(self):
        m = 4
        c = [0.125, -0.5, 0.25, 1.0]

        def v(mask):
            return sum(c[i] for i in range(m) if (mask >> i) & 1)

        phi = shapley_from_game(v, m)
        for got, want in zip(phi, c):
            assert got == pytest.approx(want, abs=1e-12)

    def test_efficiency_of_game_values(self):
        rng = np.random.default_rng(0)
        m = 5
        table = rng.uniform(size=1 << m)

        def v(mask):
            return float(table[mask])

        phi = shapley_from_game(v, m)
        assert sum(phi) == pytest.approx(table[(1 << m) - 1] - table[0], abs=1e-9)


class TestKernelWeight:
    def test_formula(self):
        # (M-1) / (C(M,s) * s * (M-s))
        assert shapley_kernel_weight(4, 1) == pytest.approx(3 / (4 * 1 * 3))
        assert shapley_kernel_weight(4, 2) == pytest.approx(3 / (6 * 2 * 2))

    def test_boundary_sizes_rejected(self):
        with pytest.raises(ValidationError):
            shapley_kernel_weight(4, 0)
        with pytest.raises(ValidationError):
            shapley_kernel_weight(4, 4)


class TestKernelVsOracle:
    def test_text_probe(self):
        model = TokenPresenceProbe("late")
        sample = TextSample("late bus near bridge")
        config = ShapConfig(baseline=TextRemoval(), mode="exact_enumeration")
        ks = kernel_shap(model, sample, config)
        ex = exact_shapley(model, sample, TextRemoval())
        assert ks.units == ex.units
        np.testing.assert_allclose(ks.scores, ex.scores, atol=1e-6)

    def test_trained_models(self):
        ds = make_blobs(n_per_class=20, seed=21)
        baseline = TabularMeans((1.0, 2.0))
        sample = ds.samples[0]
        for train in (train_logistic, train_tree):
            model = train(ds, TrainConfig(epochs=60))
            ks = kernel_shap(model, sample, ShapConfig(baseline=baseline, mode="exact_enumeration"))
            ex = exact_shapley(model, sample, baseline)
            np.testing.assert_allclose(ks.scores, ex.scores, atol=1e-6)

    def test_linear_game_closed_form(self):
        # additive v: phi_i = w_i (x_i - b_i) with independent baseline
        coefficients = (0.05, -0.03, 0.08, 0.02)
        model = LinearUnitProbe(coefficients, base=0.4)
        sample = TabularSample((1.0, 1.0, 1.0, 1.0))
        baseline = TabularMeans((0.0, 0.0, 0.0, 0.0))
        ks = kernel_shap(model, sample, ShapConfig(baseline=baseline, mode="exact_enumeration"), "pos")
        np.testing.assert_allclose(ks.scores, coefficients, atol=1e-6)


class TestEfficiency:
    @pytest.mark.parametrize("mode", ["exact_enumeration", "sampled"])
    def test_sum_matches_gap(self, mode):
        model = TokenPresenceProbe("late")
        sample = TextSample("late bus near the bridge again")
        config = ShapConfig(
            baseline=TextRemoval(), mode=mode,
            num_coalitions=64 if mode == "sampled" else None, seed=3,
        )
        attr = kernel_shap(model, sample, config)
        gap = attr.prediction_value - attr.baseline_value
        assert abs(sum(attr.scores) - gap) <= 1e-9

    def test_single_unit(self):
        model = TokenPresenceProbe("late")
        attr = kernel_shap(
            model, TextSample("late"), ShapConfig(baseline=TextRemoval())
        )
        assert attr.scores == (pytest.approx(0.8),)


class TestSampledMode:
    def test_deterministic_given_seed(self):
        model = TokenPresenceProbe("late")
        sample = TextSample("late bus near the old bridge by the river")
        config = ShapConfig(baseline=TextRemoval(), mode="sampled", num_coalitions=128, seed=4)
        assert kernel_shap(model, sample, config) == kernel_shap(model, sample, config)

    def test_close_to_oracle(self):
        model = TokenPresenceProbe("late")
        sample = TextSample("late bus near the old bridge")
        config = ShapConfig(baseline=TextRemoval(), mode="sampled", num_coalitions=2000, seed=5)
        ks = kernel_shap(model, sample, config)
        ex = exact_shapley(model, sample, TextRemoval())
        np.testing.assert_allclose(ks.scores, ex.scores, atol=0.05)

    def test_too_few_coalitions_rejected(self):
        model = TokenPresenceProbe("late")
        with pytest.raises(ValidationError):
            kernel_shap(
                model,
                TextSample("one two three late"),
                ShapConfig(baseline=TextRemoval(), mode="sampled", num_coalitions=3),
            )


class TestOracleLimits:
    def test_unit_cap(self):
        model = TokenPresenceProbe("late")
        text = " ".join(f"w{i}" for i in range(16))
        with pytest.raises(ValidationError):
            exact_shapley(model, TextSample(text), TextRemoval())


class TestOracleEquivalenceProperty:
    @given(
        st.integers(min_value=0, max_value=10_000),
        st.integers(min_value=3, max_value=6),
        st.floats(min_value=0.05, max_value=0.45),
    )
    @settings(max_examples=25, deadline=None)
    def test_kernel_matches_oracle_on_random_probes(self, seed, m, base):
        # randomized linear games: kernel estimate must equal the oracle
        rng = np.random.default_rng(seed)
        coefficients = rng.uniform(-base / m, base / m, size=m)
        model = LinearUnitProbe(coefficients, base=0.5)
        sample = TabularSample(tuple(float(v) for v in rng.uniform(0, 1, size=m)))
        baseline = TabularMeans(tuple(float(v) for v in rng.uniform(0, 1, size=m)))
        ks = kernel_shap(model, sample, ShapConfig(baseline=baseline, mode="exact_enumeration"), "pos")
        ex = exact_shapley(model, sample, baseline, "pos")
        np.testing.assert_allclose(ks.scores, ex.scores, atol=1e-6)
