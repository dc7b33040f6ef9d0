import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glassbox.errors import ValidationError
from glassbox.profiler import (
    ProfileConfig,
    RawTable,
    infer_kind,
    profile,
    read_csv_table,
)


class TestInferKind:
    def test_numeric(self):
        assert infer_kind(["1.5", "2", "3"]) == "numeric"

    def test_boolean_yes_no(self):
        assert infer_kind(["Yes", "No", "Yes"]) == "boolean"

    def test_wind_directions_are_categorical(self):
        assert infer_kind(["N", "NNE", "SW"]) == "categorical"

    def test_zero_one_is_numeric(self):
        # the numeric rule fires before the boolean rule
        assert infer_kind(["0", "1", "0"]) == "numeric"

    def test_single_distinct_boolean_word_is_categorical(self):
        assert infer_kind(["yes", "yes"]) == "categorical"

    def test_all_missing_rejected(self):
        with pytest.raises(ValidationError):
            infer_kind([None, "", None])

    def test_missing_ignored(self):
        assert infer_kind(["1", None, "2", ""]) == "numeric"


class TestProfileStats:
    def test_hand_computed_column(self):
        table = RawTable.from_rows(["x"], [["1"], ["2"], ["3"], ["4"]])
        report = profile(table)
        stats = report.columns[0].numeric
        assert stats.mean == 2.5
        assert stats.q2 == 2.5
        assert stats.std == pytest.approx(math.sqrt(1.25), abs=1e-12)
        assert stats.minimum == 1.0 and stats.maximum == 4.0
        assert stats.q1 == 1.75 and stats.q3 == 3.25  # linear interpolation

    def test_correlation_self_and_negation(self):
        rows = [[str(v), str(-v)] for v in (1.0, 2.0, 5.0, 7.0, 11.0)]
        report = profile(RawTable.from_rows(["x", "neg"], rows))
        matrix = report.correlation
        assert matrix[0][0] == 1.0 and matrix[1][1] == 1.0
        assert matrix[0][1] == pytest.approx(-1.0, abs=1e-12)
        assert matrix[0][1] == matrix[1][0]

    def test_histogram_reconciles_with_counts(self):
        values = [str(v) for v in np.linspace(0, 10, 37)]
        table = RawTable.from_rows(["x"], [[v] for v in values] + [[None]] * 3)
        report = profile(table)
        col = report.columns[0]
        assert col.missing_count == 3
        assert sum(b.count for b in col.histogram) == col.count - col.missing_count

    def test_last_bin_right_closed(self):
        table = RawTable.from_rows(["x"], [[str(v)] for v in (0.0, 5.0, 10.0)])
        report = profile(table)
        assert report.columns[0].histogram[-1].count == 1  # the max lands in bin 10

    def test_constant_column_histogram(self):
        table = RawTable.from_rows(["x"], [["7"], ["7"], ["7"]])
        report = profile(table)
        assert report.columns[0].histogram[0].count == 3


class TestWarnings:
    def test_high_missing_fires_above_threshold(self):
        rows = [["1"]] * 17 + [[None]] * 3  # 15% missing
        report = profile(RawTable.from_rows(["x"], rows))
        assert any(w.kind == "high_missing" and w.column == "x" for w in report.warnings)

    def test_exactly_ten_percent_does_not_fire(self):
        rows = [["1"], ["2"], ["3"], ["4"], ["5"], ["6"], ["7"], ["8"], ["9"], [None]]
        report = profile(RawTable.from_rows(["x"], rows))
        assert not any(w.kind == "high_missing" for w in report.warnings)

    def test_constant_warning(self):
        report = profile(RawTable.from_rows(["x"], [["same"]] * 4))
        assert any(w.kind == "constant" for w in report.warnings)

    def test_high_cardinality_warning(self):
        rows = [[f"v{i}"] for i in range(51)]
        report = profile(RawTable.from_rows(["x"], rows))
        assert any(w.kind == "high_cardinality" for w in report.warnings)

    def test_cardinality_threshold_is_configurable(self):
        rows = [[f"v{i}"] for i in range(51)]
        report = profile(
            RawTable.from_rows(["x"], rows),
            ProfileConfig(high_cardinality_threshold=100),
        )
        assert not any(w.kind == "high_cardinality" for w in report.warnings)


class TestCorrelationEdges:
    def test_constant_numeric_excluded_with_reason(self):
        rows = [["1", str(v)] for v in (1.0, 2.0, 3.0)]
        report = profile(RawTable.from_rows(["const", "x"], rows))
        assert report.correlation_columns == ("x",)
        assert report.correlation_excluded[0][0] == "const"

    def test_pairwise_complete_under_missingness(self):
        rows = [
            ["1", "2"], ["2", "4"], ["3", None], [None, "8"], ["5", "10"],
        ]
        report = profile(RawTable.from_rows(["x", "y"], rows))
        assert report.correlation[0][1] == pytest.approx(1.0, abs=1e-12)

    def test_row_reordering_invariance(self):
        rows = [["1", "a"], ["2", "b"], ["3", "a"], ["4", "c"], [None, "b"]]
        fwd = profile(RawTable.from_rows(["x", "c"], rows))
        rev = profile(RawTable.from_rows(["x", "c"], rows[::-1]))
        assert fwd.columns == rev.columns
        assert fwd.correlation == rev.correlation

    @given(st.lists(st.floats(min_value=-100, max_value=100), min_size=3, max_size=30))
    @settings(max_examples=50, deadline=None)
    def test_correlation_entries_in_range(self, values):
        rows = [[str(v), str(2 * v + 1)] for v in values]
        report = profile(RawTable.from_rows(["x", "y"], rows))
        for row in report.correlation:
            for entry in row:
                if entry is not None:
                    assert -1.0 <= entry <= 1.0


class TestCsv(object):
    def test_round_trip(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("a,b\n1,\n2,x\n", encoding="utf-8")
        table = read_csv_table(path)
        assert table.names == ("a", "b")
        assert table.columns[1] == (None, "x")

    def test_ragged_rejected(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("a,b\n1\n", encoding="utf-8")
        with pytest.raises(ValidationError):
            read_csv_table(path)
