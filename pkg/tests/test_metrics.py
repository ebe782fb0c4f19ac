from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ocelmine.metrics import (
    ConfusionCounts,
    EmptyConfusion,
    MetricReport,
    compute_metrics,
    default_fixture_path,
    load_fixture_file,
    select_model,
)

TOLERANCE = 0.005


class TestComputeMetrics:
    def test_published_best_row(self):
        # the winning version: accuracy 0.8, precision/recall/f1 all 0.81
        report = compute_metrics(ConfusionCounts(tp=81, fp=19, tn=71, fn=19))
        assert report.accuracy == pytest.approx(0.80)
        assert report.precision == pytest.approx(0.81)
        assert report.recall == pytest.approx(0.81)
        assert report.f1 == pytest.approx(0.81)

    def test_perfect_classifier(self):
        report = compute_metrics(ConfusionCounts(tp=50, fp=0, tn=50, fn=0))
        assert (report.accuracy, report.precision, report.recall, report.f1) == (1.0, 1.0, 1.0, 1.0)

    def test_undefined_precision_is_marked_not_zeroed(self):
        report = compute_metrics(ConfusionCounts(tp=0, fp=0, tn=90, fn=10))
        assert report.precision is None
        assert report.recall == 0.0
        assert report.accuracy == pytest.approx(0.9)
        assert report.f1 is None

    def test_empty_confusion(self):
        with pytest.raises(EmptyConfusion):
            compute_metrics(ConfusionCounts(0, 0, 0, 0))

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            ConfusionCounts(tp=-1, fp=0, tn=0, fn=0)

    @given(
        tp=st.integers(0, 500),
        fp=st.integers(0, 500),
        tn=st.integers(0, 500),
        fn=st.integers(0, 500),
        k=st.integers(1, 9),
    )
    @settings(max_examples=100, deadline=None, database=None, derandomize=True)
    def test_scale_invariance(self, tp, fp, tn, fn, k):
        if tp + fp + tn + fn == 0:
            return
        base = compute_metrics(ConfusionCounts(tp, fp, tn, fn))
        scaled = compute_metrics(ConfusionCounts(tp * k, fp * k, tn * k, fn * k))
        for name in ("accuracy", "precision", "recall", "f1"):
            a, b = getattr(base, name), getattr(scaled, name)
            assert (a is None and b is None) or a == pytest.approx(b)

    @given(tp=st.integers(1, 500), fp=st.integers(0, 500), fn=st.integers(0, 500))
    @settings(max_examples=100, deadline=None, database=None, derandomize=True)
    def test_f1_between_precision_and_recall(self, tp, fp, fn):
        report = compute_metrics(ConfusionCounts(tp, fp, 0, fn))
        assert min(report.precision, report.recall) <= report.f1 + 1e-12
        assert report.f1 <= max(report.precision, report.recall) + 1e-12


class TestSelectModel:
    def test_single_report(self):
        report = MetricReport(0.5, 0.5, 0.5, 0.5)
        selection = select_model({"only": report}, 0.7)
        assert selection.version == "only"
        assert not selection.meets_baseline

    def test_recall_wins(self):
        reports = {
            "a": MetricReport(0.9, 0.9, 0.60, 0.9),
            "b": MetricReport(0.5, 0.5, 0.75, 0.5),
        }
        assert select_model(reports, 0.7).version == "b"

    def test_tie_breaks_on_f1_then_label(self):
        reports = {
            "v4-fin": MetricReport(0.74, 0.76, 0.72, 0.74),
            "v3-fin": MetricReport(0.77, 0.81, 0.72, 0.76),
        }
        assert select_model(reports, 0.7).version == "v3-fin"
        tied = {
            "beta": MetricReport(0.7, 0.7, 0.7, 0.7),
            "alfa": MetricReport(0.7, 0.7, 0.7, 0.7),
        }
        assert select_model(tied, 0.7).version == "alfa"

    def test_adding_weaker_report_never_changes_winner(self):
        reports = {"best": MetricReport(0.8, 0.8, 0.81, 0.8)}
        first = select_model(reports, 0.7)
        reports["worse"] = MetricReport(0.99, 0.99, 0.5, 0.66)
        assert select_model(reports, 0.7).version == first.version

    def test_empty_reports_rejected(self):
        with pytest.raises(ValueError):
            select_model({}, 0.7)

    def test_undefined_recall_ranks_last(self):
        reports = {
            "broken": MetricReport(0.5, None, None, None),
            "ok": MetricReport(0.5, 0.5, 0.1, 0.2),
        }
        assert select_model(reports, 0.7).version == "ok"


class TestBundledFixtures:
    def test_ten_rows(self):
        rows, baseline = load_fixture_file(default_fixture_path())
        assert len(rows) == 10
        assert baseline == 0.7

    def test_confusions_reproduce_published_metrics(self):
        rows, _ = load_fixture_file(default_fixture_path())
        for row in rows:
            computed = compute_metrics(row.confusion)
            for name in ("accuracy", "precision", "recall", "f1"):
                published = getattr(row.published, name)
                assert getattr(computed, name) == pytest.approx(published, abs=TOLERANCE), row.key

    def test_selection_over_published_rows(self):
        rows, baseline = load_fixture_file(default_fixture_path())
        selection = select_model({row.key: row.published for row in rows}, baseline)
        assert selection.version == "v5-eng"
        assert selection.recall == pytest.approx(0.81)
        assert selection.meets_baseline
