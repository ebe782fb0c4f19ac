"""Classifier evaluation arithmetic and recall-first model selection.

A confusion with an empty denominator yields ``None`` for the affected
metric instead of a conventional zero, so reports never silently coerce an
undefined value. Selection maximizes recall because missed claim parts
carry the dominant business cost; ties fall back to F1 and then to the
lexicographically smaller version label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional

from .core import OcelmineError

__all__ = [
    "ConfusionCounts",
    "EmptyConfusion",
    "FixtureRow",
    "MetricReport",
    "ModelSelection",
    "compute_metrics",
    "default_fixture_path",
    "load_fixture_file",
    "parse_fixtures",
    "select_model",
]


class EmptyConfusion(OcelmineError):
    """All four confusion counts are zero."""


@dataclass(frozen=True)
class ConfusionCounts:
    """Binary classification outcome counts."""

    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "tn", "fn"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class MetricReport:
    """Accuracy, precision, recall, and F1; ``None`` marks an undefined metric."""

    accuracy: Optional[float]
    precision: Optional[float]
    recall: Optional[float]
    f1: Optional[float]


def _ratio(numerator: int, denominator: int) -> Optional[float]:
    return numerator / denominator if denominator else None


def compute_metrics(counts: ConfusionCounts) -> MetricReport:
    """Compute the four standard metrics from a confusion.

    Raises:
        EmptyConfusion: when all counts are zero.
    """
    if counts.total == 0:
        raise EmptyConfusion("cannot compute metrics from an all-zero confusion")
    precision = _ratio(counts.tp, counts.tp + counts.fp)
    recall = _ratio(counts.tp, counts.tp + counts.fn)
    f1 = None
    if precision is not None and recall is not None and precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    return MetricReport(
        accuracy=(counts.tp + counts.tn) / counts.total,
        precision=precision,
        recall=recall,
        f1=f1,
    )


@dataclass(frozen=True)
class ModelSelection:
    """The recall-first winner and whether it clears the baseline."""

    version: str
    recall: float
    meets_baseline: bool


def select_model(reports: Mapping[str, MetricReport], baseline_recall: float) -> ModelSelection:
    """Pick the version with maximal recall.

    Ties break on higher F1, then on the lexicographically smaller version
    label. Undefined recall or F1 ranks below any defined value.

    Raises:
        ValueError: when ``reports`` is empty.
    """
    if not reports:
        raise ValueError("select_model needs at least one report")

    def rank(item: tuple[str, MetricReport]):
        version, report = item
        recall = report.recall if report.recall is not None else float("-inf")
        f1 = report.f1 if report.f1 is not None else float("-inf")
        return (-recall, -f1, version)

    version, report = min(reports.items(), key=rank)
    recall = report.recall if report.recall is not None else 0.0
    return ModelSelection(version=version, recall=recall, meets_baseline=recall >= baseline_recall)


@dataclass(frozen=True)
class FixtureRow:
    """One evaluated model version: published metrics plus a confusion
    realizing them."""

    version: str
    language: str
    published: MetricReport
    confusion: ConfusionCounts

    @property
    def key(self) -> str:
        return f"{self.version}-{self.language}"


def parse_fixtures(text: str) -> tuple[list[FixtureRow], float]:
    """Parse a metric fixture document; returns (rows, baseline recall)."""
    document = json.loads(text)
    rows = []
    for entry in document["rows"]:
        confusion = entry["confusion"]
        rows.append(
            FixtureRow(
                version=str(entry["version"]),
                language=str(entry["language"]),
                published=MetricReport(
                    accuracy=float(entry["accuracy"]),
                    precision=float(entry["precision"]),
                    recall=float(entry["recall"]),
                    f1=float(entry["f1"]),
                ),
                confusion=ConfusionCounts(
                    tp=int(confusion["tp"]),
                    fp=int(confusion["fp"]),
                    tn=int(confusion["tn"]),
                    fn=int(confusion["fn"]),
                ),
            )
        )
    return rows, float(document["baseline_recall"])


def load_fixture_file(path: str | Path) -> tuple[list[FixtureRow], float]:
    return parse_fixtures(Path(path).read_text(encoding="utf-8"))


def default_fixture_path() -> Path:
    """Path of the bundled model-evaluation fixture."""
    return Path(str(resources.files("ocelmine").joinpath("data/model_eval_table.json")))
