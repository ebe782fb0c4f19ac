"""Matplotlib figure rendering for the report-producing CLI paths.

All renderers are headless (Agg backend) and write PNG files atomically
next to the delimited/JSON outputs they accompany.
"""

from __future__ import annotations

import io as _io
from pathlib import Path
from typing import Iterable, Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.patches import Circle

from .io import write_bytes_atomic
from .metrics import FixtureRow
from .ops import ExtractionMatrix
from .recipes import VennResult

__all__ = [
    "save_figure",
    "save_matrix_heatmap",
    "save_recall_chart",
    "save_target_comparison",
    "save_venn_figure",
]


def save_figure(fig, path: str | Path) -> None:
    """Render a figure to PNG via a buffer so the write is atomic."""
    buffer = _io.BytesIO()
    fig.savefig(buffer, format="png", dpi=150, bbox_inches="tight")
    plt.close(fig)
    write_bytes_atomic(path, buffer.getvalue())


def save_matrix_heatmap(matrix: ExtractionMatrix, path: str | Path) -> None:
    """Render the activity-by-type relation counts as an annotated heatmap."""
    activities = matrix.activities
    object_types = matrix.object_types
    if not activities or not object_types:
        fig, ax = plt.subplots(figsize=(4, 2))
        ax.text(0.5, 0.5, "empty log", ha="center", va="center")
        ax.axis("off")
        save_figure(fig, path)
        return
    grid = np.array(
        [[matrix.cell(a, t) for t in object_types] for a in activities], dtype=float
    )
    fig, ax = plt.subplots(figsize=(1.2 + 1.1 * max(1, len(object_types)), 1.0 + 0.6 * max(1, len(activities))))
    # log1p keeps small cells visible next to thousands-sized ones
    ax.imshow(np.log1p(grid), cmap="Blues", aspect="auto")
    ax.set_xticks(range(len(object_types)), [t.display for t in object_types], rotation=30, ha="right")
    ax.set_yticks(range(len(activities)), [a.display for a in activities])
    for row, activity in enumerate(activities):
        for col, object_type in enumerate(object_types):
            count = matrix.cell(activity, object_type)
            shade = "white" if grid[row, col] > 0.6 * np.log1p(grid).max() else "black"
            ax.text(col, row, str(count), ha="center", va="center", fontsize=8, color=shade)
    ax.set_title("E2O relations per activity and object type")
    save_figure(fig, path)


def save_venn_figure(venn: VennResult, path: str | Path) -> None:
    """Render the two-circle attribution of investigated claim parts."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.add_patch(Circle((0.0, 0.0), 1.5, alpha=0.4, color="#ffc8c8", ec="black"))
    ax.add_patch(Circle((1.5, 0.0), 1.5, alpha=0.4, color="#c8c8ff", ec="black"))
    ax.text(-0.5, 1.7, "AI", ha="center", fontweight="bold")
    ax.text(2.0, 1.7, "Claim handler", ha="center", fontweight="bold")
    ax.text(-0.7, 0.0, str(venn.ai_only), ha="center", va="center", fontsize=14, fontweight="bold")
    ax.text(0.75, 0.0, str(venn.both), ha="center", va="center", fontsize=14, fontweight="bold")
    ax.text(2.2, 0.0, str(venn.human_only), ha="center", va="center", fontsize=14, fontweight="bold")
    ax.set_xlim(-2.0, 3.5)
    ax.set_ylim(-2.0, 2.2)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title("Investigations by identification source")
    save_figure(fig, path)


def save_recall_chart(rows: Iterable[FixtureRow], baseline: float, path: str | Path) -> None:
    """Render recall per model version and language with the baseline."""
    rows = list(rows)
    versions = sorted({row.version for row in rows})
    languages = sorted({row.language for row in rows})
    by_key = {(row.version, row.language): row for row in rows}
    width = 0.8 / max(1, len(languages))
    fig, ax = plt.subplots(figsize=(6, 3.5))
    x = np.arange(len(versions))
    for i, language in enumerate(languages):
        recalls = [
            (by_key[(v, language)].published.recall or 0.0) if (v, language) in by_key else 0.0
            for v in versions
        ]
        ax.bar(x + (i - (len(languages) - 1) / 2) * width, recalls, width, label=language)
    ax.axhline(baseline, color="red", linestyle="--", linewidth=1, label=f"baseline {baseline:.2f}")
    ax.set_xticks(x, versions)
    ax.set_ylim(0, 1.0)
    ax.set_ylabel("recall")
    ax.set_title("Recall by model version")
    ax.legend(fontsize=8)
    save_figure(fig, path)


def save_target_comparison(observed: Mapping[str, int], targets: Mapping[str, int], path: str | Path) -> None:
    """Render observed counts against their reference targets (log scale)."""
    names = [name for name in targets if name in observed]
    fig, ax = plt.subplots(figsize=(7, 0.45 * max(4, len(names))))
    y = np.arange(len(names))
    ax.barh(y + 0.2, [max(targets[n], 0.1) for n in names], height=0.4, label="target", color="#bbbbbb")
    ax.barh(y - 0.2, [max(observed[n], 0.1) for n in names], height=0.4, label="observed", color="#1f77b4")
    ax.set_yticks(y, names)
    ax.set_xscale("log")
    ax.invert_yaxis()
    ax.set_xlabel("count (log scale)")
    ax.set_title("Reproduced counts vs. case-study targets")
    ax.legend(fontsize=8)
    save_figure(fig, path)
