"""Figure rendering for sweep reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_MARKERS = ("o", "s", "^", "d")


def render_sweep_figure(report: dict, path: str | Path) -> None:
    """Plot mean R-1 / R-2 recall against k, one line per metric."""
    metrics = report["config"]["metrics"]
    by_cell = {(cell["k"], cell["metric"]): cell["means"] for cell in report["cells"]}
    k_values = report["config"]["k_values"]

    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), sharex=True)
    for axis, score_key, label in zip(axes, ("r1_recall", "r2_recall"), ("ROUGE-1", "ROUGE-2")):
        for pos, metric in enumerate(metrics):
            points = [
                (k, by_cell[(k, metric)][score_key])
                for k in k_values
                if by_cell.get((k, metric), {}).get(score_key) is not None
            ]
            if not points:
                continue
            xs, ys = zip(*points)
            axis.plot(xs, ys, marker=_MARKERS[pos % len(_MARKERS)], label=metric)
        axis.set_xlabel("number of clusters")
        axis.set_ylabel(f"mean {label} recall")
        axis.grid(True, alpha=0.3)
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
