"""Figure rendering for benchmark results (headless-safe)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["save_ncut_bars"]


def save_ncut_bars(summary_rows, path, title: str | None = None) -> Path:
    """Grouped bar chart of mean ncut per strategy, one group per (graph, k).

    Bars show ncut_mean with a one-standard-deviation whisker.  Strategies
    and groups keep the order in which they first appear in the rows.
    Returns the path written.
    """
    rows = list(summary_rows)
    if not rows:
        raise ValueError("nothing to plot: no summary rows")
    strategies = list(dict.fromkeys(r.strategy for r in rows))
    groups = list(dict.fromkeys((r.graph, r.k) for r in rows))
    by_cell = {(r.graph, r.k, r.strategy): r for r in rows}

    x = np.arange(len(groups), dtype=float)
    width = 0.8 / len(strategies)
    fig, ax = plt.subplots(figsize=(max(6.0, 1.8 * len(groups)), 4.0))
    for i, strategy in enumerate(strategies):
        offsets, means, stds = [], [], []
        for j, (graph, k) in enumerate(groups):
            row = by_cell.get((graph, k, strategy))
            if row is None:
                continue
            offsets.append(x[j] + (i - (len(strategies) - 1) / 2) * width)
            means.append(row.ncut_mean)
            stds.append(row.ncut_std)
        if offsets:
            ax.bar(offsets, means, width=width * 0.95, yerr=stds,
                   capsize=2, label=strategy)
    ax.set_xticks(x)
    ax.set_xticklabels([f"{graph}\nk={k}" for graph, k in groups])
    ax.set_ylabel("mean ncut (lower is better)")
    ax.set_title(title or "initial clustering strategies by normalized cut")
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150, format="png")
    plt.close(fig)
    return path
