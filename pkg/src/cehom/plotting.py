"""Figures for the report command: Betti heatmaps and mod-p comparisons."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .linalg import DimensionTable  # noqa: E402


def _grid(table: DimensionTable) -> tuple[list[int], np.ndarray]:
    weights = table.weights()
    top = max((max(table.by_degree(w), default=0) for w in weights), default=0)
    grid = np.zeros((len(weights), top + 1), dtype=int)
    for r, w in enumerate(weights):
        for d, n in table.by_degree(w).items():
            if d >= 0:
                grid[r, d] = n
    return weights, grid


def plot_dimension_table(table: DimensionTable, path, title: str = "") -> Path:
    """Heatmap of dim H_i at weight k, annotated with the integers."""
    weights, grid = _grid(table)
    fig, ax = plt.subplots(figsize=(1.0 + 0.6 * grid.shape[1], 1.0 + 0.5 * len(weights)))
    ax.imshow(grid, cmap="Blues", aspect="auto")
    for (r, c), n in np.ndenumerate(grid):
        if n:
            ax.text(c, r, str(n), ha="center", va="center", fontsize=8,
                    color="white" if n > grid.max() / 2 else "black")
    ax.set_xticks(range(grid.shape[1]))
    ax.set_yticks(range(len(weights)))
    ax.set_yticklabels([str(w) for w in weights])
    ax.set_xlabel("degree i")
    ax.set_ylabel("weight k")
    ax.set_title(title or f"dim H_i, {table.metadata.get('field', '')}")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_comparison(fp: dict[int, int], q: dict[int, int], path, title: str = "") -> Path:
    degs = sorted(set(fp) | set(q))
    x = np.arange(len(degs))
    fig, ax = plt.subplots(figsize=(max(3.0, 0.6 * len(degs) + 1.5), 2.8))
    ax.bar(x - 0.2, [q.get(d, 0) for d in degs], 0.4, label="Betti (Q)")
    ax.bar(x + 0.2, [fp.get(d, 0) for d in degs], 0.4, label="mod p")
    ax.set_xticks(x)
    ax.set_xticklabels([str(d) for d in degs])
    ax.set_xlabel("degree i")
    ax.legend(frameon=False, fontsize=8)
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
