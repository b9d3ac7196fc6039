"""Matplotlib figure output for simulation reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_angle_plot(result, path: str) -> None:
    """Plot every node's angle time series and write the figure to `path`."""
    fig, ax = plt.subplots(figsize=(8, 5))
    for name in sorted(result.angles):
        ax.plot(result.times, result.angles[name], label=name)
    ax.set_xlabel("t")
    ax.set_ylabel("angle [rad]")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
