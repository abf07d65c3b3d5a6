"""Matplotlib rendering of sweep results."""

from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .montecarlo import CellSummary  # noqa: E402

_RC = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 9,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "svg.hashsalt": "bandwagon",
}


def _series(results, attr):
    by_n = {}
    for cell in results:
        value = getattr(cell, attr)
        if not math.isnan(value):
            by_n.setdefault(cell.n_agents, []).append((cell.n_topics, value))
    return {n: sorted(pts) for n, pts in sorted(by_n.items())}


def sweep_figure(results: Sequence[CellSummary]):
    """Two panels: mean hitting time and estimated balance probability vs m."""
    with plt.rc_context(_RC):
        fig, (ax_t, ax_p) = plt.subplots(1, 2, figsize=(9, 3.6), constrained_layout=True)
        for n, pts in _series(results, "mean_hitting_time").items():
            ms, ys = zip(*pts)
            ax_t.plot(ms, ys, marker="o", label=f"N = {n}")
        ax_t.set_xlabel("number of topics m")
        ax_t.set_ylabel("mean hitting time (steps)")
        ax_t.legend()
        ax_t.grid(alpha=0.3)

        for n, pts in _series(results, "estimated_probability").items():
            ms, ys = zip(*pts)
            ax_p.plot(ms, ys, marker="s", label=f"N = {n}")
        ax_p.set_xlabel("number of topics m")
        ax_p.set_ylabel(r"$\hat p$ (balanced)")
        ax_p.set_ylim(top=1.005)
        ax_p.legend()
        ax_p.grid(alpha=0.3)
        for ax in (ax_t, ax_p):
            ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    return fig


def save_sweep_figure(results: Sequence[CellSummary], path) -> None:
    if not results:
        raise ValueError("no results to plot")
    fig = sweep_figure(results)
    # drop timestamps so repeated renders match byte for byte
    metadata = {"Software": None} if str(path).lower().endswith(".png") else {"Date": None}
    if str(path).lower().endswith(".pdf"):
        metadata = {"CreationDate": None, "ModDate": None}
    with plt.rc_context(_RC):
        fig.savefig(path, metadata=metadata)
    plt.close(fig)
