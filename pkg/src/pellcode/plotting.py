"""Figures for the CLI report paths (written to files, never shown)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .channel import STATUSES, SimReport  # noqa: E402
from .correction import AbilityReport, Status  # noqa: E402
from .sequences import pell  # noqa: E402

STATUS_COLORS = {
    Status.CLEAN: "#9e9e9e",
    Status.CORRECTED: "#2e7d32",
    Status.AMBIGUOUS: "#f9a825",
    Status.UNCORRECTABLE: "#c62828",
}


def _finish(fig, path):
    fig.tight_layout()
    # fixed metadata keeps PNG bytes stable between runs
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)


def plot_sim_report(report: SimReport, path) -> None:
    """Stacked bars of cascade outcomes per number of injected errors."""
    sizes = [1, 2, 3, 4]
    fig, ax = plt.subplots(figsize=(6, 4))
    bottom = [0] * len(sizes)
    for status in STATUSES:
        heights = [report.by_size[s].counts[status] for s in sizes]
        ax.bar(sizes, heights, bottom=bottom, color=STATUS_COLORS[status], label=status.value)
        bottom = [b + h for b, h in zip(bottom, heights)]
    ax.set_xticks(sizes)
    ax.set_xlabel("damaged entries")
    ax.set_ylabel("trials")
    ax.set_title(f"{report.trials} trials, seed {report.config.seed}")
    ax.legend(frameon=False, fontsize=8)
    _finish(fig, path)


def plot_ability(report: AbilityReport, path) -> None:
    """Candidate counts per damage pattern; hatched bars lost the original."""
    labels = [str(o.pattern) for o in report.outcomes]
    counts = [o.candidates for o in report.outcomes]
    fig, ax = plt.subplots(figsize=(8, 3.5))
    bars = ax.bar(range(len(labels)), counts,
                  color=[STATUS_COLORS[o.status] for o in report.outcomes])
    for bar, o in zip(bars, report.outcomes):
        if not o.truth_found:
            bar.set_hatch("//")
            bar.set_height(max(bar.get_height(), 0.2))
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("candidates")
    ax.set_title(f"recovered {report.recovered}/{len(report.outcomes)} patterns")
    _finish(fig, path)


def plot_ratio_convergence(n_max: int, path) -> None:
    """Distance of consecutive Pell ratios from 1 + sqrt(2), log scale."""
    gamma = 1 + math.sqrt(2)
    ns = list(range(1, n_max + 1))
    gaps = [abs(pell(n + 1) / pell(n) - gamma) for n in ns]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogy(ns, [max(g, 1e-17) for g in gaps], marker="o", ms=3)
    ax.axhline(1e-8, color="0.5", lw=0.8, ls="--")
    ax.set_xlabel("n")
    ax.set_ylabel("|P(n+1)/P(n) - (1+sqrt 2)|")
    _finish(fig, path)
