"""Figure rendering for scan, profile, and rate reports.

Figures are written straight to files (Agg backend); nothing here feeds back
into any verdict.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bounds import CoverageReport
from .oracle import IntersectionProfile

__all__ = ["plot_coverage", "plot_profile", "plot_rates"]


def plot_coverage(report: CoverageReport, path: str) -> str:
    """Best part-count bound vs dimension, against the d+1 budget line."""
    ds = [e.d for e in report.entries]
    budget = [d + 1 for d in ds]
    fig, ax = plt.subplots(figsize=(8, 5))
    have = [(e.d, e.best_bound) for e in report.entries if e.best_bound is not None]
    if have:
        ax.semilogy([d for d, _ in have], [b for _, b in have],
                    drawstyle="steps-post", label="best part-count bound")
    ax.semilogy(ds, budget, linestyle="--", color="gray", label="d + 1")
    for lo, hi in report.uncovered_ranges():
        ax.axvspan(lo, hi, color="red", alpha=0.15)
    ax.set_xlabel("dimension d")
    ax.set_ylabel("parts")
    covered = report.covered_count
    ax.set_title(f"coverage on [{report.d_lo}, {report.d_hi}]: "
                 f"{covered}/{len(report.entries)} covered")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_profile(profile: IntersectionProfile, path: str) -> str:
    """Pair counts per folded overlap, annotated with the intersection sizes."""
    rows = profile.rows()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs = [a for a, _, _ in rows]
    ys = [count for _, _, count in rows]
    bars = ax.bar(xs, ys, color="steelblue")
    for bar, (a, value, count) in zip(bars, rows):
        ax.annotate(f"|∩|={value}", (bar.get_x() + bar.get_width() / 2, count),
                    ha="center", va="bottom", fontsize=9)
    ax.set_yscale("log")
    ax.set_xticks(xs)
    ax.set_xlabel("folded overlap a")
    ax.set_ylabel("pairs")
    ax.set_title(f"k={profile.k}: intersection profile over "
                 f"{profile.total_pairs} pairs (min at a={profile.argmin_a})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_rates(points: list[tuple[int, float]], path: str,
               threshold_k: int | None = None) -> str:
    """Rate curve over scanned k with the 1.2 and 1.203 reference lines."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.semilogx([k for k, _ in points], [r for _, r in points],
                marker="o", base=2, label="bound^(1/sqrt(d))")
    ax.axhline(1.2, linestyle="--", color="gray", label="1.2")
    ax.axhline(1.203, linestyle=":", color="firebrick", label="1.203")
    if threshold_k is not None:
        ax.axvline(threshold_k, color="seagreen", alpha=0.5,
                   label=f"above 1.203 from k={threshold_k}")
    ax.set_xlabel("k")
    ax.set_ylabel("rate")
    ax.set_title("asymptotic growth rate of the part-count bound")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
