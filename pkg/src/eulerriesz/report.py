"""Figure rendering for the report paths (headless-safe)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .decay import FitResult
from .inequalities import RatioReport


def save_decay_figure(
    path: str, t: np.ndarray, y: np.ndarray, fit: FitResult, column: str
) -> str:
    """Semilog decay trace with the fitted line overlaid."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    pos = y > 0
    ax.semilogy(t[pos], y[pos], "-", lw=1.2, color="#1f4e79", label=column)
    a, b = fit.window
    ts = np.linspace(a, b, 200)
    x = ts if fit.kind == "exp" else np.log1p(ts)
    ax.semilogy(
        ts,
        np.exp(fit.intercept - fit.rate * x),
        "--",
        lw=1.4,
        color="#c0392b",
        label=f"fit rate {fit.rate:.4g} ({fit.kind})",
    )
    ax.set_xlabel("t")
    ax.set_ylabel(column)
    ax.legend(frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_ratio_figure(path: str, report: RatioReport) -> str:
    """Histogram of suite ratios with the maximum marked."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ratios = np.asarray(report.ratios)
    ax.hist(ratios, bins=min(40, max(10, report.trials // 10)), color="#4a7ba6")
    ax.axvline(report.max_ratio, color="#c0392b", ls="--", lw=1.2,
               label=f"max {report.max_ratio:.4g}")
    ax.set_xlabel("ratio")
    ax.set_ylabel("count")
    ax.set_title(report.suite)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
