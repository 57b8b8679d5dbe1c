"""Figure rendering for the report paths (bench scaling, compare agreement).

Uses the Agg backend so headless runs work, and strips the PNG software
tag so identical inputs produce identical bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench import ScalingRow

_SAVE_KWARGS = {"dpi": 150, "metadata": {"Software": None}}


def save_scaling_plot(rows: list[ScalingRow], slope: float, path: str) -> None:
    """Log-log medians with the fitted power law."""
    ns = np.array([row.n for row in rows], dtype=float)
    medians = np.array([row.median_s for row in rows], dtype=float)
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for row in rows:
        ax.plot([row.n] * len(row.rep_seconds), row.rep_seconds, "x", color="0.6", ms=4)
    ax.plot(ns, medians, "o-", color="C0", label="median")
    if len(rows) >= 2:
        coef = np.polyfit(np.log(ns), np.log(medians), 1)
        grid = np.linspace(ns[0], ns[-1], 64)
        ax.plot(grid, np.exp(coef[1]) * grid ** coef[0], "--", color="C1",
                label=f"fit slope {slope:.2f}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("n = s + t")
    ax.set_ylabel("seconds per solve")
    ax.set_title("b-matching solve scaling")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def save_agreement_plot(solver_weights, oracle_weights, path: str) -> None:
    """Solver weight against oracle optimum; points under the diagonal are gaps."""
    ws = np.asarray(solver_weights, dtype=float)
    wo = np.asarray(oracle_weights, dtype=float)
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    lo = float(min(ws.min(), wo.min())) if len(ws) else 0.0
    hi = float(max(ws.max(), wo.max())) if len(ws) else 1.0
    pad = 0.05 * (hi - lo) if hi > lo else 1.0
    ax.plot([lo - pad, hi + pad], [lo - pad, hi + pad], "-", color="0.7", lw=1)
    agree = ws == wo
    ax.plot(wo[agree], ws[agree], "o", color="C0", ms=4, label="agree")
    if (~agree).any():
        ax.plot(wo[~agree], ws[~agree], "o", color="C3", ms=4, label="disagree")
    ax.set_xlabel("oracle weight")
    ax.set_ylabel("solver weight")
    ax.set_title("solver vs oracle")
    ax.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
