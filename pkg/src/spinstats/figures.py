"""Figure rendering for the command-line reports.

Each command's record dict maps to one figure; the CLI saves it next to
the delimited output when ``--fig`` is given.  Rendering is headless
(Agg) so runs work the same in batch environments.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_GRID_KW = {"alpha": 0.3, "linewidth": 0.6}


def save_figure(fig, path: str) -> None:
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def qubit_figure(record: dict):
    """Analytic outcome probabilities next to sampled frequencies."""
    analytic = [record["analytic"]["p_plus"], record["analytic"]["p_minus"]]
    freqs = [record["frequencies"]["plus"], record["frequencies"]["minus"]]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    x = np.arange(2)
    ax.bar(x - 0.18, analytic, width=0.36, label="analytic", color="tab:blue")
    ax.bar(x + 0.18, freqs, width=0.36, label="sampled", color="tab:orange")
    ax.set_xticks(x, ["+a", "-a"])
    ax.set_ylabel("probability")
    ax.set_title(f"two-outcome statistics, theta={record['spec']['theta_rad']:.4f} rad")
    ax.legend()
    ax.grid(True, axis="y", **_GRID_KW)
    return fig


def chsh_figure(record: dict):
    """Pair correlations against the -cos(theta) curve, or the strategy scan."""
    if record["model"] == "lhv-scan":
        return _scan_figure(record)
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = ["E(n,m)", "E(n',m)", "E(n,m')", "E(n',m')"]
    x = np.arange(4)
    ax.bar(x, record["correlations"], width=0.5, color="tab:blue", label="analytic")
    mc = record.get("monte_carlo")
    if mc:
        ax.errorbar(
            x,
            mc["pair_estimates"],
            yerr=[4 * s for s in mc["pair_stderrs"]],
            fmt="o",
            color="tab:red",
            capsize=4,
            label="sampled (4 sigma)",
        )
    ax.set_xticks(x, labels)
    ax.set_ylim(-1.15, 1.15)
    ax.set_ylabel("correlation")
    b = record["b_value"]
    est = f", estimate {mc['estimate']:+.4f}" if mc else ""
    ax.set_title(f"model {record['model']}: b = {b:+.6f}{est}")
    ax.axhline(0.0, color="k", linewidth=0.5)
    ax.grid(True, axis="y", **_GRID_KW)
    ax.legend()
    return fig


def _scan_figure(record: dict):
    values = [row["b_value"] for row in record["strategies"]]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(np.arange(len(values)), values, color="tab:blue")
    for bound in (2.0, -2.0):
        ax.axhline(bound, color="tab:red", linestyle="--", linewidth=1.0)
    ax.set_xlabel("deterministic strategy index")
    ax.set_ylabel("b value")
    ax.set_title(f"strategy scan: max |b| = {record['max_abs_b']}")
    ax.grid(True, axis="y", **_GRID_KW)
    return fig


def composite_figure(record: dict):
    """Transition probabilities against theta, one panel per prepared level."""
    rows = record["rows"]
    fig, axes = plt.subplots(1, 3, figsize=(11, 3.6), sharey=True)
    by_level: dict[int, list[dict]] = {}
    for row in rows:
        by_level.setdefault(row["level"], []).append(row)
    outcome_labels = ("+2", "0", "-2")
    for ax, level in zip(axes, (2, 0, -2)):
        level_rows = sorted(by_level.get(level, []), key=lambda r: r["theta"])
        thetas = [r["theta"] for r in level_rows]
        for key in outcome_labels:
            ax.plot(thetas, [r["p"][key] for r in level_rows], label=f"to {key}")
        ax.set_title(f"prepared {level:+d}")
        ax.set_xlabel("theta (rad)")
        ax.grid(True, **_GRID_KW)
    axes[0].set_ylabel("probability")
    axes[0].legend(fontsize=8)
    zero_rows = by_level.get(0, [])
    j2 = zero_rows[0]["j_squared"] if zero_rows else math.nan
    fig.suptitle(f"model {record['model']}: zero-state frame sum = {j2:g} (a={record['a']:g})")
    return fig


def stokes_figure(record: dict):
    """Channel counts with the estimate and its uncertainty band."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.5))
    counts = [record["counts"]["plus"], record["counts"]["minus"]]
    ax1.bar(["plus", "minus"], counts, color=["tab:blue", "tab:orange"])
    ax1.set_ylabel("events")
    ax1.grid(True, axis="y", **_GRID_KW)
    est, err = record["estimate"], record["stderr"]
    ax2.errorbar([0], [est], yerr=[3 * err], fmt="o", capsize=6, color="tab:red", label="estimate (3 sigma)")
    ax2.axhline(record["expected"], color="tab:blue", linestyle="--", label="mean-value prediction")
    ax2.set_xticks([])
    ax2.set_ylabel("normalized difference")
    ax2.legend(fontsize=8)
    ax2.grid(True, axis="y", **_GRID_KW)
    fig.suptitle(f"counting run, N={record['n_events']}")
    return fig
