"""Figure rendering for the CLI report commands.

Each renderer takes the same row dictionaries the delimited writers
consume and saves a single PNG/PDF next to them.  Headless by design.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["save_curve_figure", "save_bounds_figure", "save_frontier_figure"]

_FIG_KW = {"dpi": 150, "metadata": {"Creator": "noisecube"}}


def _group_by_tau(rows):
    order = []
    groups = {}
    for row in rows:
        tau = row["tau"]
        if tau not in groups:
            groups[tau] = []
            order.append(tau)
        groups[tau].append(row)
    return [(tau, groups[tau]) for tau in order]


def save_curve_figure(rows, path: str) -> None:
    """Entropy curves (alpha, beta) for each tau, against the diagonal."""
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    ax.plot([0, 1], [0, 1], ls="--", lw=0.8, color="0.5", label=r"$\beta=\alpha$")
    for tau, group in _group_by_tau(rows):
        ax.plot([r["alpha"] for r in group], [r["beta"] for r in group],
                lw=1.4, label=rf"$\tau={tau:g}$")
    ax.set_xlabel(r"input rate $\alpha$")
    ax.set_ylabel(r"output rate $\beta$")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1.02)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_FIG_KW)
    plt.close(fig)


def save_bounds_figure(rows, path: str) -> None:
    """Per-tau panels comparing the exact curve with the weaker bounds."""
    groups = _group_by_tau(rows)
    fig, axes = plt.subplots(1, len(groups), figsize=(4.6 * len(groups), 4.2),
                             squeeze=False)
    for ax, (tau, group) in zip(axes[0], groups):
        betas = [r["beta"] for r in group]
        ax.plot([0, 1], [0, 1], ls="--", lw=0.8, color="0.5")
        ax.plot([r["alpha_opt"] for r in group], betas, lw=1.6, label="exact curve")
        ax.plot([r["alpha_hyper"] for r in group], betas, lw=1.2, ls="-.",
                label="hypercontractive")
        ax.plot([r["alpha_fourier"] for r in group], betas, lw=1.2, ls=":",
                label="degree split")
        ax.set_title(rf"$\tau={tau:g}$")
        ax.set_xlabel(r"$\alpha$ bound")
        ax.set_ylabel(r"$\beta$")
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1.02)
        ax.legend(fontsize=8, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, **_FIG_KW)
    plt.close(fig)


def save_frontier_figure(rows, path: str) -> None:
    """Exhaustive frontier: attained (log2#B/n, log2#A/n) pairs."""
    fig, ax = plt.subplots(figsize=(5.4, 4.6))
    xs = [r["log2_a"] / r["n"] for r in rows if r["card_a"] > 0]
    ys = [r["log2_b"] / r["n"] for r in rows if r["card_a"] > 0]
    ax.plot([0, 1], [0, 1], ls="--", lw=0.8, color="0.5", label=r"$\beta=\alpha$")
    ax.scatter(xs, ys, s=22, zorder=3, label="frontier sets")
    ax.set_xlabel(r"$\log_2 |A| / n$")
    ax.set_ylabel(r"$\log_2 |B| / n$")
    ax.legend(fontsize=8, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, **_FIG_KW)
    plt.close(fig)
