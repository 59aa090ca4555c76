"""Figure rendering for run/sweep reports (headless Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .pipeline import ScenarioResult
from .scenarios import eval_B, gaussian_coefficients


def render_population_figure(result: ScenarioResult, path: str) -> None:
    """Two panels: spin populations for the three routes, and the exact
    conditional norm N(t)."""
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(7.0, 6.0), sharex=True)
    t = result.times
    for traj, label, style in (
        (result.exact, "exact conditioning", "-"),
        (result.tipt, "first-order state", "--"),
        (result.tdpt, "perturbative evolution", ":"),
    ):
        pops = traj.populations()
        ax0.plot(t, pops[:, 0], style, label=f"{label}, up")
        ax0.plot(t, pops[:, 1], style, alpha=0.6, label=f"{label}, down")
    ax0.set_ylabel("population")
    ax0.legend(fontsize=7, ncol=2)
    ax1.plot(t, result.exact.norms, "-", color="k")
    ax1.set_ylabel("N(t)")
    ax1.set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_overlap_figure(result: ScenarioResult, path: str) -> None:
    """|B(t)| for the scenario's clock coefficients."""
    cfg = result.cfg
    coeffs = gaussian_coefficients(cfg.J, cfg.a)
    t = result.times
    b = np.array([eval_B(coeffs, cfg.Ecal, float(s)) for s in t])
    fig, ax = plt.subplots(figsize=(7.0, 3.0))
    ax.plot(t, np.abs(b), "-")
    ax.set_xlabel("t")
    ax.set_ylabel("|B(t)|")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_sweep_figure(sweep: dict, path: str) -> None:
    """Log-log deviation versus coupling with the fitted exponents."""
    gs = np.array(sweep["g_values"], dtype=float)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for pair in ("tipt_vs_tdpt", "exact_vs_tdpt", "exact_vs_tipt"):
        devs = np.array(
            [sweep["results"][g].reports[pair].max_pop_deviation for g in gs]
        )
        expo = sweep["exponents"][pair]
        ax.loglog(gs, devs, "o-", label=f"{pair} (slope {expo:.2f})")
    ax.set_xlabel("g")
    ax.set_ylabel("max population deviation")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
