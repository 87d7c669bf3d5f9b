"""Figure rendering for CLI reports (written to files, never shown)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .domain import IntervalSet, autocorrelation
from .fourier import power_spectrum_grid
from .zeros import ZeroSet


def save_profile_figure(
    rows: Sequence[tuple[float, float, float, float]],
    band: float,
    path: str | Path,
    title: str = "tiling profile",
) -> None:
    xs = [r[0] for r in rows]
    sums = [r[1] for r in rows]
    his = [r[3] for r in rows]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.fill_between(xs, sums, his, alpha=0.25, label=f"tail band (+{band:.3g})")
    ax.plot(xs, sums, lw=1.2, label="partial sum")
    ax.axhline(1.0, color="k", lw=0.8, ls="--", label="level 1")
    ax.set_xlabel("x")
    ax.set_ylabel(r"$\sum_\lambda |\hat\chi|^2(x-\lambda)$")
    ax.set_title(title)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_analysis_figure(
    omega: IntervalSet, zs: ZeroSet, path: str | Path
) -> None:
    """Two panels: |F|² with certified zeros marked, and the autocorrelation."""
    q = zs.q if zs.q is not None else max(2.0, float(omega.diameter))
    xs = np.linspace(1e-9, 2.0 * float(q), 2000)
    ps = power_spectrum_grid(omega, xs)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 6))
    ax1.plot(xs, ps, lw=1.0)
    zeros = [float(z) for z in zs.enumerate_up_to(2.0 * float(q))]
    ax1.plot(zeros, [0.0] * len(zeros), "rx", ms=6, label="certified zeros")
    ax1.set_xlabel(r"$\xi$")
    ax1.set_ylabel(r"$|\hat\chi(\xi)|^2$")
    ax1.legend(fontsize=8)
    ax1.set_title(f"{omega}")
    if omega.mode == "exact":
        A = autocorrelation(omega)
        ts = np.linspace(float(A.breakpoints[0]), float(A.breakpoints[-1]), 800)
        from fractions import Fraction

        vals = [float(A(Fraction(t).limit_denominator(10**9))) for t in ts]
        ax2.plot(ts, vals, lw=1.0)
        ax2.set_xlabel("t")
        ax2.set_ylabel("A(t)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
