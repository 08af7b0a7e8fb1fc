"""Report figures rendered next to the delimited outputs.

Every figure is derived from the same arrays that go into the CSV, so the
plots are a view of the data files, never an extra computation.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_curve(path: str, alphas: np.ndarray, pdf: np.ndarray, cdf: np.ndarray) -> None:
    """Density and distribution function on a shared alpha axis."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.4))
    ax1.plot(alphas, pdf, color="tab:blue", lw=1.5)
    ax1.set_xlabel("scaled gap")
    ax1.set_ylabel("density")
    ax2.plot(alphas, cdf, color="tab:blue", lw=1.5)
    ax2.set_xlabel("scaled gap")
    ax2.set_ylabel("cumulative probability")
    ax2.set_ylim(0.0, 1.02)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_compare(
    path: str,
    bin_edges: np.ndarray,
    density: np.ndarray,
    analytic_alphas: np.ndarray,
    analytic_pdf: np.ndarray,
    radius: int,
    ks: float,
) -> None:
    """Empirical gap histogram with the limiting density overlaid."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.stairs(density, bin_edges, fill=True, alpha=0.45, color="tab:orange",
              label=f"empirical, R = {radius}")
    ax.plot(analytic_alphas, analytic_pdf, color="tab:blue", lw=1.6, label="limiting density")
    ax.set_xlabel("scaled gap")
    ax.set_ylabel("density")
    ax.legend(frameon=False)
    ax.set_title(f"KS distance {ks:.2e}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
