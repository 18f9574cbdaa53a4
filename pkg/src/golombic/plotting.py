"""Figures for the ratio reports, written straight to image files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analysis import RatioReport  # noqa: E402
from .freegroup import format_word  # noqa: E402


def plot_ratios(report: RatioReport, path: str | Path, *, dpi: int = 150) -> Path:
    """Two panels: the ratio against its target, and |deviation| on a log scale."""
    path = Path(path)
    ns = [r.n for r in report.rows]
    ratios = [float(r.ratio) for r in report.rows]
    devs = [float(r.deviation) for r in report.rows]
    target = float(report.target_value)
    seed = format_word(report.seed) if report.seed is not None else "-"

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6.4, 6.0), sharex=True)
    ax1.plot(ns, ratios, "o-", ms=4, label="a(n+1) / (a(n) a(n-1))")
    ax1.axhline(target, color="k", ls="--", lw=0.8, label=f"{report.target} = {target:.9f}")
    ax1.set_ylabel("ratio")
    ax1.legend(loc="best", fontsize="small")
    ax1.set_title(f"{report.kind} seed {seed}" + ("" if report.in_scope else " (not homogeneous)"))

    positive = [(n, d) for n, d in zip(ns, devs) if d > 0]
    if positive:
        ax2.semilogy(*zip(*positive), "s-", ms=4, color="tab:red")
    ax2.set_xlabel("n")
    ax2.set_ylabel("|ratio - target|")
    ax2.grid(True, which="both", lw=0.3)

    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
