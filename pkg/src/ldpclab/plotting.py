"""SVG rendering of BER sweep results."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

__all__ = ["plot_ber_records"]


def plot_ber_records(records, out_path) -> None:
    """Log-y BER versus Eb/N0, one curve per decoder, written as SVG.

    Zero-error points cannot be placed on a log axis and are left out of
    their curve.
    """
    if not records:
        raise ValueError("nothing to plot")
    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    for tag in dict.fromkeys(r.decoder for r in records):
        pts = [(r.ebn0_db, r.ber) for r in records if r.decoder == tag]
        pts.sort()
        x = np.array([p[0] for p in pts])
        y = np.array([p[1] for p in pts], dtype=float)
        y[y <= 0.0] = np.nan
        ax.semilogy(x, y, marker="o", label=tag)
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("BER")
    ax.grid(True, which="both", linestyle="--", linewidth=0.5)
    ax.legend()
    fig.tight_layout()
    fig.savefig(Path(out_path), format="svg")
