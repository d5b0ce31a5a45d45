"""Render scan results to figure files.

Headless by construction: the Agg backend is forced before pyplot loads so
figures render identically with or without a display attached.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def density_figure(rows: list[dict], out_path: str, dpi: int = 150) -> str:
    """Scatter the critical graphs against the density bounds.

    rows are the CSV-shaped dicts from scan.density_rows (n, m per critical
    graph). Bound lines drawn across the observed n range: the proven band
    (8n+2)/5 <= m <= 4n-11 and the conjectured ceiling 3n-8. Returns the
    path written.
    """
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    if rows:
        ns = [int(r["n"]) for r in rows]
        ms = [int(r["m"]) for r in rows]
        ax.scatter(ns, ms, s=28, zorder=3, color="tab:blue", label="critical graphs")
        lo, hi = min(ns), max(ns)
        xs = list(range(lo, hi + 1))
        ax.plot(xs, [(8 * x + 2) / 5 for x in xs], color="tab:green",
                linewidth=1.2, label="(8n+2)/5 lower")
        ax.plot(xs, [4 * x - 11 for x in xs], color="tab:red",
                linewidth=1.2, label="4n-11 upper")
        ax.plot(xs, [3 * x - 8 for x in xs], color="tab:orange",
                linewidth=1.2, linestyle="--", label="3n-8 conjectured")
    else:
        ax.text(0.5, 0.5, "no critical graphs in scan", ha="center", va="center",
                transform=ax.transAxes)
    ax.set_xlabel("vertices n")
    ax.set_ylabel("edges m")
    ax.set_title("critical graphs vs density bounds")
    ax.grid(True, alpha=0.3)
    if rows:
        ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return out_path
