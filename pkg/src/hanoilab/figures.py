"""Figure rendering for the report path.

Writes PNG files next to the delimited report output; nothing here is
interactive. Uses the Agg backend so it works headless.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .ledger import CostLedger, EqualityRow


def render_equality_figure(rows: list[EqualityRow], path: str) -> str:
    """Move counts per n: closed form, both bounds, and exact optima."""
    ns = [r.n for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ns, [r.stewart for r in rows], "-", color="0.3", label="closed-form count", zorder=1)
    ax.plot(ns, [r.bound1 for r in rows], "s", ms=4, mfc="none", label="bound (peak counts)", zorder=2)
    ax.plot(ns, [r.bound2 for r in rows], "^", ms=4, mfc="none", label="bound (increments)", zorder=2)
    exact = [(r.n, r.exact) for r in rows if r.exact is not None]
    if exact:
        ax.plot(*zip(*exact), "o", ms=3, color="crimson", label="exact search", zorder=3)
    ax.set_xlabel("disks")
    ax.set_ylabel("moves")
    if len(ns) > 1 and max(r.stewart for r in rows) > 64:
        ax.set_yscale("log", base=2)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_ledger_figure(ledger: CostLedger, path: str) -> str:
    """Ledger structure: per-level costs and capacities."""
    levels = list(range(1, ledger.depth + 1))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.5))
    ax1.step(levels, ledger.costs, where="mid")
    ax1.set_yscale("log", base=2)
    ax1.set_xlabel("level")
    ax1.set_ylabel("per-disk cost")
    ax1.grid(True, alpha=0.3)
    ax2.plot(levels, ledger.peak_counts, "s-", ms=3, label="peak count")
    ax2.plot(levels, ledger.cumulative_counts, "o-", ms=3, label="cumulative")
    if ledger.transferable4 is not None:
        ax2.plot(levels, ledger.transferable4, "^-", ms=3, label="transferable (4 pegs)")
    ax2.set_xlabel("level")
    ax2.set_ylabel("disks")
    ax2.legend(fontsize=8)
    ax2.grid(True, alpha=0.3)
    fig.suptitle(f"cost ledger ({ledger.provenance})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_report_figures(
    rows: list[EqualityRow], ledger: CostLedger, outdir: str
) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    written = []
    if rows:
        written.append(
            render_equality_figure(rows, os.path.join(outdir, "equality_counts.png"))
        )
    written.append(
        render_ledger_figure(ledger, os.path.join(outdir, "ledger_structure.png"))
    )
    return written
