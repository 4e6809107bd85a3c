"""Cost tables: rows for JSON/CSV output, a plain-text table, and a bar chart."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Sequence

from czprep.strategies import StrategyResult

COLUMNS = ("strategy", "cz_cost", "bound", "lower_bound", "exact", "verified", "lc_count")


def cost_rows(results: Sequence[StrategyResult], lower: int, exact: int | None) -> list[dict]:
    return [
        {
            "strategy": r.name,
            "cz_cost": r.cz_cost,
            "bound": r.bound,
            "lower_bound": lower,
            "exact": exact,
            "verified": r.verified,
            "lc_count": r.sequence.lc_count,
        }
        for r in results
    ]


def to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row[k] is None else row[k]) for k in COLUMNS})
    return buf.getvalue()


def text_table(rows: Sequence[dict]) -> str:
    head = ("strategy", "cz", "bound", "lower", "exact", "ok")
    body = [
        (
            r["strategy"],
            str(r["cz_cost"]),
            str(r["bound"]),
            str(r["lower_bound"]),
            "-" if r["exact"] is None else str(r["exact"]),
            "yes" if r["verified"] else "NO",
        )
        for r in rows
    ]
    widths = [max(len(line[i]) for line in [head, *body]) for i in range(len(head))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return "\n".join(fmt.format(*line) for line in [head, *body]) + "\n"


def cost_figure(rows: Sequence[dict], path: str | Path, title: str = "") -> None:
    """Grouped bars of achieved cost and bound per strategy, with the lower bound as a line."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [r["strategy"] for r in rows]
    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(1.2 * len(rows) + 2.5, 3.2))
    ax.bar([x - 0.2 for x in xs], [r["cz_cost"] for r in rows], width=0.4, label="CZ cost")
    ax.bar([x + 0.2 for x in xs], [r["bound"] for r in rows], width=0.4, label="bound", alpha=0.6)
    if rows:
        ax.axhline(rows[0]["lower_bound"], color="k", lw=0.8, ls="--", label="lower bound")
        if rows[0]["exact"] is not None:
            ax.axhline(rows[0]["exact"], color="C3", lw=0.8, label="exact")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names)
    ax.set_ylabel("CZ gates")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize="small")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
