"""Serialize check rows to delimited text and render summary figures.

Output is byte-stable: the same rows always produce the same bytes, so
reports can be diffed across runs.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os

CSV_COLUMNS = ("scenario", "check", "status", "witness", "final_error", "n_max")


def format_error(value: float) -> str:
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.12g}"


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.scenario, r.check, r.status, r.witness,
                         format_error(r.final_error), r.n_max])
    return buf.getvalue()


def rows_to_json(rows) -> str:
    out = []
    for r in rows:
        out.append({
            "scenario": r.scenario,
            "check": r.check,
            "status": r.status,
            "witness": r.witness,
            "final_error": format_error(r.final_error),
            "n_max": r.n_max,
        })
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def render_rows(rows, fmt: str) -> str:
    if fmt == "csv":
        return rows_to_csv(rows)
    if fmt == "json":
        return rows_to_json(rows)
    raise ValueError(f"unknown format {fmt!r}")


def render_plots(rows, directory: str) -> list:
    """One horizontal bar chart per scenario, final error per check,
    colored by status. Returns the written file paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    colors = {
        "SUPPORTED": "#2a9d3a",
        "REFUTED": "#d62828",
        "INCONCLUSIVE": "#e09f3e",
        "NOT_APPLICABLE": "#8d99ae",
    }
    os.makedirs(directory, exist_ok=True)
    paths = []
    by_scenario = {}
    for r in rows:
        by_scenario.setdefault(r.scenario, []).append(r)
    for name in sorted(by_scenario):
        group = by_scenario[name]
        labels = [r.check for r in group]
        values = [0.0 if not math.isfinite(r.final_error) else r.final_error
                  for r in group]
        bar_colors = [colors.get(r.status, "#555555") for r in group]
        fig, ax = plt.subplots(figsize=(7.2, 0.5 * len(group) + 1.6))
        ypos = range(len(group))
        ax.barh(list(ypos), values, color=bar_colors)
        ax.set_yticks(list(ypos))
        ax.set_yticklabels(labels)
        ax.invert_yaxis()
        ax.set_xlabel("final windowed error")
        ax.set_title(name)
        for y, r in zip(ypos, group):
            note = r.status if not r.witness else f"{r.status} ({r.witness})"
            ax.annotate(note, xy=(max(values) * 0.01 if max(values) > 0 else 0.01, y),
                        va="center", fontsize=8)
        fig.tight_layout()
        path = os.path.join(directory, f"{name}.png")
        fig.savefig(path, dpi=110)
        plt.close(fig)
        paths.append(path)
    return paths
