"""Summaries and figures from a JSON run report."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def load_report(path: Union[str, Path]) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def summary_table(report: dict) -> str:
    """Markdown table of verdict counts per theorem id."""
    lines = ["| theorem_id | pass | fail | skip |", "|---|---|---|---|"]
    for tid, c in report["summary"].items():
        lines.append(f"| {tid} | {c['pass']} | {c['fail']} | {c['skip']} |")
    return "\n".join(lines) + "\n"


def growth_series(report: dict) -> dict:
    """(theorem_id, family) -> sorted [(size, thin value)] from the growth rows."""
    out: dict = {}
    for row in report["rows"]:
        d = row.get("detail", {})
        if "measure" in d and d.get("value") is not None:
            out.setdefault((row["theorem_id"], d["family"]), []).append((d["size"], d["value"]))
    return {k: sorted(v) for k, v in sorted(out.items())}


def plot_verdicts(report: dict, path: Union[str, Path]) -> None:
    tids = list(report["summary"])
    fig, ax = plt.subplots(figsize=(max(6, 0.35 * len(tids)), 4))
    bottom = [0] * len(tids)
    for verdict, color in (("pass", "tab:green"), ("skip", "tab:gray"), ("fail", "tab:red")):
        vals = [report["summary"][t][verdict] for t in tids]
        ax.bar(tids, vals, bottom=bottom, color=color, label=verdict)
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_yscale("symlog")
    ax.set_ylabel("rows")
    ax.tick_params(axis="x", rotation=90)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_growth(report: dict, path: Union[str, Path]) -> None:
    series = growth_series(report)
    fig, ax = plt.subplots(figsize=(7, 5))
    for (tid, fam), pts in series.items():
        xs = list(range(1, len(pts) + 1))
        ax.plot(xs, [v for _, v in pts], marker="o", label=f"{tid}: {fam}")
    ax.set_xlabel("family index")
    ax.set_ylabel("thin (exact or certified lower bound)")
    if series:
        ax.legend(fontsize=6, loc="upper left")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render(report_path: Union[str, Path], out_dir: Union[str, Path]) -> list[Path]:
    report = load_report(report_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [out / "summary.md", out / "verdicts.png", out / "growth.png"]
    written[0].write_text(summary_table(report), encoding="utf-8")
    plot_verdicts(report, written[1])
    plot_growth(report, written[2])
    return written
