from __future__ import annotations

from thinness.harness import run_corpus
from thinness.report import growth_series, load_report, render, summary_table


def test_render_writes_table_and_figures(tmp_path):
    json_p = tmp_path / "r.json"
    run_corpus({"campaigns": ["tK2", "nbcart-growth"], "params": {"tK2": {"t": [1, 2]}}}, json_path=json_p)
    report = load_report(json_p)
    table = summary_table(report)
    assert "| tK2 | 2 | 0 | 0 |" in table
    series = growth_series(report)
    assert series and all(len(pts) == 3 for pts in series.values())
    paths = render(json_p, tmp_path / "out")
    assert all(p.exists() and p.stat().st_size > 0 for p in paths)
    assert (tmp_path / "out" / "verdicts.png").read_bytes()[:4] == b"\x89PNG"
