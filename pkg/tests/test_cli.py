from __future__ import annotations

import json

from thinness.cli import main
from thinness.families import complete, cycle, path
from thinness.graph import Graph
from thinness.solver import ThinWitness


def _write(tmp_path, name, g: Graph):
    p = tmp_path / name
    p.write_text(g.to_json())
    return str(p)


def test_family_json_and_dot(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert main(["family", "crown", "n=3", "-o", str(out)]) == 0
    assert Graph.from_json(out.read_text()).n == 6
    assert main(["family", "cycle", "n=4", "--format", "dot"]) == 0
    assert "--" in capsys.readouterr().out


def test_family_bad_parameter(capsys):
    assert main(["family", "cycle", "n=-1"]) == 2
    assert "error" in capsys.readouterr().err


def test_product_and_thin(tmp_path, capsys):
    a = _write(tmp_path, "a.json", complete(2))
    out = tmp_path / "p.json"
    assert main(["product", "--kind", "cartesian", a, a, "-o", str(out)]) == 0
    assert main(["thin", str(out), "--witness", str(tmp_path / "w.json")]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["value"] == 2 and res["exact"]
    w = ThinWitness.from_json((tmp_path / "w.json").read_text())
    w.verify(Graph.from_json(out.read_text()))
    assert main(["thin", str(out), "--oracle", "--variant", "indthin"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == 2
    assert main(["product", "--kind", "lex_vertex", a, a]) == 2


def test_bounds(tmp_path, capsys):
    g = _write(tmp_path, "c.json", cycle(4))
    assert main(["bounds", g]) == 0
    certs = json.loads(capsys.readouterr().out)
    ids = {c["theorem_id"] for c in certs}
    assert {"degree", "thin-alpha"} <= ids


def test_witness(tmp_path, capsys):
    g1 = _write(tmp_path, "g1.json", complete(3))
    w1 = tmp_path / "w1.json"
    main(["thin", g1, "--witness", str(w1)])
    capsys.readouterr()
    og, ow = tmp_path / "out.json", tmp_path / "outw.json"
    assert main(["witness", "--rule", "cartesian:thin", "--g1", g1, "--w1", str(w1), "--g2", g1,
                 "--out-graph", str(og), "--out-witness", str(ow)]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["value"] == 3
    ThinWitness.from_json(ow.read_text()).verify(Graph.from_json(og.read_text()))
    p3 = _write(tmp_path, "p3.json", path(3))
    assert main(["witness", "--rule", "direct:thin", "--g1", p3, "--w1", str(w1), "--g2", p3]) == 2


def test_verify_and_report(tmp_path, capsys):
    csv_p, json_p = tmp_path / "r.csv", tmp_path / "r.json"
    assert main(["verify", "tK2", "joinp", "--csv", str(csv_p), "--json", str(json_p), "--no-cache"]) == 0
    assert "tK2" in capsys.readouterr().out
    assert main(["verify", "Qn", "Knsq", "--no-cache"]) == 1
    assert main(["verify", "bogus"]) == 2
    assert main(["verify", "--list"]) == 0
    assert "sandwich" in capsys.readouterr().out
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"campaigns": ["tK2"], "params": {"tK2": {"t": [2]}}}))
    assert main(["verify", "--config", str(cfg), "--cache", str(tmp_path / "c.jsonl")]) == 0
    out = tmp_path / "rep"
    assert main(["report", str(json_p), "-o", str(out)]) == 0
    assert {p.name for p in out.iterdir()} == {"summary.md", "verdicts.png", "growth.png"}
