from __future__ import annotations

import csv
import io
import json

import pytest

from thinness import bounds as B
from thinness.constructions import rule_catalog
from thinness.errors import ConfigError
from thinness.families import complement_matching, cycle
from thinness.graph import relabel
from thinness.harness import (
    CACHE_ENV, CAMPAIGNS, CSV_COLUMNS, ENGINE_VERSION, CacheEntry, Engine, ResultCache, default_cache_path,
    load_config, run_corpus, theorem_index, verify_theorem,
)

SMALL = {"campaigns": ["tK2", "joinp", "Qn"], "params": {"tK2": {"t": [1, 2, 3]}}}


def test_cache_round_trip_and_relabeling(tmp_path):
    path_ = tmp_path / "c.jsonl"
    eng = Engine(ResultCache(path_))
    g = cycle(5)
    first = eng.solve(g, "pthin")
    assert path_.exists() and len(path_.read_text().splitlines()) == 1
    again = Engine(ResultCache(path_))
    h = relabel(g, [3, 1, 4, 0, 2])
    s = again.solve(h, "pthin")
    assert s.value == first.value and s.exact
    s.witness.verify(h)
    assert len(path_.read_text().splitlines()) == 1  # served from disk, nothing appended


def test_cache_ignores_other_engine_versions_and_torn_lines(tmp_path):
    path_ = tmp_path / "c.jsonl"
    entry = CacheEntry("k", "thin", 1, True, 1, {}, 0.0, None, ENGINE_VERSION + "-old")
    path_.write_text(json.dumps(entry.to_dict()) + "\n{\"key\": \n")
    assert len(ResultCache(path_)) == 0


def test_default_cache_path_follows_env(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "x.jsonl"))
    assert default_cache_path() == tmp_path / "x.jsonl"


def test_timeout_gives_skip_not_fail():
    eng = Engine(timeout=1e-9)
    rows = verify_theorem("tK2", {"t": [4]}, engine=eng)
    assert [r.verdict for r in rows] in (["skip"], ["pass"])
    assert eng.value(complement_matching(4)) in (None, 4)


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError, match="unknown theorem id"):
        load_config({"campaigns": ["nope"]})
    with pytest.raises(ConfigError, match="unknown config keys"):
        load_config({"colour": 1})
    with pytest.raises(ConfigError):
        load_config({"params": {"tK2": {"size": [1]}}})
    with pytest.raises(ConfigError):
        load_config({"timeout": -1})
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "campaigns": [\n    "tK2",\n  ]\n}\n')
    with pytest.raises(ConfigError, match=r"bad\.json:4:"):
        load_config(bad)
    cfg = load_config(None)
    assert cfg["campaigns"] == list(CAMPAIGNS)


def test_every_theorem_and_bound_id_has_a_campaign():
    index = theorem_index()
    ids = {r.theorem_id for r in rule_catalog()} | set(B.SINGLE_GRAPH_BOUNDS) | set(B.PRODUCT_BOUNDS)
    assert ids <= set(index)
    for tid in ("tK2", "tK2prop", "Knsq", "KnKnn", "Knsqbox", "Qn", "crown", "joinp", "pthin-indpthin", "grid", "lexhom"):
        assert tid in index


def test_verify_theorem_rows():
    rows = verify_theorem("tK2", {"t": [1, 2, 3]})
    assert [r.verdict for r in rows] == ["pass"] * 3
    assert [r.computed for r in rows] == ["1", "2", "3"]
    rows = verify_theorem("grid")
    assert rows and all(r.verdict == "pass" for r in rows)
    with pytest.raises(ConfigError):
        verify_theorem("no-such-theorem")


def test_csv_json_outputs_are_deterministic(tmp_path):
    cache = tmp_path / "c.jsonl"
    outs = []
    for i in range(2):
        csv_p, json_p = tmp_path / f"r{i}.csv", tmp_path / f"r{i}.json"
        report = run_corpus(SMALL, cache=ResultCache(cache), csv_path=csv_p, json_path=json_p)
        assert not report.failed
        outs.append((csv_p.read_bytes(), json_p.read_bytes()))
    assert outs[0] == outs[1]
    rows = list(csv.reader(io.StringIO(outs[0][0].decode())))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[1:] == sorted(rows[1:], key=lambda r: (r[0], r[1]))
    data = json.loads(outs[0][1])
    assert data["summary"]["tK2"] == {"pass": 3, "fail": 0, "skip": 0}


def test_failed_rows_are_reported():
    rows = verify_theorem("Knsq", {"n": [2], "exact": [2]})
    verdicts = {r.instance: r.verdict for r in rows}
    assert verdicts["K2xK2 lower"] == "fail"  # certificate gives 1 on C4
    assert verdicts["K2xK2 exact"] == "pass"
    assert verdicts["K2xK2 witness"] == "pass"
