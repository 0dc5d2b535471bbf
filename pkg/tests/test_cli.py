from __future__ import annotations

import json
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from trivalent import cli, pipeline
from trivalent.graphs import core


@pytest.fixture(autouse=True)
def _reset_pipeline():
    yield
    pipeline.configure(cache=None)


def run(args, capsys):
    rc = cli.main(args)
    return rc, capsys.readouterr()


def test_graph_t2_edgelist(capsys):
    rc, out = run(["graph", "--k", "2", "--which", "T"], capsys)
    assert rc == 0
    n, edges = core.from_edgelist(out.out)
    assert n == 64 and len(edges) == 96
    assert "# version: 0.1.0" in out.out and "# input_hash: " in out.out


def test_platonic_graph6_with_sidecar(tmp_path, capsys):
    rc, _ = run(["platonic", "--n", "8", "--format", "graph6", "--out", str(tmp_path)], capsys)
    assert rc == 0
    n, edges = core.from_graph6((tmp_path / "Pi_8.graph6").read_text())
    assert n == 24 and len(edges) == 24 * 8 // 2
    meta = json.loads((tmp_path / "Pi_8.graph6.meta").read_text())
    assert meta["version"] == "0.1.0" and len(meta["input_hash"]) == 16


def test_render_seed(tmp_path, capsys):
    rc, _ = run(["render", "--k", "2", "--radius", "0", "--out", str(tmp_path)], capsys)
    assert rc == 0
    svg = (tmp_path / "S_2_r0.svg").read_text()
    assert svg.splitlines()[1].startswith("<!-- trivalent 0.1.0 input_hash")
    root = ET.fromstring(svg.split("?>", 1)[1])
    paths = [el for el in root.iter() if el.tag.endswith("path")]
    assert len(paths) == 1 and paths[0].get("d").count("A") == 8


def test_group_json(capsys):
    rc, out = run(["group", "--k", "3"], capsys)
    doc = json.loads(out.out)
    assert rc == 0 and doc["order_exponent"] == 7 and doc["generator_orders"]["x3"] == 4
    assert doc["version"] == "0.1.0" and doc["input_hash"]


def test_faces_csv(capsys):
    rc, out = run(["faces", "--format", "csv", "--k-max", "3"], capsys)
    lines = out.out.splitlines()
    assert rc == 0 and lines[0].startswith("# version") and lines[4] == "2,5,2,64,96,24,8,5,5,5/16,33"


def test_spectrum_json(capsys):
    rc, out = run(["spectrum", "--k", "2", "--which", "T"], capsys)
    rep = json.loads(out.out)["reports"][0]
    assert rc == 0 and rep["lambda1"] == pytest.approx(2.414213, abs=1e-5) and rep["ramanujan"]


def test_dual_graph(capsys):
    rc, out = run(["graph", "--k", "2", "--which", "dual", "--format", "json"], capsys)
    doc = json.loads(out.out)
    assert rc == 0 and doc["n"] == 24 and len(doc["edges"]) == 96


def test_duality_verdict(capsys):
    rc, out = run(["platonic", "--duality", "3"], capsys)
    assert rc == 0 and json.loads(out.out)["isomorphic"] is False


def test_usage_errors(capsys):
    assert run(["nosuch"], capsys)[0] == 2
    assert run(["graph", "--format", "svg"], capsys)[0] == 2
    assert run(["render", "--radius", "99"], capsys)[0] == 2
    assert run(["platonic"], capsys)[0] == 2
    assert run(["graph", "--k", "0"], capsys)[0] == 2


def test_resource_cap_exit(capsys):
    rc, out = run(["graph", "--k", "7", "--which", "X"], capsys)
    assert rc == 3 and "resource cap" in out.err


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text("k = 3\nformat = \"json\"\n")
    rc, out = run(["group", "--config", str(cfg)], capsys)
    assert json.loads(out.out)["k"] == 3
    rc, out = run(["group", "--config", str(cfg), "--k", "2"], capsys)
    assert json.loads(out.out)["k"] == 2
    bad = tmp_path / "bad.toml"
    bad.write_text("colour = 1\n")
    assert run(["group", "--config", str(bad)], capsys)[0] == 2


def test_cache_env_and_warm_rerun(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TRIVALENT_CACHE", str(tmp_path / "c"))
    rc1, out1 = run(["graph", "--k", "3", "--which", "X"], capsys)
    files = sorted(p.name for p in (tmp_path / "c").iterdir())
    assert rc1 == 0 and files
    rc2, out2 = run(["graph", "--k", "3", "--which", "X"], capsys)
    assert out1.out == out2.out
    for p in (tmp_path / "c").iterdir():
        p.write_bytes(b"garbage")
    rc3, out3 = run(["graph", "--k", "3", "--which", "X"], capsys)
    assert rc3 == 0 and out3.out == out1.out


def test_verify_all_subset(tmp_path, capsys):
    rc, out = run(["verify-all", "--k-max", "3", "--out", str(tmp_path), "--no-runtimes"], capsys)
    doc = json.loads((tmp_path / "ledger.json").read_text())
    assert [r["claim_id"] for r in doc["rows"]] == [f"C{i:02d}" for i in range(1, 14)]
    assert all("runtime" not in r for r in doc["rows"])
    assert "C01  PASS" in out.out
    assert rc == (0 if doc["passed"] else 1)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "trivalent.cli", "--version"], capture_output=True, text=True,
                         env={**os.environ, "OMP_NUM_THREADS": "1"})
    assert res.returncode == 0 and "0.1.0" in res.stdout
