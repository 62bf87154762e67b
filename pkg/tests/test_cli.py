"""Command-line interface: exit codes, JSON reports, determinism."""

import json
import subprocess
import sys

import pytest

from cxkit.cli import main

SPEC = """\
vars: d1 d2 d3
params: mu
operator A = [[d1], [d2], [d3]]
complex C = de_rham(3)
mu C 1 scalar mu
task verify C
"""


@pytest.fixture()
def spec_file(tmp_path):
    path = tmp_path / "doc.spec"
    path.write_text(SPEC)
    return str(path)


def _run(args):
    return main(args)


def test_verify_pass(spec_file, capsys):
    assert _run(["verify", "--spec", spec_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] and out["command"] == "verify"


def test_laplacian_json_out(spec_file, tmp_path):
    out = tmp_path / "lap.json"
    assert _run(["laplacian", "--spec", spec_file, "--degree", "1",
                 "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    # mu is assigned at degree 1 only, so the degree-1 Laplacian is -mu Delta
    assert data["laplacians"][0]["operator"]["entries"][0][0] \
        == "-d1^2*mu - d2^2*mu - d3^2*mu"


def test_maxwell_and_stokes_shapes(spec_file, capsys):
    assert _run(["maxwell", "--spec", spec_file]) == 0
    m = json.loads(capsys.readouterr().out)
    assert m["operator"]["rows"] == 8
    assert _run(["stokes", "--spec", spec_file, "--degree", "1"]) == 0
    s = json.loads(capsys.readouterr().out)
    assert s["operator"]["rows"] == 4


def test_ellipticity_command(spec_file, capsys):
    assert _run(["ellipticity", "--spec", spec_file, "--name", "A",
                 "--kind", "injectivity"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["report"]["verdict"] in ("certified-symbolic", "numeric-pass")


def test_syzygy_and_extend(spec_file, capsys):
    assert _run(["syzygy", "--spec", spec_file]) == 0
    b = json.loads(capsys.readouterr().out)
    assert b["composition_zero"]
    assert _run(["extend", "--spec", spec_file]) == 0
    e = json.loads(capsys.readouterr().out)
    assert e["ranks"] == [1, 3, 3, 1]


def test_parametrix_command(spec_file, capsys):
    assert _run(["parametrix", "--spec", spec_file, "--side", "left"]) == 0


def test_dn_weights_command(spec_file, capsys):
    assert _run(["dn-weights", "--spec", spec_file]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["variant0"]["s"] == [1, 1, 1, 1]


def test_missing_spec_is_json_error(capsys):
    assert _run(["verify", "--spec", "/no/such/file"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] is False and "error" in rep


def test_parse_error_is_json_error(tmp_path, capsys):
    bad = tmp_path / "bad.spec"
    bad.write_text("vars: d1\noperator A = [[d1^]]\n")
    assert _run(["verify", "--spec", str(bad)]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert "line 2" in rep["error"]


def test_threads_env_recorded(spec_file, tmp_path, monkeypatch):
    monkeypatch.setenv("CXKIT_THREADS", "4")
    out = tmp_path / "v.json"
    assert _run(["verify", "--spec", spec_file, "--json", str(out)]) == 0
    assert json.loads(out.read_text())["threads"] == 4


def test_fixture_bundle_byte_identical(tmp_path):
    """Two independent subprocess runs must produce identical JSON bytes."""
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        proc = subprocess.run(
            [sys.executable, "-m", "cxkit.cli", "fixtures",
             "--suite", "syzygy-suite", "--json", str(path)],
            capture_output=True,
        )
        assert proc.returncode == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
