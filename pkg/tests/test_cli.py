"""End-to-end runs of the command-line interface."""

import json
import shutil
import subprocess

import pytest

from factorsys import codec
from factorsys.cli import run_command
from factorsys.cohomology import integer_crossed_hom, table_beta
from factorsys.l12 import diag
from factorsys.leavitt import LeavittPathAlgebra, rose
from factorsys.matrix import encode_matrix
from factorsys.models import skew_laurent


def _run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli")
    code = run_command(["--window", "2", "frames", "--out", str(path / "frames.json")])
    assert code == 0
    code = run_command(["--window", "2", "extract", "--frames", str(path / "frames.json"),
                        "--out", str(path / "fs.json")])
    assert code == 0
    (path / "n1.json").write_text(json.dumps({"kind": "monomial_rule", "rule": "edge_count_difference"}))
    return path


def test_frames_report_sizes(capsys, tmp_path):
    code, out = _run(capsys, "--window", "2", "frames")
    assert code == 0
    # powers of e1 in positive degrees, all 2^|n| ghost paths in negative degrees
    assert out["sizes"] == {"-2": 4, "-1": 2, "0": 1, "1": 1, "2": 1}
    code, out = _run(capsys, "--window", "2", "frames", "--positive", "parseval")
    assert code == 0 and out["reports"][0]["ok"]


def test_verify_and_reconstruct(capsys, workdir):
    assert _run(capsys, "verify-fs", "--fs", str(workdir / "fs.json"))[0] == 0
    code, out = _run(capsys, "reconstruct", "--fs", str(workdir / "fs.json"))
    assert code == 0 and all(r["ok"] for r in out["reports"])
    assert _run(capsys, "conjugacy", "--fs", str(workdir / "fs.json"), "--other", str(workdir / "fs.json"))[0] == 0


def test_lift_pipeline(capsys, workdir):
    fs, n1 = str(workdir / "fs.json"), str(workdir / "n1.json")
    code, out = _run(capsys, "lift-check", "--fs", fs, "--derivation", n1)
    assert code == 1 and not out["reports"][0]["ok"]
    assert _run(capsys, "lift-build", "--fs", fs, "--derivation", n1)[0] == 1
    assert _run(capsys, "defect", "--fs", fs, "--derivation", n1)[0] == 1

    eta1 = workdir / "eta1.json"
    fs_obj = codec.decode_factor_system(json.loads((workdir / "fs.json").read_text()))
    eta1.write_text(json.dumps(codec.encode_matrix(fs_obj.unit(1))))
    code, out = _run(capsys, "z-lift", "--fs", fs, "--derivation", n1, "--eta1", str(eta1))
    assert code == 0
    (workdir / "eta.json").write_text(json.dumps(out["eta"]))
    code, out = _run(capsys, "defect", "--fs", fs, "--derivation", n1, "--eta", str(workdir / "eta.json"),
                     "--out", str(workdir / "cochain.json"))
    assert code == 0 and out["reports"][0]["ok"]
    code, out = _run(capsys, "cohomology-solve", "--fs", fs, "--cochain", str(workdir / "cochain.json"))
    assert code == 0 and out["solved"]
    code, out = _run(capsys, "lift-build", "--fs", fs, "--derivation", n1, "--eta", str(workdir / "eta.json"))
    assert code == 0 and out["generator_images"]


def test_gauge_round_trip(capsys, tmp_path):
    fs = skew_laurent(3)
    R = fs.R
    (tmp_path / "fs.json").write_text(json.dumps(codec.encode_factor_system(fs)))
    eta = integer_crossed_hom(fs.group, table_beta(fs), R.var("u", 2), R)
    (tmp_path / "eta.json").write_text(json.dumps(codec.encode_crossed_hom(R, eta)))
    code, out = _run(capsys, "gauge", "--fs", str(tmp_path / "fs.json"), "--crossed-hom", str(tmp_path / "eta.json"))
    assert code == 0 and out["reports"][0]["ok"]


@pytest.mark.parametrize("model", ["skew", "l12-sl2"])
def test_atiyah_and_lecomte(capsys, model):
    assert _run(capsys, "--window", "2", "atiyah", "--model", model)[0] == 0
    code, out = _run(capsys, "--window", "2", "lecomte", "--model", model)
    assert code == 0 and out["class_vanishes"]


def test_lecomte_from_values(capsys, tmp_path):
    path = tmp_path / "values.json"
    path.write_text(json.dumps({"dimension": 2, "structure": {}, "curvature": {"0,1": "5"}}))
    code, out = _run(capsys, "lecomte", "--values", str(path))
    assert code == 1 and out["certificate"]


def test_l12_command(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    lpa = LeavittPathAlgebra(rose(2), "qi")
    a.write_text(json.dumps(encode_matrix(diag(lpa, 1, 0))))
    b.write_text(json.dumps(encode_matrix(diag(lpa, 0, lpa.parse("e1 e1*")))))
    code, out = _run(capsys, "l12", "--matrix", str(a), "--matrix2", str(b))
    assert code == 0 and out["reports"][0]["ok"]
    assert out["generator_images"]["e1"] == lpa.encode(lpa.edge("e1"))
    assert out["generator_images"]["e2"] == []
    (tmp_path / "junk.json").write_text(json.dumps({"rows": 2}))
    assert _run(capsys, "l12", "--matrix", str(tmp_path / "junk.json"))[0] == 2


def test_input_errors(capsys, tmp_path):
    assert _run(capsys, "verify-fs", "--fs", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(capsys, "verify-fs", "--fs", str(bad))[0] == 2
    assert _run(capsys, "--window", "0", "atiyah")[0] == 2
    assert _run(capsys, "atiyah")[0] == 2
    assert _run(capsys, "frames")[0] == 2
    assert run_command(["no-such-command"]) == 2
    capsys.readouterr()


def test_output_is_byte_stable(capsys, workdir):
    argv = ["--json", "verify-fs", "--fs", str(workdir / "fs.json")]
    run_command(argv)
    first = capsys.readouterr().out
    run_command(argv)
    assert capsys.readouterr().out == first


@pytest.mark.skipif(shutil.which("factorsys") is None, reason="console script not installed")
def test_console_script():
    done = subprocess.run(["factorsys", "--help"], capture_output=True, text=True)
    assert done.returncode == 0 and "cohomology-solve" in done.stdout
