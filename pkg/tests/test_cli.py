import csv
import json

import numpy as np
import pytest

from cosetym.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, UsageError, main, parse_scan


def read_rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_reduce_flat_point(tmp_path, capsys):
    out = tmp_path / "r"
    assert main(["reduce", "--f-re", "1", "--grid", "12", "--out", str(out)]) == EXIT_OK
    summary = json.loads((out / "summary.json").read_text())
    assert summary["flat"] is True
    assert summary["sup_F"] < 1e-8
    assert summary["patch_residual"] < 1e-8
    assert summary["provenance"] == "F-SU2"
    rows = read_rows(out / "potential.csv")
    assert len(rows) == 2 * 2 * 12 * 12
    assert json.loads(capsys.readouterr().out)["flat"] is True


def test_reduce_forced_zero_warns(tmp_path, capsys):
    out = tmp_path / "r"
    assert main(["reduce", "--n", "5", "--f-re", "0.3", "--grid", "10", "--out", str(out)]) == EXIT_OK
    assert "forced zero" in capsys.readouterr().err
    summary = json.loads((out / "summary.json").read_text())
    assert summary["intertwiner_forced_zero"] is True
    assert summary["f_used_re"] == 0
    assert summary["provenance"] == "A-SU2"


def test_reduce_is_deterministic(tmp_path):
    for d in ("a", "b"):
        assert main(["reduce", "--f-re", "0.4", "--f-im", "0.2", "--grid", "8",
                     "--out", str(tmp_path / d)]) == EXIT_OK
    for name in ("potential.csv", "curvature.csv", "summary.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_action_scan_and_extrema(tmp_path):
    out = tmp_path / "s"
    assert main(["action", "--scan", "0:2:0.5", "--seeds", "2", "--out", str(out)]) == EXIT_OK
    rows = read_rows(out / "action_scan.csv")
    assert [float(r["abs_f"]) for r in rows] == [0, 0.5, 1, 1.5, 2]
    assert max(float(r["rel_err"]) for r in rows) < 1e-12
    report = json.loads((out / "extrema.json").read_text())
    kinds = [e["kind"] for e in report["extrema"]]
    assert kinds == ["minimum", "minimum", "maximum"]
    for e in report["extrema"][:2]:
        assert abs(e["abs_f"] - 1) < 1e-8
    assert report["extrema"][2]["S"] == pytest.approx(np.pi / 2, abs=1e-8)


def test_action_nonconvergence_exits_1(tmp_path):
    assert main(["action", "--scan", "1", "--seeds", "1", "--tol", "1e-300",
                 "--out", str(tmp_path)]) == EXIT_FAIL
    assert json.loads((tmp_path / "extrema.json").read_text())["converged"] is False


@pytest.mark.parametrize("scan", ["", "2:0:0.1", "0:1:0", "a,b", "0:1"])
def test_action_bad_scan_exits_2(tmp_path, scan):
    assert main(["action", "--scan", scan, "--out", str(tmp_path)]) == EXIT_USAGE


def test_parse_scan():
    assert parse_scan("0:1:0.25") == [0, 0.25, 0.5, 0.75, 1.0]
    assert parse_scan("0.5, 1.5") == [0.5, 1.5]
    with pytest.raises(UsageError):
        parse_scan(" ")


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# scan settings\nscan = 0,1\nradius = 2   # metres\nseeds = 1\n")
    out = tmp_path / "o"
    assert main(["action", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    rows = read_rows(out / "action_scan.csv")
    assert float(rows[0]["S"]) == pytest.approx(np.pi / 8)
    assert main(["action", "--config", str(cfg), "--radius", "1", "--out", str(out)]) == EXIT_OK
    assert float(read_rows(out / "action_scan.csv")[0]["S"]) == pytest.approx(np.pi / 2)


@pytest.mark.parametrize("text", ["bogus = 1\n", "radius\n", "radius = -1\n"])
def test_bad_config_exits_2(tmp_path, text):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text)
    assert main(["action", "--config", str(cfg), "--out", str(tmp_path)]) == EXIT_USAGE


def test_missing_config_exits_2(tmp_path):
    assert main(["reduce", "--config", str(tmp_path / "nope.cfg")]) == EXIT_USAGE


@pytest.mark.parametrize("group, surface, result, method", [
    ("SU(2)", "sphere2", "trivial", "B-H2"), ("U(1)", "orientable:1", "Z", "B-H2"),
    ("SO(3)", "nonorientable:2", "Z2", "B-H2"), ("discrete:Z2", "sphere2", "trivial", "B-H1a")])
def test_classify(capsys, group, surface, result, method):
    assert main(["classify", group, surface]) == EXIT_OK
    d = json.loads(capsys.readouterr().out)
    assert d["result"] == result and d["method"] == method


@pytest.mark.parametrize("args", [["SO(4)", "sphere2"], ["discrete:S3", "sphere2"],
                                  ["SU(2)", "klein"], ["SU(2)"]])
def test_classify_usage_errors(args):
    assert main(["classify", *args]) == EXIT_USAGE


def test_verify_suite(tmp_path, capsys):
    report_path = tmp_path / "v.json"
    assert main(["verify", "bundles", "--out", str(report_path)]) == EXIT_OK
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["passed"] and json.loads(report_path.read_text()) == report
    assert "PASS bundles.golden_set" in captured.err


def test_verify_tolerance_override_can_fail():
    assert main(["verify", "connection", "--tol", "patch_agreement=1e-30"]) == EXIT_FAIL


def test_verify_detects_perturbed_pairing(capsys):
    assert main(["verify", "action", "--pairing-constant", "-0.2525"]) == EXIT_FAIL
    assert "FAIL action.calibration" in capsys.readouterr().err


@pytest.mark.parametrize("args", [["verify", "--tol", "nope=1"], ["verify", "--tol", "jacobi"],
                                  ["verify", "nosuch"], [], ["frobnicate"]])
def test_usage_errors(args):
    assert main(args) == EXIT_USAGE
