import json

import pytest

from appell.cli import main


def _eval(capsys, *args):
    rc = main(["eval", *args, "--json"])
    out = capsys.readouterr()
    return rc, (json.loads(out.out) if rc == 0 else None), out.err


def test_eval_origin(capsys):
    rc, out, _ = _eval(capsys, "f1", "--params", "1.1,0.6,0.8,2.0", "--point", "0,0")
    assert rc == 0 and out["value"] == 1.0 and out["terms_used"] == 1


def test_eval_f4_closed_form_point(capsys):
    rc, out, _ = _eval(capsys, "f4", "--params", "1.2,0.7,1.2,0.7", "--point", "0.14,0.24")
    assert rc == 0 and out["value"] == pytest.approx(2.0088031640, abs=1e-9)


def test_eval_negative_leading_parameter(capsys):
    rc, out, _ = _eval(capsys, "2f1", "--params=-2,1,3", "--point", "0.5")
    # terminating: 1 - 2*0.5/3 + (-2)(-1)(1)(2)/(3*4*2) * 0.25
    assert rc == 0 and out["value"] == pytest.approx(1 - 1 / 3 + 1 / 24, rel=1e-14)


def test_eval_elliptic_reports_both_routes(capsys):
    rc, out, _ = _eval(capsys, "elliptic-F", "--params", "0.7,0.6")
    assert rc == 0
    assert abs(out["quadrature"] - out["f1_based"]) < 1e-8


def test_eval_summation_reports_closed_form(capsys):
    rc, out, _ = _eval(capsys, "karlsson", "--params", "0.3,0.4,0.5,2.5,4.0")
    assert rc == 0 and out["value"] == pytest.approx(out["closed_form"], rel=1e-10)


def test_eval_plain_text(capsys):
    assert main(["eval", "fd", "--params", "1.1,0.4,0.5,0.6,2.2", "--point", "0.1,0.2,0.3"]) == 0
    assert "value:" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main(["eval", "f1", "--params", "1,2,3", "--point", "0.1,0.1"]) == 2
    assert "takes 4 parameters" in capsys.readouterr().err
    assert main(["eval", "f9", "--params", "1", "--point", "0.1,0.1"]) == 2
    assert main(["eval", "f1", "--params", "1,x,2,3", "--point", "0.1,0.1"]) == 2
    assert main(["eval", "f1", "--params", "1,1,1,2", "--point", "0.1,0.1", "--tol", "0"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["verify", "--suites", "nope"]) == 2


def test_domain_error_exit_code(capsys):
    rc = main(["eval", "f2", "--params", "1.1,0.5,0.7,1.9,2.3", "--point", "0.6,0.5"])
    assert rc == 3
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "DomainError" and err["reason"]


def test_parameter_pole_exit_code(capsys):
    assert main(["eval", "f1", "--params", "1.1,0.6,0.8,-2", "--point", "0.1,0.1"]) == 3
    assert json.loads(capsys.readouterr().err)["error"]


def test_verify_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    rc = main(["verify", "--suites", "reductions", "--draws", "2", "--seed", "5", "--out", str(out)])
    assert rc == 0
    report = json.loads(out.read_text())
    assert report["seed"] == 5 and all(r["failures"] == 0 for r in report["suites"])
    assert "PASS reductions/F1-y-eq-x" in capsys.readouterr().out


def test_verify_strict_mode_keeps_exit_zero(tmp_path, capsys):
    out = tmp_path / "r.csv"
    rc = main(["verify", "--suites", "integrals", "--draws", "1", "--seed", "5", "--strict-paper",
               "--format", "csv", "--out", str(out)])
    assert rc == 0
    assert "DIFF integrals/F2-double-integral:printed" in capsys.readouterr().out
    assert "F2-double-integral:printed" in out.read_text()


def test_verify_tolerance_override_fails(capsys):
    rc = main(["verify", "--suites", "horn", "--draws", "1", "--tol-override", "horn=0"])
    assert rc == 1
    assert main(["verify", "--suites", "horn", "--tol-override", "horn"]) == 2
