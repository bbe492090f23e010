import json

import pytest

from appell import verify
from appell.verify import (DEFAULT_SEED, SEED_ENV, SUITE_NAMES, VerificationRunConfig, build_report,
                           derive_seed, exit_status, render_report, run_identity, run_verification,
                           strip_timestamp, suite_identities)


def _run(config):
    return render_report(build_report(config, run_verification(config)), config.output_format)


def test_seed_derivation_is_stable_and_separating():
    s = derive_seed(42, "reductions", "F1-y-eq-x")
    assert s == derive_seed(42, "reductions", "F1-y-eq-x")
    assert s != derive_seed(43, "reductions", "F1-y-eq-x")
    assert s != derive_seed(42, "reductions", "F2-c-eq-b")
    assert 0 <= s < 2 ** 64


def test_env_seed(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    assert verify.default_seed() == DEFAULT_SEED
    monkeypatch.setenv(SEED_ENV, "7")
    assert verify.default_seed() == 7


def test_config_validation():
    assert VerificationRunConfig().suites == SUITE_NAMES
    for bad in [dict(suites=("nope",)), dict(draws_per_identity=0), dict(seed=-1),
                dict(output_format="xml"), dict(tolerance_overrides={"nope": 1.0})]:
        with pytest.raises(ValueError):
            VerificationRunConfig(**bad)


def test_reports_are_deterministic():
    config = VerificationRunConfig(suites=("reductions",), draws_per_identity=1, seed=42)
    first, second = _run(config), _run(config)
    assert strip_timestamp(first) == strip_timestamp(second)
    csv_config = VerificationRunConfig(suites=("reductions",), draws_per_identity=1, seed=42,
                                       output_format="csv")
    a, b = _run(csv_config), _run(csv_config)
    assert strip_timestamp(a, "csv") == strip_timestamp(b, "csv")
    assert "timestamp" not in strip_timestamp(a, "csv")


def test_report_schema():
    config = VerificationRunConfig(suites=("burchnall-chaundy",), draws_per_identity=2, seed=1)
    report = json.loads(_run(config))
    assert {"version", "seed", "timestamp", "suites"} <= set(report)
    row = report["suites"][0]
    for key in ("identity_id", "draws", "max_rel_residual", "mean_rel_residual", "failures",
                "worst_case_inputs"):
        assert key in row
    assert row["draws"] == 2 and row["failures"] == 0
    assert row["worst_case_inputs"]["family"] == "F4"


def test_failures_iff_residual_above_tolerance():
    ident = suite_identities("reductions")[0]
    ok = run_identity(ident, 3, 5)
    assert ok.failures == 0 and ok.max_rel_residual <= ok.tolerance
    strict = run_identity(ident, 3, 5, tolerance=0.0)
    assert strict.failures > 0 and strict.max_rel_residual > strict.tolerance


def test_tolerance_override_applies_per_suite():
    config = VerificationRunConfig(suites=("reductions",), draws_per_identity=1, seed=3,
                                   tolerance_overrides={"reductions": 0.0})
    reports = run_verification(config)
    assert all(r.tolerance == 0.0 for r in reports)
    assert exit_status(reports) == 1


def test_strict_mode_flags_printed_variants():
    ids = {i.identity_id: i for i in suite_identities("recursions", strict_paper=True)}
    assert "F2-a-down:printed" in ids and "F2-a-down:sign-fixed" in ids
    assert ids["F2-a-down:printed"].diagnostic and not ids["F2-a-down"].diagnostic
    assert "F2-a-down:printed" not in {i.identity_id for i in suite_identities("recursions")}
    rep = run_identity(ids["F2-a-down:printed"], 2, 11)
    assert rep.diagnostic and rep.failures == 2
    # diagnostic failures never change the exit status
    assert exit_status([rep]) == 0


def test_every_suite_has_identities():
    for suite in SUITE_NAMES:
        assert suite_identities(suite)
