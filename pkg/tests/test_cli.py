"""Command-line driver: exit codes, JSON reports, determinism."""

import json

import pytest

from vpq import cli
from vpq.report import ResidualReport
from vpq.suite import JsonReport, SuiteConfig, SuiteConfigError, run_suite


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_verify_algebra_ok(capsys):
    rc, out, _ = run(capsys, "verify-algebra", "--window", "2")
    assert rc == 0
    assert "total checked=" in out
    assert "failed=0" in out


def test_classify_reports_the_case(capsys, tmp_path):
    path = tmp_path / "out.json"
    rc, out, _ = run(capsys, "classify", "--a", "5", "--b", "0",
                     "--json", str(path))
    assert rc == 0
    doc = json.loads(path.read_text())
    classify = next(c for c in doc["checks"] if c["check"] == "classify")
    assert classify["sections"]["profile"]["case"] == 2
    assert doc["totals"]["failed"] == 0


def test_iso_subcommand_shift_values(capsys, tmp_path):
    path = tmp_path / "iso.json"
    rc, _, _ = run(capsys, "iso", "--a", "0", "--b", "1", "--m", "1",
                   "--json", str(path))
    assert rc == 0
    doc = json.loads(path.read_text())
    iso = doc["checks"][0]
    assert iso["sections"]["a_shift"] == "1/3"
    assert iso["sections"]["b_shift"] == "2/3"


def test_iso_text_output_shows_shift(capsys):
    rc, out, _ = run(capsys, "iso", "--a", "0", "--b", "1", "--m", "1")
    assert rc == 0
    assert "a'=1/3" in out
    assert "b'=2/3" in out


def test_submodules_text_output_lists_supports(capsys):
    rc, out, _ = run(capsys, "submodules", "--family", "mab:a=-1/2,b=-3/2",
                     "--window", "5")
    assert rc == 0
    assert "support {-5, -4, -3, -2, 0, 1, 2, 3, 4, 5}" in out


def test_submodules_text_output_when_none(capsys):
    rc, out, _ = run(capsys, "submodules", "--family", "mab:a=1/3,b=1/3",
                     "--window", "4")
    assert rc == 0
    assert "no proper invariant supports" in out


def test_negative_rational_values_survive_argparse(capsys):
    rc, out, _ = run(capsys, "case-audit", "--a", "-1/5")
    assert rc == 0
    assert "finding[G-catalogued-value]" in out


def test_negative_window_flag_still_errors(capsys):
    # gluing only touches rational-valued flags, not e.g. --window
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify-algebra", "--window"])
    assert exc.value.code == 2


def test_uqsl2_subcommand(capsys):
    rc, out, _ = run(capsys, "uqsl2", "--two-l", "4", "--omega", "1",
                     "--q", "2")
    assert rc == 0
    assert "uqsl2-relations" in out
    assert "uqsl2-x-quadratic" in out


def test_uqsl2_odd_ladder_skips_the_fit(capsys):
    rc, out, _ = run(capsys, "uqsl2", "--two-l", "5", "--omega", "-1",
                     "--q", "3")
    assert rc == 0
    assert "uqsl2-x-quadratic" not in out


def test_verify_module_filter_flag(capsys):
    rc, _, _ = run(capsys, "verify-module", "--family", "alpha:alpha=1/2",
                   "--nmax", "2", "--kmax", "5", "--filter", "generators")
    assert rc == 0


def test_degenerate_context_is_a_usage_error(capsys):
    rc, _, err = run(capsys, "verify-algebra", "--p", "2", "--q", "2")
    assert rc == 2
    assert "vpq:" in err


def test_unknown_family_is_a_usage_error(capsys):
    rc, _, err = run(capsys, "verify-module", "--family", "nope:x=1")
    assert rc == 2
    assert "unknown family" in err


def test_unknown_flag_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify-algebra", "--frobnicate"])
    assert exc.value.code == 2


def test_missing_config_file_is_a_usage_error(capsys, tmp_path):
    rc, _, err = run(capsys, "suite", "--config",
                     str(tmp_path / "absent.json"))
    assert rc == 2


def test_invalid_config_is_a_usage_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "context": {"p": "2", "q": "3"},
        "checks": [{"check": "qint-identities", "mmax": 4, "bogus": 1}],
    }))
    rc, _, err = run(capsys, "suite", "--config", str(path))
    assert rc == 2
    assert "bogus" in err


def test_suite_runs_are_byte_identical(capsys, tmp_path):
    config = tmp_path / "suite.json"
    config.write_text(json.dumps({
        "context": {"p": "2", "q": "3"},
        "seed": 7,
        "checks": [
            {"check": "qint-identities", "mmax": 6},
            {"check": "sampled-modules", "count": 2, "nmax": 2, "kmax": 4},
            {"check": "roots", "a": "2", "b": "1/4"},
        ],
    }))
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert cli.main(["suite", "--config", str(config),
                     "--json", str(out1)]) == 0
    assert cli.main(["suite", "--config", str(config),
                     "--json", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_exit_code_1_on_nonzero_residual(capsys, monkeypatch):
    config = SuiteConfig.from_dict({
        "context": {"p": "2", "q": "3"},
        "checks": [{"check": "qint-identities", "mmax": 2}],
    })
    failing = ResidualReport("qint-identities", {})
    failing.record("forced", (0,), 1)
    monkeypatch.setattr(cli, "run_suite",
                        lambda cfg: JsonReport(config, [failing]))
    rc, out, _ = run(capsys, "verify-algebra")
    assert rc == 1
    assert "FAIL" in out


def test_config_rejections():
    base = {"context": {"p": "2", "q": "3"}, "checks": []}
    bad = [
        {},  # missing keys
        {**base, "extra": 1},
        {"context": {"p": "2"}, "checks": []},
        {"context": {"p": "2", "q": "3", "r": "5"}, "checks": []},
        {"context": {"p": "2", "q": "3", "backend": "fast"}, "checks": []},
        {"context": {"p": "2", "q": "3", "guard_window": 0}, "checks": []},
        {**base, "seed": "seven"},
        {**base, "checks": [{"check": "made-up"}]},
        {**base, "checks": [{"check": "iso", "a": "1"}]},  # missing b, m
        {**base, "checks": [{"check": "qint-identities", "mmax": "four"}]},
    ]
    for doc in bad:
        with pytest.raises(SuiteConfigError):
            SuiteConfig.from_dict(doc)


def test_run_suite_seed_is_recorded(tmp_path):
    config = SuiteConfig.from_dict({
        "context": {"p": "2", "q": "3"},
        "seed": 99,
        "checks": [{"check": "sampled-modules", "count": 1,
                    "nmax": 2, "kmax": 4}],
    })
    doc = json.loads(run_suite(config).serialize())
    assert doc["seed"] == 99
    assert doc["tool"] == "vpq"
    assert doc["totals"]["failed"] == 0
