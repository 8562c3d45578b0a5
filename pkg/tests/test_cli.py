from __future__ import annotations

import json
import subprocess
import sys

CLI = [sys.executable, "-m", "hyperreg.cli"]


def run(*args, **kw):
    return subprocess.run(CLI + list(args), capture_output=True, text=True, **kw)


def test_period_t_variable():
    out = run("period", "1/2,1/2,1/2,1/2;1,1,1,1", "--var", "t", "-K", "4", "--json")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["coefficients"] == ["1", "16", "1296", "160000"]


def test_period_appb_pi0():
    out = run("period", "appB:pi0", "-K", "5", "--json")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["coefficients"] == ["1", "2/9", "10/81", "560/6561", "3850/59049"]


def test_period_parse_error_exit2():
    out = run("period", ";1,1")
    assert out.returncode == 2


def test_period_divergent_point_exit3():
    out = run("period", "1/2;1", "--var", "t", "-K", "64", "--point", "2/3")
    assert out.returncode == 3


def test_regulator_out_of_range_exit2():
    out = run("regulator", "--case", "cy0", "--t", "1/3")
    assert out.returncode == 2


def test_regulator_decimal_rejected():
    out = run("regulator", "--case", "cy0", "--t", "0.14")
    assert out.returncode == 2


def test_regulator_cy0(tmp_path):
    out = run("--digits", "20", "regulator", "--case", "cy0", "--t", "1/7", "--json")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["detected_ratio"] == "1/8"


def test_determinism_and_concurrency():
    """Identical config => byte-identical output, also under fan-out."""
    args = ("--digits", "20", "--json", "regulator", "--case", "k4",
            "--t", "1/1024,1/4096,1/16384")
    a = run(*args)
    b = run(*args)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    docs = json.loads(a.stdout)
    assert [d["t"] for d in docs] == ["1/1024", "1/4096", "1/16384"]


def test_config_file_merging(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("digits = 20\n# comment\n")
    out = run("--config", str(cfg), "period", "1/2;1", "-K", "3", "--json")
    assert out.returncode == 0
    # flags win over config
    out2 = run("--config", str(cfg), "--digits", "25", "period", "1/2;1",
               "-K", "3", "--json")
    assert out2.returncode == 0


def test_verify_ratios_skip_exit0(tmp_path):
    """Without L-data the ratio suite reports skipped and exits 0."""
    out = run("--digits", "20", "--fixtures", str(tmp_path), "verify", "ratios")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert any(r["status"] == "skipped" for r in doc)


def test_hadamard_command():
    out = run("hadamard", "k4", "-K", "8", "--json")
    assert out.returncode == 0
    assert "matches closed form" in out.stdout


def test_fetch_offline_miss(tmp_path):
    out = run("--cache", str(tmp_path), "--offline", "fetch", "some/label")
    assert out.returncode == 3


def test_fixture_digit_refusal(tmp_path):
    """The loader refuses L-values with fewer digits than the target."""
    import json as _json
    from hyperreg.mpnum import PrecisionPolicy
    from hyperreg.regulators.fixtures import (FixtureError, fixture_L_value,
                                              load_fixture)
    (tmp_path / "k4.json").write_text(_json.dumps(
        [{"t": "1/1024", "expected_ratio": "4", "L_value": "0.123456",
          "L_derivative_order": 2}]))
    rows = load_fixture("k4", tmp_path)
    pol = PrecisionPolicy(30)
    import pytest as _pytest
    with _pytest.raises(FixtureError):
        fixture_L_value(rows[0], pol)


def test_hyperreg_cache_env(tmp_path):
    import os
    env = dict(os.environ, HYPERREG_CACHE=str(tmp_path))
    out = subprocess.run(CLI + ["--offline", "fetch", "nope/nothing"],
                         capture_output=True, text=True, env=env)
    assert out.returncode == 3
    assert "offline" in out.stderr
