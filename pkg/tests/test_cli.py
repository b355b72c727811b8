import io
import json
import subprocess
import sys

import pytest

from fracstable.cli import DEFAULT_SEED, main


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def parse_csv(text):
    lines = [ln for ln in text.strip().splitlines()
             if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    return header, rows


def test_ml_command():
    code, out = run_cli("ml", "--alpha", "1.5", "--x", "0.5,1,2",
                        "--deriv", "0")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["x", "value"]
    assert len(rows) == 3
    assert rows[0][1] == pytest.approx(1.4202702357049505, rel=1e-12)


def test_fracop_command():
    code, out = run_cli("fracop", "--op", "caputo", "--function", "gauss",
                        "--alpha", "1.5", "--x", "1.0")
    assert code == 0
    _, rows = parse_csv(out)
    assert rows[0][1] == pytest.approx(-0.2470639893096767, rel=1e-7)


def test_density_and_moments_commands():
    code, out = run_cli("density", "--law", "valpha", "--alpha", "1.5",
                        "--x", "0.5,1,2")
    assert code == 0
    _, rows = parse_csv(out)
    assert all(v > 0.0 for _, v in rows)
    code, out = run_cli("moments", "--law", "x", "--alpha", "1.5",
                        "--s", "1.0")
    assert code == 0
    _, rows = parse_csv(out)
    assert rows[0][1] == pytest.approx(1.1077321674324718, rel=1e-12)


def test_sample_command_seed_header_and_determinism():
    code, out1 = run_cli("sample", "--law", "xhat", "--alpha", "1.5",
                         "--n", "50", "--seed", "7")
    assert code == 0
    assert out1.splitlines()[0] == "# seed=7"
    _, out2 = run_cli("sample", "--law", "xhat", "--alpha", "1.5",
                      "--n", "50", "--seed", "7")
    assert out1 == out2
    _, out3 = run_cli("sample", "--law", "xhat", "--alpha", "1.5",
                      "--n", "50", "--seed", "8")
    assert out3 != out1


def test_seed_resolution_env_and_default(monkeypatch):
    monkeypatch.delenv("FRACSTABLE_SEED", raising=False)
    _, out = run_cli("sample", "--law", "valpha", "--alpha", "1.5",
                     "--n", "5")
    assert out.splitlines()[0] == "# seed=%d" % DEFAULT_SEED
    monkeypatch.setenv("FRACSTABLE_SEED", "123")
    _, out = run_cli("sample", "--law", "valpha", "--alpha", "1.5",
                     "--n", "5")
    assert out.splitlines()[0] == "# seed=123"
    # explicit flag beats the environment
    _, out = run_cli("sample", "--law", "valpha", "--alpha", "1.5",
                     "--n", "5", "--seed", "9")
    assert out.splitlines()[0] == "# seed=9"


def test_simulate_command():
    code, out = run_cli("simulate", "--alpha", "1.5", "--reflect", "sup",
                        "--steps", "64", "--paths", "20", "--seed", "1")
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 20
    assert all(v >= 0.0 for (v,) in rows)


def test_calibrate_bias_command():
    code, out = run_cli("calibrate-bias", "--alpha", "1.5",
                        "--ladder", "64,128,256", "--paths", "1000",
                        "--seed", "2")
    assert code == 0
    data = json.loads(out)
    assert data["ks_allowance"] > 0.0
    assert len(data["rungs"]) == 3


def test_verify_command_pass_and_fail_exit_codes(tmp_path):
    report_file = tmp_path / "report.json"
    code, out = run_cli("verify", "lamperti", "--alpha", "1.5",
                        "--output", str(report_file))
    assert code == 0
    data = json.loads(out)
    assert data["check"] == "lamperti" and data["passed"]
    assert json.loads(report_file.read_text())["passed"]
    # an impossible tolerance turns the same run into a failure (exit 2)
    code, out = run_cli("verify", "lamperti", "--alpha", "1.5",
                        "--tol", "1e-30")
    assert code == 2
    assert not json.loads(out)["passed"]


def test_verify_factorization_command():
    code, out = run_cli("verify", "factorization", "--alpha", "1.5",
                        "--s", "0.25,0.5,1.0")
    assert code == 0
    assert json.loads(out)["passed"]


def test_usage_errors_exit_one():
    assert run_cli("nonsense")[0] == 1
    assert run_cli("ml", "--alpha", "1.5")[0] == 1          # missing --x
    assert run_cli("ml", "--alpha", "1.5", "--x", "a,b")[0] == 1
    # domain violations surface as exit 1, not a traceback
    assert run_cli("moments", "--law", "x", "--alpha", "1.5",
                   "--s", "1.9")[0] == 1


def test_installed_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fracstable.cli", "--version"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip()
