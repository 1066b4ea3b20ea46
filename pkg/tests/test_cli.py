"""Command-line interface: exit codes, JSON contract, determinism."""

import json
import subprocess
import sys

import pytest

from spinorlab import cli
from spinorlab.suites import CheckResult, VerificationReport


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_ext_json(capsys):
    code, out, _ = run(["ext", "--form", "1,1,0", "--from", "S1", "--to", "S2", "--max-degree", "4", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1 and data["pass"] is True
    assert data["result"]["dims"] == [0, 1, 0, 1, 0]
    assert {"version", "command"} <= set(data)


@pytest.mark.parametrize(
    "argv,token",
    [
        (["ext", "--form", "1,1,x", "--from", "S1", "--to", "S2"], "--form"),
        (["ext", "--form", "1,1,0", "--from", "S9", "--to", "S2"], "S9"),
        (["ext", "--form", "1,1,0", "--from", "S1", "--to", "S2", "--max-degree", "-1"], "--max-degree"),
        (["mf", "--form", "1,1,0", "--isotropic", "dim=7"], "--isotropic"),
        (["cohomology", "--form", "1,0"], "--form"),
        (["cohomology", "--form", "1,1,1,0", "--twists", "4:-4"], "--twists"),
        (["classify", "--form", "1,1,0,0"], "--form"),
        (["verify", "nosuch"], "nosuch"),
        (["frobnicate"], "frobnicate"),
    ],
)
def test_usage_errors_name_the_token(argv, token, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert token in err


def test_internal_error_exits_one(monkeypatch, capsys):
    def boom(args):
        raise RuntimeError("injected")

    monkeypatch.setitem(cli.COMMANDS, "algebra", boom)
    code, _, err = run(["algebra", "--form", "1,1"], capsys)
    assert code == 1
    assert "injected" in err


def test_failed_check_exits_one(monkeypatch, capsys):
    failing = VerificationReport(
        "ext", [CheckResult("bad", {}, 1, 2, False, None)], "0"
    )
    monkeypatch.setattr(cli, "run_suite", lambda suite, params: failing)
    code, out, _ = run(["verify", "ext", "--json"], capsys)
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_verify_json_is_byte_identical(capsys):
    argv = ["verify", "ext", "--form", "1,1,0", "--max-degree", "4", "--json"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second
    data = json.loads(first)
    names = [c["name"] for c in data["checks"]]
    assert names == sorted(names)
    for c in data["checks"]:
        assert set(c) == {"name", "inputs", "expected", "computed", "pass", "millis"}
        assert c["millis"] is None
    assert data["schema"] == 1 and data["pass"] is True


def test_report_round_trip(capsys):
    _, out, _ = run(["verify", "morita", "--max-dim", "3", "--json"], capsys)
    report = VerificationReport.from_json(out)
    assert report.to_json() == out


def test_negative_twists_accepted(capsys):
    code, out, _ = run(["cohomology", "--form", "1,1,1,0", "--twists", "-2:2", "--json"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["twists"] == [-2, -1, 0, 1, 2]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(["algebra", "--form", "1,1,0", "--even", "--out", str(path)], capsys)
    assert code == 0
    assert json.loads(path.read_text())["schema"] == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spinorlab.cli", "fingerprint", "--form", "1,0", "--even", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["result"]["dim"] == 2
