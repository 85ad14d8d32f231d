"""CLI contract tests: byte-deterministic stdout, exit codes, and output
shapes, driven through subprocesses against the shipped data files."""

import json
import os
import subprocess
from pathlib import Path

import pytest

_ROOT = Path(__file__).resolve().parents[2]
CLI = Path(os.environ.get("QRD_CLI", _ROOT / "build" / "qrd"))
DATA = Path(os.environ.get("QRD_DATA", _ROOT / "data"))

pytestmark = pytest.mark.skipif(not CLI.exists(), reason="CLI binary not built")


def run(*args, config=None):
    env = os.environ.copy()
    env.pop("QRD_CONFIG", None)
    if config is not None:
        env["QRD_CONFIG"] = str(config)
    return subprocess.run([str(CLI), *map(str, args)], capture_output=True, env=env)


def test_divergence_row_shape():
    r = run("divergence", "--rho", DATA / "plus.json", "--sigma", DATA / "thermal.json",
            "--alpha", "2", "--variant", "petz")
    assert r.returncode == 0
    header, row = r.stdout.decode().strip().splitlines()
    assert header == "command,alpha,R,variant,form,value,gap"
    fields = row.split(",")
    assert fields[0] == "divergence" and fields[3] == "petz"
    assert float(fields[5]) == pytest.approx(0.9808292530117262, abs=1e-9)  # log(8/3)


def test_stdout_is_byte_deterministic():
    args = ("sweep", "exponent", "--channel", DATA / "bsc01.json", "--rates", "0.4:0.6:0.1")
    first, second = run(*args), run(*args)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    lines = first.stdout.decode().strip().splitlines()
    assert lines[0] == "R,value,alpha_star"
    assert len(lines) == 4  # header + three rates


def test_capacity_uses_file_prior_and_labels():
    r = run("capacity", "--channel", DATA / "bsc01.json", "--alpha", "2",
            "--variant", "sandwiched")
    assert r.returncode == 0
    value = float(r.stdout.decode().strip().splitlines()[1].split(",")[5])
    assert value == pytest.approx(0.49469624183610661, abs=1e-9)


def test_verify_reports_json_and_passes():
    r = run("verify", "--suite", "ordering,limits", "--seed", "7")
    assert r.returncode == 0
    report = json.loads(r.stdout.decode())
    assert report["all_passed"] is True
    assert [g["name"] for g in report["groups"]] == ["ordering", "limits"]
    assert b"[PASS] ordering" in r.stderr


def test_exit_1_on_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,')
    r = run("divergence", "--rho", bad, "--sigma", DATA / "thermal.json")
    assert r.returncode == 1
    assert b"line" in r.stderr and b"column" in r.stderr


def test_exit_1_on_unknown_option_and_missing_subcommand():
    assert run("divergence", "--bogus").returncode == 1
    assert run().returncode == 1


def test_exit_2_on_forced_nonconvergence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"max_iters": 1}')
    r = run("dueck-korner", "--channel", DATA / "two_state.json", "--rate", "0.6", config=cfg)
    assert r.returncode == 2
    assert b"error:" in r.stderr


def test_exit_3_on_failed_verification(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"max_iters": 1}')
    r = run("verify", "--suite", "sibson", "--seed", "7", config=cfg)
    assert r.returncode == 3
    report = json.loads(r.stdout.decode())
    assert report["all_passed"] is False


def test_exponent_pipelines_agree():
    direct = run("exponent", "--channel", DATA / "bsc01.json", "--rate", "0.6")
    fixed = run("exponent", "--channel", DATA / "bsc01.json", "--rate", "0.6",
                "--input", "0.5,0.5", "--variant", "flat", "--form", "2")
    v_direct = float(direct.stdout.decode().strip().splitlines()[1].split(",")[5])
    v_fixed = float(fixed.stdout.decode().strip().splitlines()[1].split(",")[5])
    assert v_direct == pytest.approx(v_fixed, abs=1e-6)


def test_schur_rows():
    r = run("schur", "--n", "2", "--d", "2")
    assert r.returncode == 0
    lines = r.stdout.decode().strip().splitlines()
    assert lines[0] == "lambda,dim_sym,dim_gl,rank"
    ranks = {row.split(",")[0]: int(row.split(",")[3]) for row in lines[1:]}
    assert ranks == {"2+0": 3, "1+1": 1}
