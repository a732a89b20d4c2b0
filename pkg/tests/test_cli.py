"""CLI behaviour: flags, exit codes, trace files, reproducibility."""

import json
import subprocess
import sys


from angeldevil.cli import main


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_sigma5_script(tmp_path, capsys):
    out = tmp_path / "t.jsonl"
    code, stdout, _ = run_cli(
        ["simulate", "--variant", "upward", "--s", "0", "--devil", "sigma:n=5",
         "--angel", "script:U,U,U,U,U", "--out", str(out)],
        capsys,
    )
    assert code == 0
    assert "devil won" in stdout and "5 devil rounds" in stdout
    lines = out.read_text().splitlines()
    assert json.loads(lines[-1]) == {"t": "outcome", "result": "devil_won", "round": 5}


def test_simulate_unreachable_wall_survives(tmp_path, capsys):
    code, stdout, _ = run_cli(
        ["simulate", "--horizon", "10", "--devil", "sigma:n=100",
         "--angel", "random:seed=1", "--variant", "upward", "--out", str(tmp_path / "t.jsonl")],
        capsys,
    )
    assert code == 0
    assert "angel survived" in stdout and "10" in stdout


def test_simulate_big_sigma_random(tmp_path, capsys):
    code, stdout, _ = run_cli(
        ["simulate", "--variant", "unrestricted", "--s", "0", "--devil", "big_sigma:n=8",
         "--angel", "random:seed=42", "--out", str(tmp_path / "t.jsonl")],
        capsys,
    )
    assert code == 0
    assert "devil won" in stdout


def test_cli_idempotent_traces(tmp_path, capsys):
    args = ["simulate", "--variant", "upward", "--s", "1", "--devil", "sigma:n=12",
            "--angel", "random:seed=7"]
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run_cli(args + ["--out", str(a)], capsys)[0] == 0
    assert run_cli(args + ["--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_bad_strategy_is_usage_error(tmp_path, capsys):
    code, _, err = run_cli(
        ["simulate", "--devil", "nonsense", "--angel", "greedy", "--out", str(tmp_path / "t")],
        capsys,
    )
    assert code == 2
    assert "error" in err


def test_simulate_script_violation_exits_nonzero(tmp_path, capsys):
    # scripted angel walks straight into the wall row: IllegalMove at its round
    code, _, err = run_cli(
        ["simulate", "--variant", "upward", "--s", "0", "--devil", "sigma:n=1",
         "--angel", "script:U,U", "--out", str(tmp_path / "t")],
        capsys,
    )
    assert code == 1
    assert "error at round" in err


def test_uncertified_combo_warns_but_runs(tmp_path, capsys):
    code, stdout, err = run_cli(
        ["simulate", "--variant", "unrestricted", "--s", "0", "--devil", "sigma:n=8",
         "--angel", "random:seed=3", "--horizon", "5", "--out", str(tmp_path / "t")],
        capsys,
    )
    assert code == 0
    assert "warning" in err


def test_verify_exhaustive_upward_exit_codes(capsys):
    code, stdout, _ = run_cli(["verify", "exhaustive-upward", "--n", "5", "--s", "0"], capsys)
    assert code == 0
    assert stdout.startswith("PASS")
    code, stdout, _ = run_cli(["verify", "exhaustive-upward", "--n", "3", "--s", "0"], capsys)
    assert code == 1
    assert stdout.startswith("FAIL")


def test_verify_big_sigma_random_small(capsys):
    code, stdout, _ = run_cli(
        ["verify", "big-sigma-random", "--n", "8", "--s", "0", "--games", "2", "--seed", "7"],
        capsys,
    )
    assert code == 0
    assert "2/2 captured" in stdout


def test_verify_sigma_hat_bounded_small(capsys):
    code, stdout, _ = run_cli(
        ["verify", "sigma-hat-bounded", "--n", "8", "--m", "4", "--s", "0", "--budget", "2000000"],
        capsys,
    )
    assert code == 0
    assert "AllCaptured" in stdout


def test_corners_command(capsys):
    code, stdout, _ = run_cli(["corners", "--n", "1"], capsys)
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0].startswith("12 corner-wall squares")
    assert len(lines) == 13
    assert "9,9" in lines


def test_render_command(tmp_path, capsys):
    out = tmp_path / "t.jsonl"
    run_cli(
        ["simulate", "--variant", "upward", "--s", "0", "--devil", "sigma:n=5",
         "--angel", "script:U,U,U,U,U", "--out", str(out)],
        capsys,
    )
    code, stdout, _ = run_cli(["render", str(out), "--at", "3", "--viewport=-3,0,3,6"], capsys)
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0].startswith("round 3:")
    assert lines[1 + (6 - 5)] == ".#.#.#."  # row 5: deletions at -2, 0, 2
    code, _, err = run_cli(["render", str(out), "--at", "99"], capsys)
    assert code == 2


def test_module_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "angeldevil", "corners", "--n", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("20 corner-wall squares")
