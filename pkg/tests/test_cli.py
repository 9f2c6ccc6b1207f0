import json
import os
import subprocess
import sys

import pytest

from scalerep.cli import main


def run_cli(args, env=None):
    cmd = [sys.executable, "-m", "scalerep", *args]
    full_env = {**os.environ, **(env or {})}
    return subprocess.run(cmd, capture_output=True, text=True, env=full_env)


def test_eval_views(capsys):
    base = ["eval", "--expr", "x*y", "--bind", "x=2", "--bind", "y=5", "--struct", "rat:r=3"]
    assert main([*base, "--view", "external"]) == 0
    assert capsys.readouterr().out.strip() == "30"
    assert main([*base, "--view", "internal"]) == 0
    assert capsys.readouterr().out.strip() == "10"
    assert main([*base, "--view", "base"]) == 0
    assert capsys.readouterr().out.strip() == "10"


def test_eval_complex_literal(capsys):
    assert main(["eval", "--expr", "x*x", "--bind", "x=1i", "--struct", "cpx:c=2+1i"]) == 0
    assert capsys.readouterr().out.strip() == "-2-1i"


@pytest.mark.parametrize(
    "args",
    [
        ["eval", "--expr", "x/"],
        ["eval", "--expr", "x+y", "--bind", "x=1"],
        ["eval", "--expr", "1/x", "--bind", "x=0"],
        ["eval", "--expr", "x", "--bind", "x"],
        ["check", "--suite", "nat", "--struct", "cpx:c=1i"],
        ["check", "--suite", "field", "--struct", "rat:r=0"],
        ["compose", "rat:r=2"],
        ["compose", "rat:r=2", "cpx:c=1i"],
        ["gauge", "--sites", "1"],
        ["gauge", "--potential", "cos:1"],
    ],
)
def test_usage_errors_exit_2(args, capsys):
    assert main(args) == 2
    assert "scalerep:" in capsys.readouterr().err


def test_unknown_flag_exits_2():
    result = run_cli(["check", "--bogus"])
    assert result.returncode == 2


def test_check_pass(capsys):
    code = main(["check", "--suite", "field", "--struct", "cpx:c=2+1i", "--samples", "500",
                 "--seed", "42"])
    assert code == 0
    assert capsys.readouterr().out.startswith("PASS field cpx:c=2+1i")


def test_check_order_reflection(capsys):
    assert main(["check", "--suite", "order", "--struct", "int:j=-1", "--samples", "200"]) == 0


def test_check_json(capsys):
    assert main(["check", "--suite", "conj", "--struct", "cpx:c=1i", "--samples", "30",
                 "--seed", "5", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["pass"] is True and data["seed"] == 5 and data["structure"] == "cpx:c=1i"


def test_check_convergence_and_limit(capsys):
    assert main(["check", "--suite", "convergence", "--struct", "real:r=-1"]) == 0
    assert main(["check", "--suite", "limit", "--struct", "rat:r=3",
                 "--sequence", "shifted_harmonic"]) == 0
    assert main(["check", "--suite", "convergence", "--struct", "real:r=2",
                 "--sequence", "linear", "--eps", "1"]) == 1


def test_compose(capsys):
    assert main(["compose", "rat:r=3/2", "rat:r=2/3"]) == 0
    assert capsys.readouterr().out.strip() == "rat:r=1"
    assert main(["compose", "cpx:c=1i", "cpx:c=1i"]) == 0
    assert capsys.readouterr().out.strip() == "cpx:c=-1"


def test_gauge_json(capsys):
    assert main(["gauge", "--potential", "const:0", "--field", "exp"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["max_abs_Df_minus_df"] == 0
    assert main(["gauge", "--field", "transport"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["max_abs_Df"] < 1e-12


def test_wyz_exit_codes(capsys):
    assert main(["wyz", "--w", "2", "--y", "2", "--z", "2", "--samples", "30"]) == 0
    assert main(["wyz", "--w", "2", "--y", "3", "--z", "2", "--samples", "30"]) == 1
    assert "witness: x/y" in capsys.readouterr().out


def test_seed_from_environment():
    args = ["check", "--suite", "field", "--struct", "rat:r=2", "--samples", "20", "--json"]
    a = run_cli(args, {"SCALEREP_SEED": "17"})
    assert a.returncode == 0
    assert json.loads(a.stdout)["seed"] == 17
    bad = run_cli(args, {"SCALEREP_SEED": "x"})
    assert bad.returncode == 2


def test_byte_determinism():
    args = ["wyz", "--w", "3", "--y", "1", "--z", "3", "--samples", "50", "--seed", "8", "--json"]
    a, b = run_cli(args), run_cli(args)
    assert a.returncode == b.returncode == 1
    assert a.stdout == b.stdout
