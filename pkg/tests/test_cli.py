import json
import subprocess
import sys

from darbouxkit.cli import run_cli

from helpers import stage


def run(capsys, *argv):
    code = run_cli(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_construction_writes_report(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "verify-construction", "9.6", "--no-focal", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["status"] == "pass"
    deg = next(c for c in data["checks"] if c["name"] == "deg_X")
    assert deg["computed"] == 20
    assert "overall: pass" in out


def test_tjurina_of_cusp(capsys):
    code, out, _ = run(capsys, "tjurina", "--poly", "x^2-y^3", "--point", "0,0")
    assert (code, out.strip()) == (0, "2")


def test_non_square_free_is_inconclusive(capsys):
    code, _, err = run(capsys, "degx", "--curve", "(x^2+y^2-1)^2")
    assert code == 3 and "NotFinite" in err


def test_syntax_error_is_usage_error(capsys):
    code, _, err = run(capsys, "tjurina", "--poly", "x^^2")
    assert code == 2 and "error" in err


def test_missing_subcommand(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_tz_and_eta(capsys):
    assert run(capsys, "tz", "--germ", "x^3-y^3")[1].strip() == "6"
    assert run(capsys, "eta", "--type", "E8")[1].strip() == "15:8"
    code, out, _ = run(capsys, "eta", "--type", "cusp", "--quiet")
    assert (code, out) == (0, "")


def test_cofactor_and_kernel(capsys):
    code, out, _ = run(capsys, "cofactor", "--P=-2*y", "--Q", "x", "--curve", "y-x^2")
    assert (code, out.strip()) == (0, "2")
    code, out, _ = run(capsys, "kernel", "--curve", "x^2+y^2-1", "--degree", "1")
    assert code == 0 and "dim V = " in out


def test_not_integral_fails(capsys):
    code, _, err = run(capsys, "cofactor", "--P=-y", "--Q", "x", "--curve", "x^2+y^2-1")
    assert code == 1 and "NotIntegralCurve" in err


def test_certify_three_curves(capsys):
    cfg, st = stage("9.8")
    args = ["certify", f"--P={st['form']['P']}", f"--Q={st['form']['Q']}"]
    for name in cfg.curves:
        args += ["--curve", str(cfg.curves[name])]
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert out.strip() == "IntegratingFactor: (4, 5 | -6)"


def test_focal_over_prime_field(capsys):
    code, out, _ = run(capsys, "focal", "--field", "GF(10007)", "--P", "x+x^2*y", "--Q", "y", "--point", "0,0", "--order", "3")
    assert code == 1 and "nonzero" in out
    code, out, _ = run(capsys, "focal", "--field", "GF(10007)", "--P", "x+x^3", "--Q", "y+y^3", "--point", "0,0")
    assert code == 0


def test_list_constructions(capsys, tmp_path):
    code, out, _ = run(capsys, "list-constructions", "--json", str(tmp_path / "l.json"))
    assert code == 0 and "(CD_28)" in out
    assert len(json.loads((tmp_path / "l.json").read_text())["fixtures"]) == 6


def test_analyze_config(capsys, tmp_path):
    cfg = {
        "field": "Q",
        "degree": 2,
        "curves": {"C": "y-x^2"},
        "form": {"P": "-2*y", "Q": "x"},
        "checks": ["integral", "square_free", "certificate"],
    }
    path = tmp_path / "job.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "analyze", str(path))
    assert code == 0 and "overall: pass" in out
    cfg["colour"] = "red"
    path.write_text(json.dumps(cfg))
    assert run(capsys, "analyze", str(path))[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "darbouxkit", "tjurina", "--poly", "x^3-y^4"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "6"
