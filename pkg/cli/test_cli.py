"""
Tests for the system-file codec, settings, JSON reports and subcommand exit codes.
Run: pytest cli/test_cli.py -q
"""
import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from cli.commands import main
from cli.report import polynomial_model, rational_text
from cli.settings import load_settings
from cli.system_file import SystemFileError, emit_system_file, parse_system_file
from groebner import buchberger as buchberger_module
from groebner import ideals as ideals_module
from groebner.ideals import ideal_equal
from integral.first_integral import compute_saddle_quantities
from polyring.parser import parse_poly
from polyring.variables import VariableSet
from system.family import new_family

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
EX5 = str(DATA / "example5.sys")
REV5 = str(DATA / "rev_example5.sys")
RES23 = str(DATA / "resonance23.sys")


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


# ---- system files ----

def test_parse_symbolic_family():
    fam = parse_system_file("resonance 1 2\nterm 1 0\nterm 0 1\nterm 2 0\nterm 1 1\nterm 0 2")
    assert fam == new_family(1, 2, [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])
    assert fam.is_symbolic()
    assert fam.ring.names == ("a20", "a01", "a40", "a21", "a02", "b40", "b21", "b02", "b20", "b01")


def test_parse_numeric_family():
    fam = parse_system_file("# one term\nresonance 1 2\n\nterm 0 1 a=1 b=2  # reversible\n")
    assert fam.is_numeric()
    assert fam.a_values == (Fraction(1),)
    assert fam.b_values == (Fraction(2),)
    half = parse_system_file("resonance 2 3\nterm 1 1 a=-1/2")
    assert half.a_values == (Fraction(-1, 2),)
    assert half.b_values == (None,)


@pytest.mark.parametrize(
    "text,line",
    [
        ("resonance 2 4\nterm 1 0", 1),
        ("term 1 0\nresonance 1 2", 1),
        ("resonance 1 2\nterm 1 0\nterm 1 0", 3),
        ("resonance 1 2\nterm 1 x", 2),
        ("resonance 1 2\n\nterm 1 0 a=0.5", 3),
        ("resonance 1 2\nterm 1 0 c=1", 2),
        ("resonance 1 2\nfoo 1 0", 2),
        ("# nothing here\n", 1),
        ("resonance 1\n", 1),
    ],
)
def test_system_file_errors(text, line):
    with pytest.raises(SystemFileError) as info:
        parse_system_file(text)
    assert info.value.line == line
    assert isinstance(info.value, ValueError)


@pytest.mark.parametrize("path", [EX5, REV5, RES23])
def test_emit_round_trip(path):
    fam = parse_system_file(Path(path).read_text(encoding="utf-8"))
    assert parse_system_file(emit_system_file(fam)) == fam


# ---- settings and reports ----

def test_settings_from_env(monkeypatch):
    monkeypatch.setenv("PQSADDLE_LEVEL", "4")
    monkeypatch.setenv("PQSADDLE_PARAM_ORDER", "sorted")
    monkeypatch.setenv("PQSADDLE_GB_WORKERS", "")
    s = load_settings()
    assert s.level == 4 and s.param_order == "sorted" and s.gb_workers == 0
    monkeypatch.setenv("PQSADDLE_DEGREE", "twelve")
    with pytest.raises(ValueError):
        load_settings()


def test_polynomial_model():
    R = VariableSet(["a21", "b21"])
    model = polynomial_model(parse_poly("2*a21 - 1/3*b21", R))
    assert model.text == "2*a21 - 1/3*b21"
    assert [t.coefficient for t in model.terms] == ["2/1", "-1/3"]
    assert model.terms[0].powers == {"a21": 1}
    assert rational_text(Fraction(4, 6)) == "2/3"


# ---- subcommands ----

def test_sibirsky_command(capsys):
    code, out, err = _run(capsys, "sibirsky", EX5, "--level", "3")
    assert code == 0
    assert "2*a21 - b21" in out
    assert "[pqsaddle:sibirsky]" in err


def test_sibirsky_check_stable(capsys):
    code, out, _ = _run(capsys, "sibirsky", EX5, "--level", "3", "--check-stable")
    assert code == 0
    assert out[-1] == "stable: true"


def test_implicitize_against_sibirsky(capsys):
    code, out, _ = _run(capsys, "implicitize", EX5, "--check-against", "sibirsky", "--level", "3")
    assert code == 0
    assert out[-1] == "ideals equal: true"
    fam = parse_system_file(Path(EX5).read_text(encoding="utf-8"))
    gens = [parse_poly(line, fam.ring) for line in out[:-1]]
    published = [
        ln for ln in (DATA / "published_ideal5.txt").read_text(encoding="utf-8").splitlines()
        if ln.strip() and not ln.startswith(("#", "vars"))
    ]
    assert ideal_equal(gens, [parse_poly(s, fam.ring) for s in published])


def test_reversible_command(capsys):
    code, out, _ = _run(capsys, "reversible", REV5)
    assert (code, out) == (0, ["reversible: true"])
    code, out, _ = _run(capsys, "reversible", REV5, "--degree", "12")
    assert code == 0 and out[1].startswith("symmetric: true")
    code, out, _ = _run(capsys, "reversible", RES23)
    assert code == 1
    assert out[0] == "reversible: false"
    assert len(out) > 1


def test_reversible_symbolic_is_input_error(capsys):
    code, out, err = _run(capsys, "reversible", EX5)
    assert code == 2
    assert out == []
    assert "error" in err


def test_membership_command(capsys):
    code, out, _ = _run(capsys, "membership", EX5, "2*a21 - b21", "--level", "2")
    assert (code, out) == (0, ["member: true"])
    code, out, _ = _run(capsys, "membership", EX5, "a01", "--level", "2")
    assert (code, out) == (1, ["member: false"])
    code, _, err = _run(capsys, "membership", EX5, "2 a01")
    assert code == 2 and "error" in err


def test_quantities_command(capsys):
    code, out, _ = _run(capsys, "quantities", REV5, "--level", "3")
    assert code == 0
    assert out == ["g_1 = 0", "g_2 = 0", "g_3 = 0"]
    code, out, _ = _run(capsys, "quantities", EX5, "--level", "1")
    assert code == 0
    fam = parse_system_file(Path(EX5).read_text(encoding="utf-8"))
    g1 = parse_poly(out[0].split(" = ", 1)[1], fam.ring)
    assert g1 == compute_saddle_quantities(fam, 1).g[0]
    assert not g1.is_zero()


def test_integral_command(capsys):
    code, out, _ = _run(capsys, "integral", EX5, "--degree", "4")
    assert code == 0
    assert any(line.startswith("v(0,1) = ") for line in out)


def test_groebner_command(capsys):
    code, out, _ = _run(capsys, "groebner", str(DATA / "twisted_cubic.txt"), "--eliminate", "t")
    assert code == 0
    sub = VariableSet(["x", "y", "z"])
    expected = [parse_poly(s, sub) for s in ("x^2 - y", "x*y - z", "y^2 - x*z")]
    assert ideal_equal([parse_poly(line, sub) for line in out], expected)
    code, _, _ = _run(capsys, "groebner", str(DATA / "twisted_cubic.txt"), "--order", "bogus")
    assert code == 2


def test_groebner_without_vars_line(tmp_path, capsys):
    path = tmp_path / "ideal.txt"
    path.write_text("# x + y and x - y\nx + y\nx - y\n", encoding="utf-8")
    code, out, _ = _run(capsys, "groebner", str(path), "--order", "lex")
    assert code == 0
    assert sorted(out) == ["x", "y"]


def test_oracle_command(capsys):
    code, out, _ = _run(capsys, "oracle", RES23, "--degree", "10")
    assert (code, out) == (0, ["oracle agrees: true"])


def test_missing_file(capsys, tmp_path):
    code, out, err = _run(capsys, "sibirsky", str(tmp_path / "nope.sys"))
    assert code == 2 and out == [] and "error" in err


def test_bad_system_file(capsys, tmp_path):
    path = tmp_path / "bad.sys"
    path.write_text("resonance 2 4\nterm 1 0\n", encoding="utf-8")
    code, _, err = _run(capsys, "sibirsky", str(path))
    assert code == 2
    assert "line 1" in err


def test_json_report_is_stable(capsys, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["sibirsky", EX5, "--level", "2", "--json", str(first)]) == 0
    assert main(["sibirsky", EX5, "--level", "2", "--json", str(second)]) == 0
    capsys.readouterr()
    a = json.loads(first.read_text(encoding="utf-8"))
    b = json.loads(second.read_text(encoding="utf-8"))
    a.pop("millis"), b.pop("millis")
    assert a == b
    assert a["command"] == "sibirsky"
    assert a["family"]["p"] == 1 and a["family"]["q"] == 2
    assert len(a["family"]["terms"]) == 5
    fam = parse_system_file(Path(EX5).read_text(encoding="utf-8"))
    texts = [g["text"] for g in a["result"]["generators"]]
    assert "2*a21 - b21" in texts
    for g in a["result"]["generators"]:
        assert parse_poly(g["text"], fam.ring).to_text() == g["text"]
    third = tmp_path / "c.json"
    main(["sibirsky", EX5, "--level", "1", "--json", str(third)])
    capsys.readouterr()
    assert json.loads(third.read_text(encoding="utf-8"))["inputs_digest"] != a["inputs_digest"]



# ---- environment errors ----

def _subprocess_cli(env_extra, *argv):
    env = {**os.environ, "PYTHONPATH": str(ROOT), **env_extra}
    return subprocess.run(
        [sys.executable, str(ROOT / "pqsaddle.py"), *argv],
        cwd=ROOT, env=env, capture_output=True, text=True, timeout=300,
    )


def test_import_with_bad_env_values():
    env = {**os.environ, "PYTHONPATH": str(ROOT), "PQSADDLE_GB_WORKERS": "two", "PQSADDLE_INNER_ORDER": "bogus"}
    proc = subprocess.run([sys.executable, "-c", "import groebner.ideals"], cwd=ROOT, env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr


@pytest.mark.parametrize(
    "key,value,command",
    [
        ("PQSADDLE_GB_WORKERS", "two", "groebner"),
        ("PQSADDLE_INNER_ORDER", "bogus", "implicitize"),
        ("PQSADDLE_LEVEL", "three", "sibirsky"),
    ],
)
def test_bad_env_value_exits_2(tmp_path, key, value, command):
    if command == "groebner":
        argv = ["groebner", str(DATA / "twisted_cubic.txt"), "--eliminate", "t"]
    else:
        path = tmp_path / "single.sys"
        path.write_text("resonance 1 2\nterm 1 1\n", encoding="utf-8")
        argv = [command, str(path)]
    proc = _subprocess_cli({key: value}, *argv)
    assert proc.returncode == 2, proc.stderr
    assert "Traceback" not in proc.stderr
    assert f"[pqsaddle:{command}] error" in proc.stderr
    assert proc.stdout == ""


def test_bad_worker_count_in_process(monkeypatch):
    monkeypatch.setattr(buchberger_module, "_GB_WORKERS", "two")
    R = VariableSet(["x", "y"])
    with pytest.raises(ValueError):
        buchberger_module.buchberger([parse_poly("x - y", R)])
    monkeypatch.setattr(ideals_module, "_INNER_ORDER", "bogus")
    with pytest.raises(ValueError):
        ideals_module.eliminate([parse_poly("x - y", R)], ["x"])


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
