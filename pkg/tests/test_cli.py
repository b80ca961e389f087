import io
import json
import subprocess
import sys

import pytest

from ppp import cli


def test_series_catalan():
    code, out = cli.run(["series", "--which", "catalan", "--order", "6"])
    assert code == 0
    assert json.loads(out)["coeffs"] == ["1", "1", "2", "5", "14", "42", "132"]


def test_global_flags_before_subcommand():
    assert cli.run(["--order", "6", "series", "--which", "catalan"]) == cli.run(
        ["series", "--which", "catalan", "--order", "6"]
    )


@pytest.mark.parametrize("which", ["G", "S", "Q", "M", "P1"])
def test_series_others(which):
    code, out = cli.run(["series", "--which", which, "--order", "5"])
    assert code == 0 and json.loads(out)["order"] == 5


def test_oeis():
    code, out = cli.run(["oeis", "--check", "A008549", "--terms", "6"])
    payload = json.loads(out)
    assert code == 0
    assert payload["pipeline"] == payload["reference"] == [1, 6, 29, 130, 562, 2380]


def test_verify_small():
    code, out = cli.run(["verify", "--suite", "all", "--max-sp", "5", "--max-thickness", "2", "--order", "6"])
    assert code == 0 and json.loads(out)["passed"]


def test_verify_fails_under_literal_conventions():
    argv = ["verify", "--suite", "invariants", "--max-sp", "4", "--max-thickness", "1"]
    code, out = cli.run(argv + ["--conventions", "seam=above_top,height=geq_mark,degeneracy=rect_top"])
    assert code == 1 and not json.loads(out)["passed"]


def test_enumerate_formats():
    _, csv_out = cli.run(["enumerate", "--max-sp", "3", "--max-thickness", "1", "--format", "csv"])
    assert csv_out.splitlines()[0] == "width,height,thickness,count"
    _, text = cli.run(["enumerate", "--max-sp", "3", "--max-thickness", "1", "--format", "text"])
    assert all(line.startswith("PPP1:") for line in text.splitlines())


def test_render_from_input_and_stdin(monkeypatch):
    assert cli.run(["render", "--input", "PPP1:1..2;m=1"]) == (0, "#\n@")
    monkeypatch.setattr(sys, "stdin", io.StringIO("PPP1:1..1;m=1\n"))
    assert cli.run(["render"]) == (0, "@")


def test_render_bad_input_is_usage_error(capsys):
    assert cli.main(["render", "--input", "garbage"]) == 2
    assert "ParseError" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["series"], ["series", "--which", "X"], ["verify", "--conventions", "seam=up"]],
)
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2
    assert capsys.readouterr().err


def test_output_is_deterministic():
    argv = ["enumerate", "--max-sp", "5", "--max-thickness", "2"]
    assert cli.run(argv) == cli.run(argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ppp.cli", "series", "--which", "S", "--order", "4"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coeffs"] == ["0", "0", "1", "4", "15"]
