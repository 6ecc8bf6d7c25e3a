import io
import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from lcscheck.cli import run
from lcscheck.deffile import dump
from lcscheck.fixtures import FIXTURE_IDS, definition

GOLDEN = Path(__file__).parent / "golden"
LINE = re.compile(r'^CHECK (\S+) (PASS|FAIL|N/A) residual=(.*) ref="(.*)"$')


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def check_lines(text):
    return [LINE.match(l).groups() for l in text.splitlines() if l.startswith("CHECK ")]


@pytest.mark.parametrize(
    "argv, golden, code",
    [
        (("soliton", "--fixture", "lcs3-corrected-phi", "--lambda", "lambda"), "soliton-corrected-phi.txt", 1),
        (("all", "--fixture", "lcs3-corrected-phi"), "all-corrected-phi.txt", 1),
        (("axioms", "--fixture", "lcs3-paper-phi"), "axioms-paper-phi.txt", 1),
    ],
)
def test_golden_reports(argv, golden, code):
    got_code, out, err = cli(*argv)
    assert got_code == code and err == ""
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_soliton_residual_strings():
    code, out, _ = cli("soliton", "--fixture", "lcs3-corrected-phi", "--lambda", "lambda")
    assert code == 1
    assert "  (e1,e1): lambda - 7\n" in out
    assert "  (e3,e3): 6 - lambda\n" in out
    assert "NOTE admissible-lambda none\n" in out


def test_identities_pass():
    code, out, _ = cli("identities", "--fixture", "lcs3-corrected-phi")
    lines = check_lines(out)
    assert code == 0
    assert len(lines) == 7 and all(status == "PASS" for _, status, _, _ in lines)


def test_spacelike_xi_identities_are_not_applicable():
    code, out, _ = cli("identities", "--fixture", "lcs3-flat-negative")
    assert code == 0
    assert {s for _, s, _, _ in check_lines(out)} == {"N/A"}


@pytest.mark.parametrize(
    "argv",
    [
        ("axioms", "--fixture", "lcs3-degenerate-frame"),
        ("axioms", "--fixture", "no-such-fixture"),
        ("axioms", "--input", "/nonexistent/file.def"),
        ("soliton", "--fixture", "lcs3-corrected-phi", "--lambda", "2 +"),
        ("soliton", "--fixture", "lcs3-corrected-phi", "--lambda", "q"),
        ("bogus", "--fixture", "lcs3-corrected-phi"),
        ("axioms",),
    ],
)
def test_input_errors_exit_2(argv):
    code, out, err = cli(*argv)
    assert code == 2 and out == ""


def test_diagnostic_is_one_line():
    code, _, err = cli("axioms", "--fixture", "lcs3-degenerate-frame")
    assert code == 2
    assert err.count("\n") == 1 and err.startswith("lcscheck: error: frame is degenerate")


def test_parse_error_reports_line_and_column(tmp_path):
    bad = dump(definition("lcs3-corrected-phi")).replace("rho = 0", "rho = 0 $ 1")
    f = tmp_path / "bad.def"
    f.write_text(bad)
    code, out, err = cli("axioms", "--input", str(f))
    assert code == 2 and out == ""
    assert "line 18, column 9" in err and err.count("\n") == 1


def test_input_file_matches_fixture(tmp_path):
    f = tmp_path / "m.def"
    f.write_text(dump(definition("lcs3-corrected-phi")))
    assert cli("all", "--input", str(f))[1] == cli("all", "--fixture", "lcs3-corrected-phi")[1]


@pytest.mark.parametrize("command", ["axioms", "identities", "curvature", "soliton", "theorems"])
def test_text_and_json_agree(command):
    _, text, _ = cli(command, "--fixture", "lcs3-corrected-phi", "--lambda", "lambda")
    _, js, _ = cli(command, "--fixture", "lcs3-corrected-phi", "--lambda", "lambda", "--format", "json")
    from_text = [(i, s, r, ref) for i, s, r, ref in check_lines(text)]
    from_json = [(c["id"], c["status"], c["residual"], c["ref"]) for c in json.loads(js)["checks"]]
    assert from_text == from_json
    assert [c[0] for c in from_json] == sorted(c[0] for c in from_json)


def test_modes_and_sign_flag():
    _, raw, _ = cli("theorems", "--fixture", "lcs3-corrected-phi", "--mode", "raw")
    assert "thm.hyp." not in raw and "thm.raw.k1.r-dot-s PASS" in raw
    _, hyp, _ = cli("theorems", "--fixture", "lcs3-corrected-phi", "--mode", "hypothesis", "--classical-sign")
    assert "thm.raw." not in hyp and "NOTE derivation-sign classical" in hyp
    _, with_b, _ = cli("theorems", "--fixture", "lcs3-corrected-phi", "--b", "1", "--mode", "raw")
    assert "CHECK thm.raw.g1.collinear PASS" in with_b


def test_exit_zero_when_everything_passes():
    assert cli("curvature", "--fixture", "lcs3-corrected-phi")[0] == 0
    assert cli("soliton", "--fixture", "lcs3-flat-negative", "--lambda", "0")[0] == 0


def test_byte_identical_across_processes():
    argv = [sys.executable, "-m", "lcscheck", "all", "--fixture", "lcs3-corrected-phi", "--lambda", "lambda"]
    a = subprocess.run(argv, capture_output=True, env={"PYTHONHASHSEED": "1", "LC_ALL": "C"})
    b = subprocess.run(argv, capture_output=True, env={"PYTHONHASHSEED": "2"})
    assert a.returncode == b.returncode == 1
    assert a.stdout == b.stdout and a.stdout


@pytest.mark.parametrize("fid", [f for f in FIXTURE_IDS if f != "lcs3-degenerate-frame"])
def test_all_runs_on_every_loadable_fixture(fid):
    assert cli("all", "--fixture", fid)[0] in (0, 1)
