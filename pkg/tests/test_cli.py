import io
import subprocess
import sys

import pytest

from gitloci import Polytope
from gitloci.cli import ENDOMORPHISM, RAW_CONFIG, parse_problem_file, run_command

HESSE = """# quartic Hesse-type map
2 4
0 : 4 0 0 : 1
0 : 2 1 1 : {a}
1 : 0 4 0 : 1
1 : 1 2 1 : {a}
2 : 0 0 4 : 1
2 : 1 1 2 : {a}
"""


@pytest.fixture
def files(tmp_path):
    paths = {
        "phi_alpha": HESSE.format(a="t^(-3)"),
        "phi_stable": HESSE.format(a="1 + t"),
        "x2y2": "1 2\n0 : 2 0 : 1\n1 : 0 2 : 1\n",
        "tx2y2": "1 2\n0 : 2 0 : t\n1 : 0 2 : 1\n",
        "raw": "rank 2\n-3 -3 : 0\n3 0 : 0\n0 3 : 0\n0 0 : -3\n",
        "offside": "rank 1\n1 : 0\n2 : 1\n",
        "decimal": "rank 1\n0 : 0.5\n",
        "group": "t, 0\n0, t^(-1)\n",
    }
    out = {}
    for name, text in paths.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run_command(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def test_min_locus_triangle(files):
    status, out, _ = run("min-locus", "--input", files["phi_alpha"])
    assert status == 0
    assert out.splitlines()[-4:] == ["vertices 3", "  (-1, -1)", "  (-1, 2)", "  (2, -1)"]
    assert Polytope.from_text(out).same_set(Polytope(2, [((-1, 0), 1), ((0, -1), 1), ((1, 1), 1)]))


def test_raw_config_is_normalized_first(files):
    assert run("min-locus", "--input", files["raw"])[1] == run("min-locus", "--input", files["phi_alpha"])[1]


def test_min_value_and_classify(files):
    assert run("min-value", "--input", files["phi_alpha"])[1] == "0\n"
    assert run("min-value", "--input", files["tx2y2"])[1] == "-1/2\n"
    assert run("min-value", "--input", files["offside"])[1] == "unbounded below\n"
    assert run("classify", "--input", files["phi_alpha"])[1] == "semistable_not_stable\n"
    assert run("classify", "--input", files["phi_stable"])[1] == "stable\n"
    assert run("classify", "--input", files["tx2y2"])[1] == "unstable\n"
    assert run("classify", "--input", files["tx2y2"], "--at", "1/2")[1] == "stable\n"


def test_dims():
    assert run("dims", "--n", "2", "--d", "4") == (0, "45\n", "")


def test_delta_profile(files):
    status, out, _ = run("delta-profile", "--input", files["x2y2"], "--ray", "1", "--from", "-2", "--to", "2", "--step", "1/2")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "# s\tdelta"
    assert [ln.split("\t")[1] for ln in lines[1:]] == ["2", "3/2", "1", "1/2", "0", "1/2", "1", "3/2", "2"]


def test_ord_res_and_mrl(files):
    assert run("ord-res", "--input", files["x2y2"], "--group", files["group"])[1] == "4\n"
    assert run("ord-res", "--input", files["x2y2"], "--torus", "-1")[1] == "4\n"
    assert run("ord-res", "--input", files["tx2y2"])[1] == "2\n"
    assert run("mrl", "--input", files["tx2y2"])[1].splitlines()[-1] == "  (1/2)"


def test_hesse_flag():
    assert run("hesse", "--alpha", "t^(-3)")[1].splitlines()[0] == "semistable_not_stable"
    assert run("hesse", "--alpha", "1+t")[1].splitlines()[0] == "stable"
    assert run("hesse", "--alpha", "-1")[1].splitlines()[0] == "uncertified"


def test_parse_problem_file(files):
    assert parse_problem_file(files["raw"]).kind == RAW_CONFIG
    pf = parse_problem_file(files["x2y2"])
    assert pf.kind == ENDOMORPHISM and pf.endomorphism.d == 2


# -- exit status taxonomy -----------------------------------------------


def test_unknown_command_is_status_2():
    assert run("frobnicate")[0] == 2
    assert run("dims", "--n", "x", "--d", "1")[0] == 2


def test_parse_failures_are_status_3(files, tmp_path):
    status, _, err = run("min-locus", "--input", files["decimal"])
    assert status == 3 and "decimal" in err and "line 2" in err
    assert run("min-locus", "--input", str(tmp_path / "missing.cfg"))[0] == 3
    assert run("hesse", "--alpha", "t +")[0] == 3


def test_precondition_failures_are_status_4(files):
    status, _, err = run("min-locus", "--input", files["offside"])
    assert status == 4 and "outside the weight hull" in err
    assert run("mrl", "--input", files["phi_alpha"])[0] == 4  # P^2: no resultant
    assert run("ord-res", "--input", files["raw"])[0] == 4
    assert run("delta-profile", "--input", files["x2y2"], "--ray", "1,1", "--from", "0", "--to", "1", "--step", "1")[0] == 4


# -- determinism and end-to-end equivalence -------------------------------------------------


def test_outputs_are_byte_identical_across_runs_and_jobs(files):
    argv = ["delta-profile", "--input", files["phi_alpha"], "--ray", "1,-1/3", "--from", "-3", "--to", "3", "--step", "1/4"]
    serial = run(*argv)
    assert run(*argv) == serial
    assert run(*argv, "--jobs", "3") == serial
    assert run("min-locus", "--input", files["phi_alpha"]) == run("min-locus", "--input", files["phi_alpha"])


@pytest.mark.parametrize("name", ["phi_alpha", "phi_stable", "x2y2", "tx2y2", "raw"])
def test_zero_in_locus_iff_semistable(files, name):
    locus = Polytope.from_text(run("min-locus", "--input", files[name])[1])
    verdict = run("classify", "--input", files[name])[1].strip()
    assert ((0,) * locus.dim in locus) == (verdict != "unstable")


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "gitloci.cli", "dims", "--n", "1", "--d", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "6\n"
