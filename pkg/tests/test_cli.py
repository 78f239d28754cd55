import json
import subprocess
import sys

import pytest

from cyclespec import cli
from cyclespec.characters import character
from cyclespec.lfn import l_direct



def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_well_known_sum(capsys):
    code, out, _ = run(capsys, "sum", "--kind", "cosecant", "--m", "5", "--r", "0", "--beta", "1/2", "--n", "1")
    assert code == 0
    doc = json.loads(out)
    row = doc["results"][0]
    assert row["value"]["exact"] == "5"
    assert row["direct"]["re"].startswith("5.000000000")
    assert row["ok"] is True
    assert doc["job"]["parameters"]["beta"] == "1/2"


def test_decimal_shift_is_echoed_exactly(capsys):
    code, out, _ = run(capsys, "sum", "--kind", "cosecant", "--m", "4", "--beta", "0.3", "--n", "2")
    assert code == 0
    assert json.loads(out)["job"]["parameters"]["beta"] == "3/10"


def test_lvalue_quadratic_mod_five(capsys):
    code, out, _ = run(capsys, "lvalue", "--m", "5", "--char", "2", "--n", "1")
    assert code == 0
    doc = json.loads(out)
    assert [r["route"] for r in doc["results"]] == ["direct", "gauss_recurrence", "polynomial"]
    # 8/sqrt(5) = 3.57770876399966351425...; a double rounds it to ...634
    assert doc["results"][0]["value"]["re"].startswith("3.577708763999663514")
    assert doc["summary"]["ok"] is True


def test_char_with_modulus_prefix(capsys):
    code, out, _ = run(capsys, "lvalue", "--char", "7:1", "--n", "2", "--family", "tilde", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# job ")
    assert lines[1].split(",")[:5] == ["family", "m", "char", "n", "route"]
    assert len(lines) == 4


def test_char_modulus_mismatch(capsys):
    code, _, err = run(capsys, "lvalue", "--m", "5", "--char", "7:1")
    assert code == 2 and "differs" in err


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["sum", "--kind", "cosecant", "--m", "5", "--beta", "1"], "beta not an integer"),
        (["sum", "--kind", "alternating_cosecant", "--m", "5", "--beta", "1/3"], "m even"),
        (["lvalue", "--m", "12", "--char", "4"], "index must be in 0..3"),
        (["heat", "--m", "1", "--t", "1"], "m must be an integer >= 2"),
        (["resolvent", "--m", "4", "--s", "1+2k"], "complex"),
    ],
)
def test_domain_violations_exit_2(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert fragment in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["sum", "--kind", "nope", "--m", "3"])
    assert exc.value.code == 2


def test_cross_check_failure_exits_3(capsys, monkeypatch):
    def broken(*args, **kwargs):
        from cyclespec.numeric import CrossCheckError

        raise CrossCheckError("polar part mismatch")

    monkeypatch.setattr(cli, "evaluate_sum", broken)
    code, _, err = run(capsys, "sum", "--kind", "cosecant", "--m", "5", "--beta", "1/2")
    assert code == 3 and "cross-check" in err


def test_disagreement_exits_3(capsys, monkeypatch):
    real = cli.evaluate_sum

    def skewed(spec, bits, method):
        res = real(spec, bits, method)
        return type(res)(res.spec, res.value + 1, None, res.method)

    monkeypatch.setattr(cli, "evaluate_sum", skewed)
    code, out, _ = run(capsys, "sum", "--kind", "cosecant", "--m", "5", "--beta", "1/2")
    assert code == 3
    assert json.loads(out)["results"][0]["ok"] is False


def test_json_round_trip(capsys):
    argv = ["heat", "--m", "6", "--beta", "3/10", "--x", "1", "--y", "4", "--t", "0.1"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    job, summary, rows = cli.parse_output(out)
    assert job == cli.job_from_args(cli.build_parser().parse_args(argv))
    assert cli.format_output(job, rows, summary) == out


def test_identical_jobs_give_identical_bytes(capsys):
    argv = ["series", "--kind", "secant_double", "--m", "7", "--r", "2", "--count", "3", "--format", "csv"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    assert "1,-5,23" not in first  # values are per row
    assert [line.split(",")[5] for line in first.splitlines()[2:]] == ["1", "-5", "23"]


def test_table_rows_are_ordered_with_workers(capsys):
    base = ["table", "--kind", "cosecant", "--m", "5", "--beta", "1/3", "--count", "2", "--format", "csv"]
    serial = run(capsys, *base)[1]
    parallel = run(capsys, *base, "--jobs", "2")[1]
    body = lambda text: text.splitlines()[1:]
    assert body(serial) == body(parallel)
    assert len(body(serial)) == 1 + 2 * sum(range(2, 6))


def test_text_format_and_out_file(capsys, tmp_path):
    target = tmp_path / "poles.txt"
    code, out, _ = run(capsys, "poles", "--m", "4", "--beta", "1/2", "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert "multiplicity=2" in text and "distinct: 2" in text


def test_resolvent_forms(capsys):
    code, out, _ = run(capsys, "resolvent", "--m", "5", "--beta", "1/3", "--r", "2", "--s", "1+2i")
    assert code == 0
    doc = json.loads(out)
    assert [r["form"] for r in doc["results"]] == ["spectral", "chebyshev", "hyperbolic"]
    # Re(s) <= 0 drops the hyperbolic form
    code, out, _ = run(capsys, "resolvent", "--m", "5", "--beta", "1/3", "--r", "2", "--s=-0.3+0.2i")
    assert [r["form"] for r in json.loads(out)["results"]] == ["spectral", "chebyshev"]


def test_precision_flag_changes_digits(capsys):
    short = json.loads(run(capsys, "lvalue", "--m", "5", "--char", "2", "--precision-bits", "64")[1])
    long = json.loads(run(capsys, "lvalue", "--m", "5", "--char", "2", "--precision-bits", "256")[1])
    assert len(long["results"][0]["value"]["re"]) > len(short["results"][0]["value"]["re"])
    ref = l_direct(5, character(5, 2), 1, 256).value.real
    assert long["results"][0]["value"]["re"] == cli.render_real(ref, 256)


def test_env_precision(capsys, monkeypatch):
    monkeypatch.setenv("CYCLESPEC_PRECISION_BITS", "96")
    doc = json.loads(run(capsys, "poles", "--m", "3")[1])
    assert doc["job"]["precision_bits"] == 96


def test_number_text():
    assert cli.number_text({"re": "1.5", "im": "-2", "exact": None}) == "1.5-2i"
    assert cli.number_text({"re": "1.5", "im": "2", "exact": None}) == "1.5+2i"
    assert cli.number_text({"re": "1.0", "im": "0", "exact": "3/4"}) == "3/4"


def test_verify_small_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "chebyshev")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"] == {"checked": 1, "unexpected": 0, "ok": True}


def test_verify_rejects_other_precision(capsys):
    code, _, err = run(capsys, "verify", "--suite", "chebyshev", "--precision-bits", "200")
    assert code == 2


@pytest.mark.slow
def test_verify_all_through_the_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclespec.cli", "verify", "--suite", "all", "--max-m", "12", "--format", "text"],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "status=xfail" in proc.stdout
    assert "status=FAIL" not in proc.stdout
