import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from hermite_lane_emden import cli
from hermite_lane_emden.problems import FIRST_ZEROS, problem_ids

SCHEMA = json.loads(cli.SCHEMA_PATH.read_text())


def run(capsys, *args):
    code = cli.main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_solve_published_grid(capsys):
    code, out, _ = run(capsys, "solve", "example1-m3", "--grid", "paper", "--format", "csv")
    table = rows(out)
    assert code == 0
    assert table[0] == ["x", "computed", "reference", "abs_error"]
    assert [float(r[0]) for r in table[1:]] == [0.0, 0.1, 0.5, 1.0, 5.0, 6.0, 6.8, 6.896]


def test_solve_example9_grid(capsys):
    code, out, _ = run(capsys, "solve", "example9")
    table = rows(out)[1:]
    assert code == 0 and len(table) == 14 and float(table[-1][0]) == 10.0


def test_short_expansion_is_less_accurate(capsys):
    _, coarse, _ = run(capsys, "solve", "example1-m3", "--N", "4")
    _, fine, _ = run(capsys, "solve", "example1-m3")
    err = lambda t: max(float(r[3]) for r in rows(t)[1:])
    assert err(coarse) > err(fine)


def test_custom_grid_and_default_grid(capsys):
    _, out, _ = run(capsys, "solve", "example1-m1", "--grid", "1/2, 1, 2")
    assert [float(r[0]) for r in rows(out)[1:]] == [0.5, 1.0, 2.0]
    _, out, _ = run(capsys, "solve", "example1-m0")
    assert [float(r[0]) for r in rows(out)[1:]] == list(cli.DEFAULT_GRID)


def test_csv_numbers_have_ten_digits(capsys):
    _, out, _ = run(capsys, "solve", "example1-m3")
    computed = rows(out)[4][1]
    assert computed == f"{float(computed):.10g}"
    assert len(computed.replace("0.", "", 1).lstrip("0")) <= 10


@pytest.mark.parametrize("name,count", [("example1-m2", 11), ("isothermal", 31), ("example1-m3", 21)])
def test_coeffs_rows(capsys, name, count):
    code, out, _ = run(capsys, "coeffs", name)
    table = rows(out)
    assert code == 0 and table[0] == ["i", "a_i", "abs_a_i"] and len(table) == count + 1
    assert all(float(r[2]) == abs(float(r[1])) for r in table[1:])


def test_zeros_default(capsys):
    code, out, _ = run(capsys, "zeros")
    table = rows(out)
    assert code == 0 and table[0] == ["m", "N", "k", "l", "zero"]
    got = [float(r[4]) for r in table[1:]]
    want = [z for *_, z in FIRST_ZEROS.values()]
    assert [float(r[0]) for r in table[1:]] == list(FIRST_ZEROS)
    for g, w in zip(got, want):
        assert abs(g - w) <= 1e-6


def test_zeros_exact_case(capsys):
    code, out, _ = run(capsys, "zeros", "--m", "1")
    assert code == 0 and abs(float(rows(out)[1][4]) - math.pi) <= 1e-6


def test_zeros_without_sign_change(capsys):
    code, out, err = run(capsys, "zeros", "--m", "5")
    assert code == cli.EXIT_NO_SIGN_CHANGE == 4
    assert out == ""
    record = json.loads(err)
    jsonschema.validate(record, SCHEMA)
    assert record["error"] == "NoSignChange"


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    table = rows(out)
    assert code == 0 and table[0] == ["id", "N", "k", "l", "description"]
    assert [r[0] for r in table[1:]] == problem_ids()


def test_no_convergence_exit_code(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# tight budget\nmax_iters = 2\n")
    code, out, err = run(capsys, "solve", "isothermal", "--config", str(cfg))
    assert code == cli.EXIT_NO_CONVERGENCE == 2 and out == ""
    record = json.loads(err)
    jsonschema.validate(record, SCHEMA)
    assert record["error"] == "NoConvergence" and len(record["trace"]) == 2


def test_singular_exit_code(capsys):
    code, _, err = run(capsys, "solve", "example5", "--N", "60", "--k", "20", "--l", "0.01")
    assert code == cli.EXIT_SINGULAR == 3
    jsonschema.validate(json.loads(err), SCHEMA)


@pytest.mark.parametrize("args", [
    ["solve", "nope"],
    ["solve", "example3", "--N", "0"],
    ["solve", "example3", "--grid", "2,1"],
    ["solve", "example3", "--grid=-1,2"],
    ["solve", "example3", "--sweep", "q=1,2"],
    ["solve", "example3", "--config", "/nonexistent/run.cfg"],
    ["solve", "example3", "--out", "/nonexistent/dir/out.csv"],
])
def test_input_errors(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == cli.EXIT_INPUT == 1
    record = json.loads(err)
    jsonschema.validate(record, SCHEMA)
    assert record["error"] == "InputError"


def test_io_error_names_path(capsys):
    _, _, err = run(capsys, "solve", "example3", "--out", "/nonexistent/dir/out.csv")
    assert "/nonexistent/dir/out.csv" in json.loads(err)["message"]


def test_usage_errors_do_not_use_code_two(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", "example3", "--k", "abc"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 1


def test_config_file_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("N = 6\nk = 1/2\n")
    _, out, _ = run(capsys, "coeffs", "example3", "--config", str(cfg), "--format", "json")
    doc = json.loads(out)
    assert doc["config"]["N"] == 6 and doc["config"]["k"] == 0.5 and doc["config"]["l"] == 2.0
    _, out, _ = run(capsys, "coeffs", "example3", "--config", str(cfg), "--N", "8",
                    "--format", "json")
    doc = json.loads(out)
    assert doc["config"]["N"] == 8 and doc["config"]["k"] == 0.5


def test_bad_config_line(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("N = 6\ncolour = blue\n")
    code, _, err = run(capsys, "solve", "example3", "--config", str(cfg))
    assert code == 1 and ":2:" in json.loads(err)["message"]


def test_sweep(capsys):
    code, out, _ = run(capsys, "solve", "example4", "--sweep", "N=5,10,15")
    table = rows(out)
    assert code == 0
    assert table[0] == ["N", "k", "l", "converged", "iterations", "residual_max", "max_abs_error"]
    assert [r[0] for r in table[1:]] == ["5", "10", "15"]
    errs = [float(r[6]) for r in table[1:]]
    assert errs[2] < errs[0]


def test_parallel_sweep_matches_serial(capsys):
    _, serial, _ = run(capsys, "solve", "example3", "--sweep", "k=1/2,1,2")
    _, parallel, _ = run(capsys, "solve", "example3", "--sweep", "k=1/2,1,2", "--workers", "2")
    assert serial == parallel


@pytest.mark.parametrize("args", [
    ["solve", "example5"],
    ["solve", "isothermal", "--grid", "0.3,0.5"],
    ["coeffs", "example3"],
    ["zeros", "--m", "2", "3"],
    ["list"],
    ["solve", "example4", "--sweep", "N=5,10"],
])
def test_json_validates(capsys, args):
    code, out, _ = run(capsys, *args, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert code == 0 and doc["status"] == "ok"
    assert all(list(r) == doc["columns"] for r in doc["rows"])


def test_json_nan_becomes_null(capsys):
    _, out, _ = run(capsys, "solve", "isothermal", "--grid", "0.3", "--format", "json")
    assert json.loads(out)["rows"][0]["reference"] is None


@pytest.mark.parametrize("args", [
    ["solve", "example1-m3"],
    ["coeffs", "isothermal"],
    ["zeros"],
    ["solve", "example6", "--format", "json"],
])
def test_output_files_byte_identical(tmp_path, args):
    blobs = []
    for i in range(2):
        path = tmp_path / f"out{i}"
        assert cli.main([*args, "--out", str(path)]) == 0
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1] and len(blobs[0]) > 0


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "hermite_lane_emden", "coeffs", "example1-m1.5"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and len(rows(res.stdout)) == 6


def test_parse_number():
    assert cli.parse_number("2/3") == pytest.approx(2 / 3)
    assert cli.parse_number(" 1e-3 ") == 1e-3
    with pytest.raises(cli.InputError):
        cli.parse_number("1/0")
