import io
import json

import pytest

from antisym_hardy.cli import run


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_constants_csv():
    code, text = invoke("constants", "--dmax", "3", "--format", "csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[1].startswith("2,1,5/8,8/13,2/13")
    assert lines[2].startswith("3,2,199/48,1176/295,294/295")


def test_constants_json():
    code, text = invoke("constants", "--dmax", "4", "--format", "json")
    rows = records(text)
    assert code == 0 and [r["d"] for r in rows] == ["2", "3", "4"]


def test_identities_subcommand():
    code, text = invoke("identities", "--d", "2", "--trials", "5", "--seed", "7")
    recs = records(text)
    assert code == 0 and len(recs) == 40
    assert all(r["status"] == "pass" for r in recs)


def test_lattice_subcommand():
    code, text = invoke("lattice", "--d", "2", "--R", "3", "--tol", "1e-10")
    (rec,) = records(text)
    assert code == 0 and rec["status"] == "pass"
    lam = float(rec["lhs"])
    assert 8 / 13 <= lam <= 4


def test_lattice_no_antisym():
    code, text = invoke("lattice", "--d", "2", "--R", "5", "--no-antisym")
    assert code == 0 and records(text)[0]["params"]["antisym"] == "false"


def test_torus_and_continuum():
    assert invoke("torus", "--d", "2", "--M", "64")[0] == 0
    assert invoke("continuum", "--d", "2", "--profile", "plateau", "--ratio", "1000")[0] == 0
    assert invoke("continuum", "--d", "3", "--profile", "gaussian")[0] == 0


def test_transform_subcommand():
    code, text = invoke("transform", "--d", "2", "--trials", "3", "--seed", "1")
    assert code == 0 and len(records(text)) == 6


def test_failure_gives_exit_one():
    # a quadrature tolerance no grid can meet
    code, text = invoke("torus", "--d", "2", "--M", "4", "--tol", "1e-14")
    assert code == 1
    assert any(r["status"] == "fail" for r in records(text))


@pytest.mark.parametrize("argv", [["bogus"], ["lattice", "--d", "2"], ["constants", "--dmax", "3", "--wat"]])
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        run(argv, io.StringIO())
    assert exc.value.code == 2


def test_determinism_and_digits():
    a = invoke("torus", "--d", "3", "--M", "16", "--seed", "4", "--digits", "6")[1]
    b = invoke("torus", "--d", "3", "--M", "16", "--seed", "4", "--digits", "6")[1]
    assert a == b
    rec = records(a)[1]
    assert len(rec["lhs"].replace(".", "").lstrip("0")) <= 6


def test_timing_flag_fills_runtime():
    text = invoke("identities", "--d", "3", "--trials", "2", "--timing")[1]
    assert all(isinstance(r["runtime_ms"], int) for r in records(text))


def test_all_quick():
    code, text = invoke("all", "--quick")
    assert code == 0
    assert len(records(text)) > 100
