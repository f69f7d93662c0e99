import csv
import io
import json
import math
import subprocess
import sys

import pytest

from mathieu_refute.cli import run


def invoke(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def invoke_json(*argv):
    code, text = invoke(*argv, "--format", "json")
    assert code == 0, text
    return json.loads(text)


def test_constants_example():
    doc = invoke_json("constants", "--s-n", "8")
    assert doc["n"] == 8
    assert abs(doc["value"] - 2.1163) < 1e-4


def test_series_example():
    doc = invoke_json("series", "--beta", "0", "--alpha", "2", "--mu", "1", "--r", "1")
    assert abs(doc["value"] - (1 - math.pi / math.sinh(math.pi))) < 1e-12
    assert abs(doc["value"] - 0.727974) < 5e-6


def test_refute_example():
    doc = invoke_json("refute", "--m", "1", "--alpha", "2", "--mu", "6", "--r-min", "5", "--r-max", "50",
                      "--points", "16")
    assert doc["verdict"] == "ViolationFound"
    assert doc["threshold_r"] <= 20
    assert doc["limit_coeff"] == 15.5
    assert len(doc["rows"]) == 16


ROUND_TRIP = [
    (["poly", "--kind", "bernoulli", "--n", "10", "--x", "1/2"], {"kind": "bernoulli", "n": 10, "x": "1/2"}),
    (["series", "--beta", "1", "--alpha", "2", "--mu", "2", "--r", "1.5"], {"beta": 1.0, "alpha": 2.0, "mu": 2.0, "r": 1.5}),
    (["series", "--gamma", "1", "--alpha", "2", "--mu", "1", "--t", "20"], {"gamma": 1, "alpha": 2, "mu": 1.0, "t": 20.0}),
    (["asym", "--gamma", "9", "--alpha", "2", "--mu", "5", "--t", "30", "--terms", "3"],
     {"gamma": 9, "alpha": 2, "mu": 5.0, "t": 30.0, "terms": 3}),
    (["kernel", "--case", "2", "--mu", "1", "--u-max", "10"], {"case": 2, "mu": 1.0, "u_max": 10.0}),
    (["integral", "--case", "1", "--mu", "2", "--r", "1"], {"case": 1, "mu": 2.0, "r": 1.0}),
    (["refute", "--m", "1", "--r", "30"], {"m": 1, "r": 30.0}),
    (["refute", "--beta", "5", "--mu", "4", "--r-min", "5", "--r-max", "50", "--points", "4"],
     {"beta": 5.0, "mu": 4.0, "r_min": 5.0, "r_max": 50.0, "points": 4}),
    (["constants", "--terms", "5"], {"terms": 5}),
]


@pytest.mark.parametrize("argv, expected", ROUND_TRIP, ids=[a[0][0] for a in ROUND_TRIP])
def test_json_round_trip(argv, expected):
    doc = invoke_json(*argv)
    for key, value in expected.items():
        assert doc["params"][key] == value


@pytest.mark.parametrize("argv", [a for a, _ in ROUND_TRIP], ids=[a[0][0] for a in ROUND_TRIP])
@pytest.mark.parametrize("fmt", ["json", "csv", "table"])
def test_deterministic(argv, fmt):
    first = invoke(*argv, "--format", fmt)
    second = invoke(*argv, "--format", fmt)
    assert first == second and first[0] == 0


@pytest.mark.parametrize("argv", [a for a, _ in ROUND_TRIP], ids=[a[0][0] for a in ROUND_TRIP])
def test_csv_has_header(argv):
    code, text = invoke(*argv, "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and len(rows) >= 2
    assert all(not cell.replace(".", "").replace("-", "").isdigit() for cell in rows[0])
    assert all(len(row) == len(rows[0]) for row in rows)


def test_json_floats_seventeen_digits():
    _, text = invoke("constants", "--s-n", "8", "--format", "json")
    assert "2.1163708023917205" in text


def test_json_fractions_exact():
    doc = invoke_json("poly", "--kind", "bernoulli", "--n", "10")
    assert doc["value_at_zero"] == "5/66"


def test_csv_twelve_digits():
    _, text = invoke("constants", "--s-n", "8", "--format", "csv")
    assert text.splitlines()[1].split(",")[1] == "2.11637080239"


def test_kernel_csv_lists_sign_changes():
    _, text = invoke("kernel", "--case", "1", "--mu", "2", "--format", "csv")
    roots = [row for row in csv.reader(io.StringIO(text)) if row[0] == "sign_change"]
    assert len(roots) == 3
    assert abs(float(roots[0][1]) - 3.14159265359) < 1e-9


@pytest.mark.parametrize(
    "argv, code",
    [
        (["series", "--beta", "1", "--alpha", "2", "--mu", "1", "--r", "1"], 2),  # divergent
        (["refute", "--m", "0", "--r", "10"], 2),
        (["series", "--alpha", "-1", "--r", "1"], 2),
        (["poly", "--n", "99"], 2),
        (["bogus"], 2),
        (["series", "--beta", "0", "--alpha", "2", "--mu", "1", "--r", "x"], 2),
        (["series", "--beta", "9", "--alpha", "2", "--mu", "6", "--r", "1e6", "--tol", "1e-200"], 3),
        (["refute", "--m", "1", "--r-min", "1e6", "--r-max", "2e6", "--points", "2"], 3),
        (["kernel", "--case", "4", "--mu", "2"], 4),
        (["integral", "--case", "5", "--mu", "2", "--r", "1"], 4),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(argv, io.StringIO()) == code
    assert capsys.readouterr().err  # diagnostics go to stderr


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mathieu_refute", "constants", "--s-n", "8", "--format", "json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["n"] == 8
