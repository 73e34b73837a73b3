import csv
import io
import json
import subprocess
import sys

import pytest

from mayernicf.cli import SCAN_HEADER, main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex():
    assert parse_complex("0.5+9.5i") == 0.5 + 9.5j
    assert parse_complex("9.5i") == 9.5j and parse_complex("1") == 1
    assert parse_complex("0.5-3j") == 0.5 - 3j


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--t-min", "9.5", "--t-max", "9.6", "--steps", "2", "--N", "16")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == SCAN_HEADER and len(rows) == 3
    assert all(float(v) >= 0 for v in rows[1][1:])


def test_scan_channel_selection(capsys):
    code, out, _ = run(capsys, "scan", "--t-min", "1", "--t-max", "2", "--steps", "1", "--N", "12",
                       "--operator", "nicf")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[1][1] != "" and rows[1][2] == rows[1][3] == ""


def test_scan_empty_range_prints_header_only(capsys):
    code, out, _ = run(capsys, "scan", "--t-min", "2", "--t-max", "1")
    assert code == 0 and out.strip() == ",".join(SCAN_HEADER)
    code, out, _ = run(capsys, "scan", "--t-min", "1", "--t-max", "2", "--steps", "0")
    assert code == 0 and out.strip() == ",".join(SCAN_HEADER)


def test_scan_json(capsys):
    code, out, _ = run(capsys, "scan", "--t-min", "1", "--t-max", "2", "--steps", "2", "--N", "12",
                       "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["columns"] == list(SCAN_HEADER) and len(d["rows"]) == 2


@pytest.mark.parametrize("argv", [
    ["scan", "--N", "4"],
    ["frobnicate"],
    ["find-zero"],
    ["find-zero", "--t-min", "3", "--t-max", "2"],
    ["eigs"],
    ["verify", "nonsense"],
    ["eigs", "--s", "abc"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_digits(capsys):
    code, out, _ = run(capsys, "digits", "--x", "3/7", "--k", "5")
    d = json.loads(out)
    assert code == 0 and d["digits"] == [-2, 3] and d["terminated"]
    assert d["reconstruction"] == pytest.approx(3 / 7)


def test_digits_fixed_point(capsys):
    code, out, _ = run(capsys, "digits", "--x", "-0.3819660112501051", "--k", "6")
    assert json.loads(out)["digits"] == [3] * 6


def test_eigs_at_one(capsys):
    code, out, _ = run(capsys, "eigs", "--s", "1", "--operator", "mayer", "--N", "24", "--k", "2")
    lam = json.loads(out)["eigenvalues"]["mayer"]
    assert code == 0 and lam[0] == pytest.approx([1.0, 0.0], abs=1e-10)
    assert lam[1][0] == pytest.approx(-0.30366300289873, abs=1e-10)


def test_find_zero_without_zero_exits_one(capsys):
    code, _, err = run(capsys, "find-zero", "--t-min", "10", "--t-max", "11", "--N", "24")
    assert code == 1 and err


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"t_min": 1.0, "t_max": 2.0, "steps": 3, "N": 12, "operator": "nicf"}))
    code, out, _ = run(capsys, "scan", "--config", str(cfg), "--steps", "2")
    assert code == 0 and len(out.strip().splitlines()) == 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"colour": 1}))
    assert run(capsys, "scan", "--config", str(bad))[0] == 2


def test_output_file(tmp_path, capsys):
    path = tmp_path / "scan.csv"
    code, out, _ = run(capsys, "scan", "--t-min", "1", "--t-max", "2", "--steps", "1", "--N", "12",
                       "--out", str(path))
    assert code == 0 and out == "" and path.read_text().startswith(",".join(SCAN_HEADER))


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities")
    assert code == 0 and out.strip() and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "identities", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mayernicf", "digits", "--x", "0.3", "--k", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and len(json.loads(res.stdout)["digits"]) == 3
