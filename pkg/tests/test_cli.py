import json
import subprocess
import sys


def run(*args):
    return subprocess.run([sys.executable, "-m", "meandyn.cli", *args],
                          capture_output=True, text=True)


def test_folner_json():
    r = run("folner", "--family", "lamp-box", "--n", "2",
            "--list", "--defect", "s^1 t{}", "--bound", "s^1 t{}")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["cardinality"] == 3 * 2 ** 3
    assert len(out["elements"]) == 24
    assert out["defect"]["fraction"] == out["lamp_defect_bound"]["fraction"]


def test_avg_and_csv(tmp_path):
    csv = tmp_path / "out.csv"
    r = run("avg", "--system", "lamplighter-z", "--x", "up_0", "--y", "up_7",
            "--family", "z-shifted", "--window", "1", "30", "--csv", str(csv))
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert len(out["values"]) == 30
    assert csv.read_text().startswith("n,average,average_float")


def test_density_command():
    r = run("density", "--system", "two-point", "--pair=-3^1;-inf^1",
            "--center", "+inf^1;-inf^1", "--radius", "0.2",
            "--family", "z-initial", "--window", "1", "60")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["tail_max"]["float"] > 0.8


def test_measure_command():
    r = run("measure", "--system", "two-point", "--start", "0^1",
            "--family", "z-centered", "--n", "3")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert len(out["measure"]["atoms"]) == 7


def test_detect_registered_pair():
    r = run("detect", "--system", "two-point", "--pair", "+inf^1;-inf^1",
            "--relation", "qrms_f")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["certificates"]["qrms_f"]["verdict"] == "POSITIVE"


def test_detect_unregistered_pair_is_usage_error():
    r = run("detect", "--system", "two-point", "--pair", "0^1;1^1")
    assert r.returncode == 2
    assert "error" in r.stderr


def test_icer_command():
    r = run("icer", "--system", "three-glued")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert ["minf1", "pinf2"] in out["hull"]
    assert ["o1", "o2"] not in out["hull"]


def test_budget_exit_code():
    r = run("folner", "--family", "lamp-box", "--n", "40")
    assert r.returncode == 3
    assert "budget" in r.stderr


def test_reproduce_quick_and_determinism():
    r1 = run("reproduce", "--profile", "quick", "--format", "json")
    r2 = run("reproduce", "--profile", "quick", "--format", "json")
    assert r1.returncode == 0
    assert r1.stdout == r2.stdout
    out = json.loads(r1.stdout)
    assert out["overall"] == "MATCH"
    assert len(out["systems"]) == 5


def test_reproduce_single_system_table():
    r = run("reproduce", "--system", "literature-dock")
    assert r.returncode == 0
    assert r.stdout.strip().endswith("overall: MATCH")
