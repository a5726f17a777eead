import contextlib
import io
import json
import math
import subprocess
import sys

import pytest

from graphmoments.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
    except SystemExit as exc:   # argparse usage failures
        code = exc.code
    return code, out.getvalue(), err.getvalue()


def test_analyze_generated_ring():
    code, out, _ = run_cli("analyze", "--generate", "ring:6")
    assert code == 0
    data = json.loads(out)
    assert data["moments"]["census"]["m"][4] == 6.0
    assert data["bounds"]["1"]["upper"] == pytest.approx(math.sqrt(2))
    assert data["spectrum"]["rho"] == pytest.approx(2.0)


def test_analyze_edge_list_file(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("# tiny path\n1 2\n2 3\n")
    code, out, _ = run_cli("analyze", str(path), "--index-base", "1", "--no-spectrum")
    assert code == 0
    data = json.loads(out)
    assert data["graph_meta"]["n"] == 3
    assert data["spectrum"] is None


def test_analyze_missing_file_exit_2():
    code, _, err = run_cli("analyze", "/no/such/file.txt")
    assert code == 2
    assert "file" in err.lower() or "directory" in err.lower()


def test_analyze_degenerate_exit_1():
    code, _, err = run_cli("bounds", "--generate", "path:1")
    assert code == 1
    assert "edgeless" in err


def test_unknown_command_exit_2():
    code, _, _ = run_cli("frobnicate")
    assert code == 2


def test_bounds_enron_from_moments_file(tmp_path):
    path = tmp_path / "enron.json"
    path.write_text(json.dumps(
        {"n": 3215, "m": [1, 0, 22.47, 394.7, 33491, 2603200], "source": "external"}))
    code, out, _ = run_cli("bounds", "--level", "2", "--moments-file", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["2"]["upper"] == pytest.approx(78.53, abs=0.05)
    assert data["2"]["lower"] <= 0.0


def test_bounds_bisect_flag_agrees():
    code, out, _ = run_cli("bounds", "--generate", "erdos_renyi:20:0.4",
                           "--seed", "5", "--level", "2")
    code2, out2, _ = run_cli("bounds", "--generate", "erdos_renyi:20:0.4",
                             "--seed", "5", "--level", "2", "--bisect")
    assert code == 0 and code2 == 0
    a, b = json.loads(out)["2"], json.loads(out2)["2"]
    assert a["upper"] == pytest.approx(b["upper"], abs=1e-5)
    assert a["method"] == "closed_form" and b["method"] == "bisection"


def test_census_csv():
    code, out, _ = run_cli("census", "--generate", "complete:4", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "node,d,t,q,p"
    assert lines[1] == "0,3,3,3,0"
    assert len(lines) == 5


def test_census_json_aggregates():
    code, out, _ = run_cli("census", "--generate", "complete:6")
    data = json.loads(out)
    assert data["aggregates"]["pentagons"] == 72


def test_moments_json_and_csv():
    code, out, _ = run_cli("moments", "--generate", "ring:6")
    data = json.loads(out)
    assert data["m"][4] == 6.0 and data["source"] == "census"
    code, out, _ = run_cli("moments", "--generate", "ring:6", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0].startswith("n,source,m0")


def test_estimate_json():
    code, out, _ = run_cli("estimate", "--generate", "complete:4")
    data = json.loads(out)
    assert data["edge_degree_bound"] == pytest.approx(3.0)
    assert data["chung_lu"] == pytest.approx(3.0)


def test_eigencount_single_interval():
    code, out, _ = run_cli("eigencount", "--generate", "complete:4",
                           "--interval", "2.5,3.5", "--omega=-1.5,3.5", "--k", "4")
    assert code == 0
    data = json.loads(out)
    assert data["bound"] >= 0.25 - 1e-9
    assert "window" in data["note"]


def test_eigencount_sweep_csv(tmp_path):
    path = tmp_path / "ex2.json"
    path.write_text(json.dumps({"n": 9, "m": [1, 0, 4 / 3, 0, 4, 0]}))
    code, out, _ = run_cli("eigencount", "--moments-file", str(path),
                           "--omega=-3,3", "--sweep=-5:1:3", "--k", "5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "alpha,bound,exact_cdf"
    assert len(lines) == 10
    rows = [line.split(",") for line in lines[1:]]
    assert float(rows[0][1]) == 0.0            # alpha below the window
    assert float(rows[-1][1]) == pytest.approx(1.0, abs=1e-6)


def test_eigencount_interval_outside_window():
    code, out, _ = run_cli("eigencount", "--generate", "ring:6",
                           "--interval", "5,6")
    assert code == 0
    assert json.loads(out)["bound"] == 0.0


def test_spectrum_histogram_csv():
    code, out, _ = run_cli("spectrum", "--generate", "ring:8",
                           "--bins", "5", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0] == "bin_lo,bin_hi,count"
    counts = [int(line.split(",")[2]) for line in lines[1:]]
    assert sum(counts) == 8


def test_spectrum_json():
    code, out, _ = run_cli("spectrum", "--generate", "star:5")
    data = json.loads(out)
    assert data["rho"] == pytest.approx(2.0)
    assert len(data["eigenvalues"]) == 5


def test_sample_ego_byte_identical():
    args = ("sample-ego", "--generate", "erdos_renyi:200:0.04",
            "--count", "5", "--radius", "2", "--seed", "11", "--format", "csv")
    code1, out1, _ = run_cli(*args)
    code2, out2, _ = run_cli(*args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.splitlines()[0].startswith("root,n,e,rho")


def test_report_roundtrip(tmp_path):
    code, out, _ = run_cli("analyze", "--generate", "complete:4")
    report_path = tmp_path / "k4.json"
    report_path.write_text(out)
    code, table, _ = run_cli("report", str(report_path))
    assert code == 0
    lines = table.strip().split("\n")
    assert len(lines) == 2
    assert ",4,6," in lines[1]


def test_module_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "graphmoments", "moments", "--generate", "ring:5"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["m"][2] == 2.0
