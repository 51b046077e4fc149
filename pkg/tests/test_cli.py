import csv
import io
import json

import pytest

from zolopml.cli import main, run_selftest
from zolopml.pml_grid import read_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def echoed_config(err):
    line = next(l for l in err.splitlines() if l.startswith("# config: "))
    return json.loads(line[len("# config: "):])


def test_approx_rows(capsys):
    code, out, err = run(capsys, "approx", "--m-list", "6,18")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["m"], r["m1"], r["m2"]) for r in rows] == [("6", "3", "3"), ("18", "8", "10")]
    assert float(rows[1]["error"]) == pytest.approx(1.15e-3, rel=0.05)
    assert "rho=0.634" in err


@pytest.mark.parametrize("argv", [
    ["approx", "--m-list", ""],
    ["approx", "--m-list", "7"],
    ["approx", "--interval=-10,1,2,3", "--m-list", "6"],
    ["approx", "--kind", "discrete", "--m-list", "6"],
    ["grid", "--m-list", "6,8"],
    ["grid", "--interval", "x,y"],
    ["bogus"],
])
def test_invalid_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_grid_single_positive_interval(capsys):
    code, out, _ = run(capsys, "grid", "--interval", "1,1e4", "--m", "10")
    assert code == 0
    rows = [l.split(",") for l in out.splitlines() if l[:1].isdigit()]
    assert len(rows) == 5
    for _, hr, hi, pr, pi in rows:
        scale = max(abs(float(hr)), abs(float(pr)))
        assert float(hr) > 0 and float(pr) > 0
        assert abs(float(hi)) < 1e-12 * scale and abs(float(pi)) < 1e-12 * scale


def test_grid_with_split_override(capsys):
    code, out, _ = run(capsys, "grid", "--interval=-1e3,-1,1,1e4", "--m", "18", "--m1", "8")
    assert code == 0
    rows = [l.split(",") for l in out.splitlines() if l[:1].isdigit()]
    assert len(rows) == 9
    assert any(float(r[2]) != 0 for r in rows)


def test_grid_file_round_trip(tmp_path, capsys):
    out = tmp_path / "layer.grid"
    code, _, _ = run(capsys, "grid", "--m", "12", "--h", "0.001", "--ell", "4",
                     "--kind", "discrete", "--out", str(out))
    assert code == 0
    grid, meta = read_grid(out)
    assert grid.ell == 4 and meta["m"] == 12 and meta["kind"] == "discrete"
    points = (tmp_path / "layer.grid.points.csv").read_text().splitlines()
    assert points[0] == "kind,index,re,im"
    assert len(points) == 1 + 2 * grid.node_count


def test_config_reproduces_run(tmp_path, capsys):
    code, out1, err = run(capsys, "approx", "--m-list", "6,12", "--samples", "2000")
    assert code == 0
    cfg = echoed_config(err)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, out2, err2 = run(capsys, "approx", "--config", str(path))
    assert code == 0 and out1 == out2
    assert echoed_config(err2) == cfg


def test_config_flags_override_and_unknown_keys(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"m_list": [6, 12], "samples": 500}))
    code, out, err = run(capsys, "approx", "--config", str(path), "--m-list", "6")
    assert code == 0 and len(out.splitlines()) == 2
    assert echoed_config(err)["samples"] == 500
    path.write_text(json.dumps({"wavenumber": 3}))
    code, _, _ = run(capsys, "approx", "--config", str(path))
    assert code == 2


def test_selftest_deterministic(capsys):
    code, out1, _ = run(capsys, "selftest")
    assert code == 0 and out1.strip().endswith("overall: PASS")
    code, out2, _ = run(capsys, "selftest")
    assert out1 == out2


def test_selftest_detects_corruption(capsys):
    report, ok = run_selftest(0, corrupt="elliptic")
    assert not ok and "elliptic: FAIL" in report
    code, _, _ = run(capsys, "selftest", "--corrupt", "elliptic")
    assert code == 1


def test_quick_waveguide_outputs(tmp_path, capsys):
    code, out, err = run(capsys, "waveguide", "--quick", "--m-list", "8,12", "--out",
                         str(tmp_path), "--fields")
    assert code == 0
    assert out.splitlines()[0] == "m,err,fitted_rate,expected_rate"
    assert (tmp_path / "convergence.csv").read_text() == out
    assert json.loads((tmp_path / "config.json").read_text())["quick"] is True
    assert (tmp_path / "field_m12_outer.npz").exists()
    assert "fitted_rate=" in err


def test_quick_tensor_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "tensor", "--quick", "--m-list", "8,12", "--out", str(tmp_path))
    assert code == 0
    errs = [float(r["err"]) for r in csv.DictReader(io.StringIO(out))]
    assert errs[0] > errs[1]
    lines = (tmp_path / "intervals.csv").read_text().splitlines()
    assert lines[0] == "domain,edge,a1,b1,a2,b2,i0" and len(lines) == 9
    ev = (tmp_path / "layered_eigenvalues.csv").read_text().splitlines()
    assert ev[0] == "axis,re,im" and len(ev) > 100


def test_bad_step_for_experiment(capsys):
    code, _, _ = run(capsys, "waveguide", "--h", "0.3", "--m-list", "8")
    assert code == 2
