from pathlib import Path

import pytest

from epcs.cli import main

FAST_CFG = """
[model cnrp2]
g = 0.86

[grid]
ndim = 1
nx = 41
cavsize_x = 100.0

[pump]
F_p = 0.5

[init]
kind = gaussian

[run]
h = 0.001
t_end = 0.01
snapshot_every = 5
"""


@pytest.fixture
def fast_cfg(tmp_path):
    path = tmp_path / "fast.cfg"
    path.write_text(FAST_CFG)
    return path


def test_cfl_check_stock_preset(capsys):
    assert main(["cfl-check", "--preset", "table2"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    ratio = float(out.split()[0])
    assert abs(ratio - 0.0232) < 2e-5


def test_cfl_check_2d_preset(capsys):
    assert main(["cfl-check", "--preset", "table1_2d"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert abs(float(out.split()[0]) - 0.3117) < 1e-4


def test_run_missing_config_exits_2(capsys):
    assert main(["run", "--config", "missing.cfg"]) == 2
    assert "not found" in capsys.readouterr().err


def test_run_requires_exactly_one_source(capsys):
    assert main(["run"]) == 1
    assert main(["run", "--config", "a.cfg", "--preset", "table2"]) == 1


def test_run_writes_snapshots_and_diagnostics(fast_cfg, tmp_path, capsys):
    out_dir = tmp_path / "out"
    assert main(["run", "--config", str(fast_cfg), "--out", str(out_dir)]) == 0
    snaps = sorted(out_dir.glob("*.epcs"))
    assert [p.name for p in snaps] == ["snap_00000000.epcs", "snap_00000005.epcs", "snap_00000010.epcs"]
    text = (out_dir / "diagnostics.txt").read_text()
    assert text.startswith("model: cnrp2")
    assert "peak_density_psi:" in text


def test_run_determinism_identical_bytes(fast_cfg, tmp_path):
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert main(["run", "--config", str(fast_cfg), "--out", str(out1)]) == 0
    assert main(["run", "--config", str(fast_cfg), "--out", str(out2)]) == 0
    for p1 in sorted(out1.iterdir()):
        assert p1.read_bytes() == (out2 / p1.name).read_bytes()


def test_epcs_out_env_var(fast_cfg, tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("EPCS_OUT", str(tmp_path / "root"))
    assert main(["run", "--config", str(fast_cfg)]) == 0
    assert (tmp_path / "root" / "fast_out" / "diagnostics.txt").exists()


def test_cfl_policy_override(fast_cfg, tmp_path):
    bad = fast_cfg.read_text().replace("h = 0.001", "h = 10.0")
    bad_path = tmp_path / "bad.cfg"
    bad_path.write_text(bad)
    assert main(["run", "--config", str(bad_path), "--out", str(tmp_path / "x")]) == 1
    with pytest.warns(UserWarning):
        code = main(["run", "--config", str(bad_path), "--out", str(tmp_path / "y"),
                     "--policy", "warn"])
    assert code in (0, 1)  # unstable step may blow up; it must not crash


def test_sweep_directories_and_summary(fast_cfg, tmp_path, capsys):
    root = tmp_path / "sweep"
    assert main(["sweep", "--param", "g_ratio", "--values", "1.132,10,100",
                 "--config", str(fast_cfg), "--out", str(root)]) == 0
    for v in ("1.132", "10", "100"):
        assert (root / f"g_ratio_{v}" / "diagnostics.txt").exists()
    summary = (root / "sweep_summary.csv").read_text().splitlines()
    assert summary[0] == "g_ratio,peak_density,peak_number,onset_ps"
    assert len(summary) == 4


def test_export_csv(fast_cfg, tmp_path):
    out_dir = tmp_path / "out"
    main(["run", "--config", str(fast_cfg), "--out", str(out_dir)])
    csv_dir = tmp_path / "csv"
    assert main(["export-csv", "--in", str(out_dir), "--out", str(csv_dir)]) == 0
    files = sorted(csv_dir.glob("*.csv"))
    assert len(files) == 3
    lines = files[0].read_text().splitlines()
    assert lines[0] == "x,re,im"
    assert len(lines) == 42
    cols = lines[1].split(",")
    assert float(cols[0]) == -50.0


def test_export_csv_missing_source(tmp_path, capsys):
    assert main(["export-csv", "--in", str(tmp_path / "nope"), "--out", str(tmp_path)]) == 2


def test_diag_recomputes_from_directory(fast_cfg, tmp_path, capsys):
    out_dir = tmp_path / "out"
    main(["run", "--config", str(fast_cfg), "--out", str(out_dir)])
    capsys.readouterr()
    assert main(["diag", "--in", str(out_dir), "--out", str(tmp_path / "d.txt")]) == 0
    out = capsys.readouterr().out
    assert "peak_density_psi:" in out
    assert (tmp_path / "d.txt").read_text().rstrip("\n") == out.rstrip("\n")
    assert main(["diag", "--in", str(tmp_path / "missing")]) == 2
