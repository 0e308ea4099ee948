import gzip
import hashlib
from fractions import Fraction as F

import pytest

from conftest import DATA
from oracles import classify_oracle
from ifsproduct.numerics import Interval
from ifsproduct.scan import ScanConfig, axis_points, load_config, render, scan, to_csv, to_svg


def test_axis_points_are_interior():
    assert axis_points(Interval(F(0), F(1)), F(1, 4)) == [F(1, 4), F(1, 2), F(3, 4)]
    assert axis_points(Interval(F(9, 10), F(19, 20)), F(1, 200))[0] == F(181, 200)


def test_step_tenth_matches_golden():
    rows = scan(ScanConfig())
    assert len(rows) == 81
    assert to_csv(rows) == (DATA / "scan_step_1_10.csv").read_text()
    for lam, c, label in rows:
        assert classify_oracle(lam, c) == label.value


def test_step_200th_matches_golden():
    text = render(ScanConfig(grid_step=F(1, 200)))
    assert text == gzip.decompress((DATA / "scan_step_1_200.csv.gz").read_bytes()).decode()
    digest = (DATA / "scan_step_1_200.sha256").read_text().split()[0]
    assert hashlib.sha256(text.encode()).hexdigest() == digest


def test_parallel_scan_is_identical():
    cfg = ScanConfig(grid_step=F(1, 40))
    assert scan(cfg, workers=2) == scan(cfg)


def test_empty_strip_is_all_invalid():
    rows = scan(ScanConfig(grid_step=F(1, 200), lambda_range=Interval(F(9, 10), F(19, 20))))
    assert rows and all(label.value == "invalid" for *_, label in rows)


def test_svg_is_deterministic_and_complete():
    cfg = ScanConfig(grid_step=F(1, 20), output_format="svg")
    a, b = render(cfg), render(cfg)
    assert a == b
    assert a.count("<rect") == 19 * 19 + 1
    for colour in ("#8b5a2b", "#9e9e9e", "#ff9800", "#2f6fdf"):
        assert colour in render(ScanConfig(grid_step=F(1, 100), output_format="svg"))


def test_svg_orientation():
    cfg = ScanConfig(grid_step=F(1, 2))
    svg = to_svg(scan(cfg), cfg, size=100)
    # the single cell at (1/2, 1/2) is centred
    assert '<rect x="25" y="25" width="50" height="50"' in svg


def test_config_file(tmp_path):
    path = tmp_path / "scan.cfg"
    path.write_text("# comment\ngrid_step = 1/50\nlambda_range = 0.2, 0.5\nc_range=0,1\ndepth_audit=3\noutput_format=svg\n")
    cfg = load_config(path)
    assert cfg == ScanConfig(F(1, 50), Interval(F(1, 5), F(1, 2)), Interval(F(0), F(1)), 3, "svg")


@pytest.mark.parametrize(
    "text",
    ["grid_step=0\n", "lambda_range=0,2\n", "output_format=png\n", "colour=red\n", "depth_audit=-1\n"],
)
def test_bad_config(tmp_path, text):
    path = tmp_path / "bad.cfg"
    path.write_text(text)
    with pytest.raises(ValueError):
        load_config(path)


def test_depth_audit_runs_verdicts():
    rows = scan(ScanConfig(grid_step=F(1, 20), depth_audit=3))
    assert any(label.colored for *_, label in rows)
