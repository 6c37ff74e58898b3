"""Smoke tests for the figure helpers: files exist and are nonempty."""

from fermipair import boundary_curves
from fermipair.figures import save_curve_figure, save_region_figure


def test_curve_figure_default_branches(tmp_path):
    target = tmp_path / "curves.svg"
    save_curve_figure(str(target))
    assert target.exists()
    assert target.stat().st_size > 1000


def test_curve_figure_with_explicit_branches(tmp_path):
    branches = boundary_curves("below", mu_range=(-8.0, 0.0), samples=41)
    target = tmp_path / "curves.png"
    save_curve_figure(str(target), branches=branches)
    assert target.stat().st_size > 1000


def test_region_figure(tmp_path):
    rows = [(-20.0, -8.0, "C30"), (0.0, 0.0, "C00"), (10.0, -4.0, "C11"),
            (20.0, 8.0, "C03"), (10.0, 0.0, "C01")]
    target = tmp_path / "regions.svg"
    save_region_figure(str(target), rows)
    assert target.stat().st_size > 1000
