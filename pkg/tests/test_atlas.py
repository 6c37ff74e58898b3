"""Tests for the phase atlas: region classification and boundary curves."""

import math

import numpy as np
import pytest

from fermipair import (
    COMPONENT_PAIRS,
    CouplingPair,
    FermipairError,
    RegionLabel,
    boundary_curves,
    c_constant,
    classify,
    constants,
    expected_counts,
    phase_curve_lambda,
)

_PI = math.pi


class TestClassify:
    def test_anchor_tags(self, anchors):
        for tag, pair in anchors.items():
            label = classify(pair)
            assert label.tag == tag
            assert not label.on_boundary

    def test_anchor_counts(self, anchors):
        for tag, pair in anchors.items():
            label = classify(pair)
            minus, plus = int(tag[1]), int(tag[2])
            assert label.minus_component == minus
            assert label.plus_component == plus
            assert expected_counts(label) == (2 * minus, 2 * plus)
            assert label.expected_n_below == 2 * minus
            assert label.expected_n_above == 2 * plus

    def test_component_pairs_enumeration(self):
        assert len(COMPONENT_PAIRS) == 10
        assert set(COMPONENT_PAIRS) == {
            (0, 0), (1, 0), (2, 0), (3, 0), (2, 1),
            (1, 1), (0, 1), (0, 2), (1, 2), (0, 3),
        }

    def test_component_sign_consistency(self, rng):
        """Even component index on a side exactly when C on that side is positive."""
        checked = 0
        while checked < 40:
            lam = rng.uniform(-30.0, 30.0)
            mu = rng.uniform(-9.5, 9.5)
            pair = CouplingPair(lam, mu)
            label = classify(pair)
            if label.on_boundary:
                continue
            assert (label.minus_component % 2 == 0) == (
                c_constant("below", pair) > 0.0)
            assert (label.plus_component % 2 == 0) == (
                c_constant("above", pair) > 0.0)
            checked += 1

    def test_deep_binding_region_is_inert_above(self, rng):
        """Three states below force zero above, and symmetrically."""
        for _ in range(10):
            lam = rng.uniform(-30.0, -14.0)
            mu = rng.uniform(-9.0, -6.3)
            label = classify(CouplingPair(lam, mu))
            if label.on_boundary:
                continue
            assert label.minus_component == 3
            assert label.plus_component == 0
            mirror = classify(CouplingPair(-lam, -mu))
            assert mirror.minus_component == 0
            assert mirror.plus_component == 3

    def test_curve_nudge_separates_components(self):
        """A small step across the phase curve changes the count by one."""
        for mu in (-7.0, -4.0, -2.5):
            lam_star = float(phase_curve_lambda("below", mu))
            binds = classify(CouplingPair(lam_star - 1e-4, mu))
            free = classify(CouplingPair(lam_star + 1e-4, mu))
            assert not binds.on_boundary and not free.on_boundary
            assert binds.minus_component == free.minus_component + 1
            assert binds.plus_component == free.plus_component
        for mu in (7.0, 4.0, 2.5):
            lam_star = float(phase_curve_lambda("above", mu))
            binds = classify(CouplingPair(lam_star + 1e-4, mu))
            free = classify(CouplingPair(lam_star - 1e-4, mu))
            assert binds.plus_component == free.plus_component + 1

    def test_on_curve_flagged_as_boundary(self):
        for mu in (-7.0, -4.0, 0.0):
            lam_star = float(phase_curve_lambda("below", mu))
            assert classify(CouplingPair(lam_star, mu)).on_boundary

    def test_on_asymptote_flagged_as_boundary(self):
        cst = constants()
        for mu in (cst.mu1_plus, cst.mu1_minus, -cst.mu1_plus, -cst.mu1_minus):
            assert classify(CouplingPair(-17.0, mu)).on_boundary

    def test_boundary_label_has_no_counts(self):
        lam_star = float(phase_curve_lambda("below", 0.0))
        label = classify(CouplingPair(lam_star, 0.0))
        assert label.expected_n_below is None
        assert label.expected_n_above is None
        with pytest.raises(FermipairError):
            expected_counts(label)

    def test_tag_property(self):
        assert RegionLabel(2, 1, 4, 2).tag == "C21"
        assert RegionLabel(0, 0, 0, 0).tag == "C00"


class TestPhaseCurve:
    def test_value_at_zero_mu(self):
        assert float(phase_curve_lambda("below", 0.0)) == pytest.approx(
            2.0 * _PI / (2.0 - _PI), abs=1e-12)

    def test_mirror_between_sides(self):
        for mu in np.linspace(-11.0, 11.0, 23):
            below = float(phase_curve_lambda("below", -mu))
            above = float(phase_curve_lambda("above", mu))
            if math.isfinite(below) and math.isfinite(above):
                assert above == pytest.approx(-below, abs=1e-10 * (1 + abs(below)))

    def test_vectorized_evaluation(self):
        mu = np.array([-7.0, -4.0, 0.0])
        values = phase_curve_lambda("below", mu)
        assert values.shape == (3,)
        singles = [float(phase_curve_lambda("below", m)) for m in mu]
        assert values == pytest.approx(singles)

    def test_curve_points_sit_on_zero_level_set(self):
        """The curve is precisely the zero set of the band-edge constant."""
        for mu in (-8.0, -4.0, -1.0, 3.0):
            lam_star = float(phase_curve_lambda("below", mu))
            value = c_constant("below", CouplingPair(lam_star, mu))
            assert abs(value) < 1e-12 * (1.0 + abs(lam_star) + mu * mu)

    def test_side_validation(self):
        with pytest.raises(ValueError):
            phase_curve_lambda("left", 0.0)


class TestBoundaryCurves:
    def test_branch_structure(self):
        cst = constants()
        branches = boundary_curves("below")
        assert 1 <= len(branches) <= 3
        for branch in branches:
            assert branch.side == "below"
            assert len(branch.mu) == len(branch.lam)
            assert np.all(np.diff(branch.mu) > 0.0)
            assert np.all(np.isfinite(branch.lam))
            for pole in (cst.mu1_minus, cst.mu1_plus):
                assert np.min(np.abs(branch.mu - pole)) > 1e-6

    def test_branches_cover_both_sides(self):
        below = boundary_curves("below", mu_range=(-8.0, 0.0), samples=81)
        above = boundary_curves("above", mu_range=(0.0, 8.0), samples=81)
        assert below and above
        assert {b.side for b in below} == {"below"}
        assert {b.side for b in above} == {"above"}

    def test_validation(self):
        with pytest.raises(ValueError):
            boundary_curves("sideways")
        with pytest.raises(ValueError):
            boundary_curves("below", mu_range=(3.0, -3.0))
        with pytest.raises(ValueError):
            boundary_curves("below", samples=1)
