"""Shared fixtures and frozen reference values.

The FROZEN dictionary holds numerical references computed once by
independent means (direct lattice sums, dense eigensolvers on truncated
operators, closed-form constants evaluated at high precision) and then
pinned.  Tests compare library output against these numbers so that a
regression in any layer, from the quadrature up to the root solver, shows
up as a concrete numeric mismatch rather than a silent drift.
"""

import numpy as np
import pytest

from fermipair import CouplingPair, GridSpec, Quasimomentum

FROZEN = {
    "constants": {
        "mu0_minus": -5.617244450932599,
        "mu0_plus": -2.0623371283289758,
        "mu1_minus": -5.752324144887086,
        "mu1_plus": -2.927257434374508,
        "kappa": 0.01079013873401704,
    },
    # Band-edge integrals (a..f) at fixed z, frozen from converged grids.
    "thresh_-1.0": {
        "a": 0.11715649357362426,
        "b": 0.12600773912464408,
        "c": 0.030688876870425902,
        "d": 0.03895705179438849,
        "e": 0.01940063789336447,
        "f": 0.24803130976099116,
    },
    "thresh_9.0": {
        "a": -0.11715649357362426,
        "b": -0.12600773912464408,
        "c": 0.030688876870425902,
        "d": 0.03895705179438848,
        "e": -0.01940063789336446,
        "f": -0.24803130976099116,
    },
    "thresh_-0.01": {
        "a": 0.17932853612457958,
        "b": 0.2316947662565064,
        "c": 0.08653425145859871,
        "d": 0.09374339345077647,
        "e": 0.08153477321981314,
        "f": 0.4163108632953962,
    },
    "thresh_-50.0": {
        "a": 0.009268807090391492,
        "b": 0.009271998824233817,
        "c": 0.0001719397010159596,
        "d": 0.00024299242297457066,
        "e": 9.012097583494665e-06,
        "f": 0.018543986696096984,
    },
    # max |value(512) - value(1024)| over the six integrals at z = -0.01.
    "doubling_diff_z-0.01": 5.551115123125783e-17,
    # z -> 0- limits of the six integrals (closed forms in pi).
    "limits_below": {
        "a": 0.1816901138162093,
        "b": 0.23849682369708494,
        "c": 0.0901406828972559,
        "d": 0.09660476748527928,
        "e": 0.08631363122208179,
        "f": 0.4244131815783876,
    },
    # Raw moment-matrix entries.
    "moment_11_z-1_K0": 0.23431298714724852,
    "moment_cross_max_K0": 2.7755575615628914e-17,
    "moment_11_z-1_K11": 0.2237910325123522,
    "moment_11_z-1_K11_direct": 0.22379103251235216,
    # Determinant values.
    "delta_total_lam1_mu0_z-1": 1.1171564935736242,
    "delta_total_-20_-8_z-1": 0.0875264518356825,
    "delta6_-20_-8_K1_0.5_z-6.5": 2.6706857232135277e-05,
    "delta6_K0_equals_delta_sq_diff": 8.673617379884035e-18,
    # Band-edge constants of the determinant.
    "Cminus_-20_-8": -1.2392865633005732,
    "Cplus_10_3": -0.19023696939711543,
    "Cminus_0_0": 1.0000000000000553,
    # Determinant roots at K = 0.
    "roots_below_-20_-8": [-6.908251843382768, -3.5155167624898747,
                           -0.6413365829062072],
    "roots_above_-20_-8": [],
    "roots_above_0_8": [8.864883384873647, 12.510012024119735],
    "roots_above_20_8": [8.641336582906206, 11.515516762489874,
                         14.908251843382768],
    "roots_below_10_-4": [-0.8334358171184283],
    "roots_above_10_-4": [9.38703455019268],
    # Roots of the decoupled factors.
    "eta_b_mu-8": [-1.0236573993629845],
    "eta_f_mu-8": [-4.496329034250126],
    "zeta_d0mu_mu-8": [-4.510012024119737, -0.8648833848736274],
    "eta_b_mu8": [9.023657399362985],
    "eta_f_mu8": [12.496329034250124],
    "zeta_d0mu_mu8": [8.864883384873632, 12.510012024119735],
    "zeta_lam-8": [-0.7863291288696417],
    "zeta_lam8": [8.786329128869639],
    # General-K factor roots at coupling (-20, 0), K = (1, 0.5).
    "factor0_roots_K1_0.5": [-6.265929148247002],
    "factor1_roots_K1_0.5": [-6.24964160067389],
    "band_K1_0.5": [0.307010032797965, 7.692989967202035],
    # Momentum-grid oracle at coupling (-20, -8), K = 0.
    "oracle32_below": [-6.908251843382764, -6.908251843382764,
                       -3.515516762489872, -3.5155167624898613],
    "oracle64_below": [-6.908251843382754, -6.908251843382744,
                       -3.5155167624898773, -3.51551676248987,
                       -0.6413365829061988, -0.6413365829061934],
    "oracle64_above": [],
    # Position-box oracle at coupling (-20, -8), box radius 30.
    "position30_low": [-6.908251843382755, -6.908251843382744,
                       -3.5155167624898787, -3.515516762489863,
                       -0.6413365829061819, -0.6413365829061779,
                       0.013245599138017133, 0.013245599138017473],
    "position30_high": [7.935438203708864, 7.935438203708925,
                        7.9559161650081185, 7.955916165008125,
                        7.966532854530563, 7.966532854530576,
                        7.98701824936299, 7.9870182493630155],
}

# One interior representative per connected region, keyed by region tag.
ANCHORS = {
    "C00": (0.0, 0.0),
    "C10": (-10.0, -1.0),
    "C20": (0.0, -8.0),
    "C30": (-20.0, -8.0),
    "C21": (15.0, -8.0),
    "C11": (10.0, -4.0),
    "C01": (10.0, 0.0),
    "C02": (0.0, 8.0),
    "C12": (-15.0, 8.0),
    "C03": (20.0, 8.0),
}


@pytest.fixture(scope="session")
def frozen():
    return FROZEN


@pytest.fixture(scope="session")
def anchors():
    return {tag: CouplingPair(lam, mu) for tag, (lam, mu) in ANCHORS.items()}


@pytest.fixture(scope="session")
def base_grid():
    return GridSpec(512)


@pytest.fixture(scope="session")
def k_zero():
    return Quasimomentum(0.0, 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)
