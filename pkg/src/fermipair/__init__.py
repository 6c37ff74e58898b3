"""Bound states of two identical fermions on the square lattice.

The package computes the discrete spectrum of the two-fermion pair
operator with nearest- and next-nearest-neighbor attraction or repulsion,
fibered over total quasimomentum K.  The central objects are:

* torus quadrature for the resolvent moment integrals (:mod:`.torus`);
* the rank-six Fredholm determinant and its band-edge constants
  (:mod:`.determinant`);
* a bracketing root solver turning determinant zeros into eigenvalue
  reports (:mod:`.solver`);
* the coupling-plane atlas of eigenvalue-count regions (:mod:`.atlas`);
* brute-force momentum-grid and position-box oracles (:mod:`.oracle`);
* runnable acceptance criteria (:mod:`.acceptance`) behind the
  ``fermipair verify`` command (:mod:`.cli`).

Figure rendering lives in :mod:`.figures` and is imported lazily so that
matplotlib is only required when figures are requested.
"""

from .atlas import (
    COMPONENT_PAIRS,
    CurveBranch,
    RegionLabel,
    boundary_curves,
    classify,
    expected_counts,
    phase_curve_lambda,
)
from .determinant import (
    CouplingPair,
    DeterminantBreakdown,
    ThresholdConstants,
    c_constant,
    channel_weights,
    constants,
    delta,
    delta_from_thresholds,
    delta_general_k,
    parity_factors,
    system_matrix,
)
from .errors import (
    DegenerateBandError,
    FermipairError,
    NonFiniteIntegrandError,
    OutOfBandError,
)
from .oracle import (
    MomentumGridOperator,
    OracleEigenvalues,
    PositionBoxOperator,
    boundary_amplitude_ratio,
    build_momentum_operator,
    build_position_operator,
    discrete_eigenvalues,
    extreme_eigenvalues,
)
from .solver import (
    Eigenvalue,
    FactorRoots,
    SpectralReport,
    factor_roots,
    find_roots_k0,
    spectrum,
)
from .torus import (
    DEFAULT_GRID_N,
    MAX_GRID_N,
    GridSpec,
    Quasimomentum,
    SpectralPoint,
    ThresholdFunctions,
    band_distance,
    band_edges,
    dispersion,
    moment_matrix,
    periodic_integrate,
    require_nondegenerate,
    resolvent_moment,
    scheduled_grid_n,
    threshold_functions,
)

__version__ = "0.1.0"

__all__ = [
    "COMPONENT_PAIRS",
    "CouplingPair",
    "CurveBranch",
    "DEFAULT_GRID_N",
    "DegenerateBandError",
    "DeterminantBreakdown",
    "Eigenvalue",
    "FactorRoots",
    "FermipairError",
    "GridSpec",
    "MAX_GRID_N",
    "MomentumGridOperator",
    "NonFiniteIntegrandError",
    "OracleEigenvalues",
    "OutOfBandError",
    "PositionBoxOperator",
    "Quasimomentum",
    "RegionLabel",
    "SpectralPoint",
    "SpectralReport",
    "ThresholdConstants",
    "ThresholdFunctions",
    "band_distance",
    "band_edges",
    "boundary_amplitude_ratio",
    "boundary_curves",
    "build_momentum_operator",
    "build_position_operator",
    "c_constant",
    "channel_weights",
    "classify",
    "constants",
    "delta",
    "delta_from_thresholds",
    "delta_general_k",
    "discrete_eigenvalues",
    "dispersion",
    "expected_counts",
    "extreme_eigenvalues",
    "factor_roots",
    "find_roots_k0",
    "moment_matrix",
    "parity_factors",
    "periodic_integrate",
    "phase_curve_lambda",
    "require_nondegenerate",
    "resolvent_moment",
    "scheduled_grid_n",
    "spectrum",
    "system_matrix",
    "threshold_functions",
]
