"""Fredholm determinant of the pair problem and its band-edge constants.

At K = 0 the determinant of the rank-six interaction restricted to one
parity sector has the closed form

    Delta(z) = Delta_l0(z) * Delta_0m(z) + Delta_12(z)

with

    Delta_l0 = 1 + lam*a
    Delta_0m = (1 + mu*b)(1 + mu*f) - 2 mu^2 e^2
    Delta_12 = 4 lam mu^2 c d e - lam mu c^2 (1 + mu*f) - 2 lam mu d^2 (1 + mu*b)

in terms of the six band-edge integrals of :mod:`fermipair.torus`.  Its real
zeros outside the band [0, 8] are the discrete pair eigenvalues, each of
multiplicity two.  The band-edge limits Delta(0-) and Delta(8+) are the
polynomials C_minus / C_plus in the couplings whose zero sets draw the phase
diagram.

For general K the same interaction is not parity-diagonal in closed form;
``delta_general_k`` evaluates det(I6 + G A(K, z)) with the channel weight
matrix G = diag(lam/2, mu/2, mu, lam/2, mu/2, mu).  The third channel
carries weight mu (not mu/2): this is the unique choice under which the
6x6 determinant at K = 0 factors into the square of the closed form above,
which also reproduces the printed threshold constants.  At every K the 6x6
determinant factors exactly into two 3x3 parity blocks det(I + G3 (P +- X)),
where P is the symmetric-sector moment block and X the cross block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .torus import (
    GridSpec,
    Quasimomentum,
    SpectralPoint,
    ThresholdFunctions,
    moment_matrix,
    threshold_functions,
)

__all__ = [
    "CouplingPair",
    "ThresholdConstants",
    "DeterminantBreakdown",
    "constants",
    "delta",
    "delta_from_thresholds",
    "system_matrix",
    "c_constant",
    "channel_weights",
    "delta_general_k",
    "parity_factors",
]

_PI = math.pi
_SIDES = ("below", "above")


@dataclass(frozen=True)
class CouplingPair:
    """Interaction strengths: ``lam`` nearest-neighbor, ``mu`` next-nearest."""

    lam: float = 0.0
    mu: float = 0.0

    def __post_init__(self) -> None:
        for name in ("lam", "mu"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def is_free(self) -> bool:
        return self.lam == 0.0 and self.mu == 0.0


@dataclass(frozen=True)
class ThresholdConstants:
    """Roots of the band-edge polynomials in the coupling ``mu``.

    ``mu0_minus`` and ``mu0_plus`` are the zeros of the mu-sector edge value
    (1 + mu*b0)(1 + mu*f0) - 2 mu^2 e0^2; ``mu1_minus`` and ``mu1_plus`` are
    the zeros of the lam-coefficient polynomial in C_minus, i.e. the
    asymptote positions of the phase-boundary curves.  ``kappa`` is the
    common prefactor of both C polynomials.
    """

    mu0_minus: float
    mu0_plus: float
    mu1_minus: float
    mu1_plus: float
    kappa: float

    @property
    def lambda_threshold_below(self) -> float:
        """Largest lam at which the nearest-neighbor channel binds below: 2 pi/(2 - pi)."""
        return 2.0 * _PI / (2.0 - _PI)

    @property
    def lambda_threshold_above(self) -> float:
        """Smallest lam at which the channel produces a state above: 2 pi/(pi - 2)."""
        return 2.0 * _PI / (_PI - 2.0)


@lru_cache(maxsize=1)
def constants() -> ThresholdConstants:
    """Evaluate the four mu constants and the C prefactor from closed forms.

    The decimals are never hard-coded; tests compare these computed values
    against independently tabulated references.
    """
    rad0 = math.sqrt(1044.0 * _PI**2 - 6720.0 * _PI + 10816.0)
    den0 = 240.0 * _PI - 24.0 * _PI**2 - 512.0
    mu0_plus = _PI * (88.0 - 30.0 * _PI + rad0) / den0
    mu0_minus = _PI * (88.0 - 30.0 * _PI - rad0) / den0

    rad1 = math.sqrt(225.0 * _PI**4 - 1440.0 * _PI**3 + 3904.0 * _PI**2 - 10240.0 * _PI + 16384.0)
    den1 = 120.0 * _PI - 12.0 * _PI**2 - 256.0
    mu1_plus = (128.0 - 16.0 * _PI - 9.0 * _PI**2 + rad1) / den1
    mu1_minus = (128.0 - 16.0 * _PI - 9.0 * _PI**2 - rad1) / den1

    kappa = (30.0 * _PI - 3.0 * _PI**2 - 64.0) / (6.0 * _PI**2)

    if not (mu1_minus < mu0_minus < mu1_plus < mu0_plus < 0.0):
        raise AssertionError("threshold constants violate their ordering; closed forms corrupted")
    return ThresholdConstants(mu0_minus, mu0_plus, mu1_minus, mu1_plus, kappa)


@dataclass(frozen=True)
class DeterminantBreakdown:
    """The three closed-form pieces of the K = 0 determinant and their total."""

    delta_lambda0: float
    delta_0mu: float
    delta_12: float
    total: float


def delta_from_thresholds(coupling: CouplingPair, t: ThresholdFunctions) -> DeterminantBreakdown:
    """Combine precomputed band-edge integrals into the determinant breakdown."""
    lam, mu = coupling.lam, coupling.mu
    a, b, c, d, e, f = t
    delta_lambda0 = 1.0 + lam * a
    delta_0mu = (1.0 + mu * b) * (1.0 + mu * f) - 2.0 * mu * mu * e * e
    delta_12 = (4.0 * lam * mu * mu * c * d * e
                - lam * mu * c * c * (1.0 + mu * f)
                - 2.0 * lam * mu * d * d * (1.0 + mu * b))
    return DeterminantBreakdown(delta_lambda0, delta_0mu, delta_12,
                                delta_lambda0 * delta_0mu + delta_12)


def delta(coupling: CouplingPair, z: "float | SpectralPoint",
          grid: "GridSpec | None" = None) -> DeterminantBreakdown:
    """Evaluate the K = 0 determinant breakdown at real z outside [0, 8].

    All three pieces share one set of band-edge integrals per z (cached by
    the torus module), so repeated evaluation during root scans costs a
    single quadrature pass per new z.
    """
    return delta_from_thresholds(coupling, threshold_functions(z, grid))


def system_matrix(coupling: CouplingPair, z: "float | SpectralPoint",
                  grid: "GridSpec | None" = None) -> np.ndarray:
    """The equivalent 3x3 one-sector system matrix whose determinant is Delta.

    Rows: (1 + lam*a, lam*c, lam*d), (mu*c, 1 + mu*b, mu*e),
    (2 mu*d, 2 mu*e, 1 + mu*f).  Exposed for consistency testing against the
    closed-form breakdown.
    """
    lam, mu = coupling.lam, coupling.mu
    a, b, c, d, e, f = threshold_functions(z, grid)
    return np.array([
        [1.0 + lam * a, lam * c, lam * d],
        [mu * c, 1.0 + mu * b, mu * e],
        [2.0 * mu * d, 2.0 * mu * e, 1.0 + mu * f],
    ])


def c_constant(side: str, coupling: CouplingPair) -> float:
    """Band-edge limit of the determinant: C_minus at z -> 0-, C_plus at z -> 8+.

    C_minus(lam, mu) = kappa * [8 (mu - mu0+)(mu - mu0-) + lam (mu - mu1+)(mu - mu1-)]
    C_plus(lam, mu)  = kappa * [8 (mu + mu0+)(mu + mu0-) - lam (mu + mu1+)(mu + mu1-)]

    They obey C_plus(lam, mu) = C_minus(-lam, -mu).
    """
    if side not in _SIDES:
        raise ValueError(f"side must be 'below' or 'above', got {side!r}")
    k = constants()
    lam, mu = coupling.lam, coupling.mu
    if side == "below":
        return k.kappa * (8.0 * (mu - k.mu0_plus) * (mu - k.mu0_minus)
                          + lam * (mu - k.mu1_plus) * (mu - k.mu1_minus))
    return k.kappa * (8.0 * (mu + k.mu0_plus) * (mu + k.mu0_minus)
                      - lam * (mu + k.mu1_plus) * (mu + k.mu1_minus))


def channel_weights(coupling: CouplingPair) -> np.ndarray:
    """Coupling weight per interaction channel, basis order (os1..os3, oa1..oa3).

    The first-shell channels carry lam/2, the second-shell channels mu/2,
    and the diagonal-neighbor channels mu.  This is the single source of
    truth for the channel normalization; the momentum and position oracles
    derive from it.
    """
    lam, mu = coupling.lam, coupling.mu
    return np.array([lam / 2.0, mu / 2.0, mu, lam / 2.0, mu / 2.0, mu])


def parity_factors(coupling: CouplingPair, k: Quasimomentum, z: "float | SpectralPoint",
                   grid: "GridSpec | None" = None) -> tuple[float, float]:
    """The two 3x3 parity-block determinants whose product is the 6x6 determinant.

    The moment matrix has the block structure A = [[P, X], [X, P]] at every
    K (the antisymmetric-sector block equals the symmetric one under
    p2 -> -p2), so det(I6 + G A) = det(I3 + G3 (P + X)) * det(I3 + G3 (P - X))
    with G3 = diag(lam/2, mu/2, mu).  The cross block X vanishes exactly when
    cos(K1/2) = cos(K2/2), i.e. K1 = +-K2, and the two factors coincide.
    """
    a = moment_matrix(k, z, grid)
    p_block = a[:3, :3]
    x_block = a[:3, 3:]
    g3 = channel_weights(coupling)[:3]
    eye = np.eye(3)
    f_plus = float(np.linalg.det(eye + g3[:, None] * (p_block + x_block)))
    f_minus = float(np.linalg.det(eye + g3[:, None] * (p_block - x_block)))
    return f_plus, f_minus


def delta_general_k(coupling: CouplingPair, k: Quasimomentum, z: "float | SpectralPoint",
                    grid: "GridSpec | None" = None) -> float:
    """det(I6 + G A(K, z)): zero exactly at the discrete eigenvalues at K.

    At K = 0 this equals delta(coupling, z).total squared.
    """
    f_plus, f_minus = parity_factors(coupling, k, z, grid)
    return f_plus * f_minus
