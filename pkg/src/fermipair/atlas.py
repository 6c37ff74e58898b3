"""Phase diagram of bound-state counts over the coupling plane.

The number of discrete eigenvalues below and above the band at K = 0 is
constant on connected components of the coupling plane cut by the curves
where a root crosses a band edge.  Each band side contributes one curve
family: the zero set of the edge constant C(lam, mu), which solves to a
rational graph lam = curve(mu) with two vertical asymptotes.  The plane
minus these curves decomposes into components indexed 0..3 per side, with
2k eigenvalues on the side for component index k; only ten index pairs
(minus, plus) are geometrically realized.

Everything here evaluates closed-form polynomials in (lam, mu), so
classification costs microseconds and involves no quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .determinant import CouplingPair, c_constant, constants
from .errors import FermipairError

__all__ = [
    "RegionLabel",
    "CurveBranch",
    "COMPONENT_PAIRS",
    "classify",
    "expected_counts",
    "phase_curve_lambda",
    "boundary_curves",
]

# The (minus, plus) component index pairs that occur; every coupling pair
# off the boundary curves lands in exactly one of these ten regions.
COMPONENT_PAIRS: tuple[tuple[int, int], ...] = (
    (0, 0), (1, 0), (2, 0), (3, 0), (2, 1),
    (1, 1), (0, 1), (0, 2), (1, 2), (0, 3),
)

_BOUNDARY_C_SCALE = 1e-9
_ASYMPTOTE_TOL = 1e-9
_CURVE_POLE_TOL = 1e-6


@dataclass(frozen=True)
class RegionLabel:
    """Classification of one coupling pair by phase-diagram component.

    ``minus_component`` k means 2k eigenvalues below the band; likewise
    ``plus_component`` above.  When ``on_boundary`` is set the pair sits
    within tolerance of a component boundary and the expected counts are
    withheld (None): an eigenvalue is then at or beyond numerical reach of
    a band edge and no integer count is trustworthy.
    """

    minus_component: int
    plus_component: int
    expected_n_below: "int | None"
    expected_n_above: "int | None"
    on_boundary: bool = False

    @property
    def tag(self) -> str:
        """Compact region name, e.g. 'C21' for components (2, 1)."""
        return f"C{self.minus_component}{self.plus_component}"


@dataclass(frozen=True)
class CurveBranch:
    """One asymptote-free piece of a boundary curve, sampled over mu."""

    side: str
    branch: int
    mu: np.ndarray
    lam: np.ndarray


def _poles(side: str) -> tuple[float, float]:
    """Vertical asymptotes of the side's boundary curve, ascending."""
    cst = constants()
    if side == "below":
        return (cst.mu1_minus, cst.mu1_plus)
    return (-cst.mu1_plus, -cst.mu1_minus)


def phase_curve_lambda(side: str, mu) -> np.ndarray:
    """Boundary curve lam(mu) for one band side.

    Below the band the curve is -8(mu - mu0+)(mu - mu0-) over
    (mu - mu1+)(mu - mu1-); above the band it is the sign-flipped mirror
    +8(mu + mu0+)(mu + mu0-) over (mu + mu1+)(mu + mu1-).  Values at the
    poles evaluate to +-inf.
    """
    if side not in ("below", "above"):
        raise ValueError(f"side must be 'below' or 'above', got {side!r}")
    cst = constants()
    mu = np.asarray(mu, dtype=float)
    s = 1.0 if side == "below" else -1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        num = -8.0 * s * (s * mu - cst.mu0_plus) * (s * mu - cst.mu0_minus)
        den = (s * mu - cst.mu1_plus) * (s * mu - cst.mu1_minus)
        return num / den


def classify(coupling: CouplingPair) -> RegionLabel:
    """Assign a coupling pair to its phase-diagram region.

    A pair is flagged ``on_boundary`` when either edge constant satisfies
    |C| < 1e-9 (1 + |lam| + mu^2) or mu lies within 1e-9 of one of the four
    curve asymptotes; component indices are still reported (boundary ties
    resolve toward the smaller index) but expected counts are withheld.
    """
    lam, mu = coupling.lam, coupling.mu
    cst = constants()

    scale = _BOUNDARY_C_SCALE * (1.0 + abs(lam) + mu * mu)
    near_curve = (abs(c_constant("below", coupling)) < scale
                  or abs(c_constant("above", coupling)) < scale)
    near_pole = min(abs(mu - cst.mu1_plus), abs(mu - cst.mu1_minus),
                    abs(mu + cst.mu1_plus), abs(mu + cst.mu1_minus)) < _ASYMPTOTE_TOL
    on_boundary = bool(near_curve or near_pole)

    minus = _component_below(lam, mu)
    plus = _component_above(lam, mu)
    if not on_boundary and (minus, plus) not in COMPONENT_PAIRS:
        raise FermipairError(
            f"classified ({lam}, {mu}) into unrealizable component pair "
            f"({minus}, {plus})")
    if on_boundary:
        return RegionLabel(minus, plus, None, None, True)
    return RegionLabel(minus, plus, 2 * minus, 2 * plus, False)


def _component_below(lam: float, mu: float) -> int:
    cst = constants()
    lo, hi = cst.mu1_minus, cst.mu1_plus
    if mu == hi or mu == lo:
        return 1 if mu == hi else 2
    curve = float(phase_curve_lambda("below", mu))
    binds = lam < curve
    if mu > hi:
        return 1 if binds else 0
    if mu > lo:
        return 2 if binds else 1
    return 3 if binds else 2


def _component_above(lam: float, mu: float) -> int:
    cst = constants()
    lo, hi = -cst.mu1_plus, -cst.mu1_minus
    if mu == lo or mu == hi:
        return 1 if mu == lo else 2
    curve = float(phase_curve_lambda("above", mu))
    binds = lam > curve
    if mu < lo:
        return 1 if binds else 0
    if mu < hi:
        return 2 if binds else 1
    return 3 if binds else 2


def expected_counts(label: RegionLabel) -> tuple[int, int]:
    """Eigenvalue counts (below, above) implied by a region label.

    Raises
    ------
    FermipairError
        If the label is on a boundary, where no sharp counts exist.
    """
    if label.on_boundary:
        raise FermipairError(
            "coupling pair lies on a phase boundary; eigenvalue counts are "
            "not defined there")
    return 2 * label.minus_component, 2 * label.plus_component


def boundary_curves(side: str, mu_range: tuple[float, float] = (-12.0, 12.0),
                    samples: int = 481) -> list[CurveBranch]:
    """Sample the boundary curve of one band side as asymptote-free branches.

    Parameters
    ----------
    side : {'below', 'above'}
        Which band edge's curve to sample.
    mu_range : (float, float)
        Closed mu interval to sample over; must be nonempty.
    samples : int
        Number of uniform mu samples over the interval, at least 2.

    Returns
    -------
    list of CurveBranch
        Up to three branches (indexed 0, 1, 2 by ascending mu sector);
        sample points within 1e-6 of an asymptote are omitted, and
        branches with no surviving points are dropped.
    """
    if side not in ("below", "above"):
        raise ValueError(f"side must be 'below' or 'above', got {side!r}")
    lo, hi = float(mu_range[0]), float(mu_range[1])
    if not lo < hi:
        raise ValueError(f"mu_range must satisfy lo < hi, got ({lo}, {hi})")
    if samples < 2:
        raise ValueError(f"samples must be at least 2, got {samples}")

    poles = np.array(_poles(side))
    mus = np.linspace(lo, hi, samples)
    keep = np.min(np.abs(mus[:, None] - poles[None, :]), axis=1) > _CURVE_POLE_TOL
    mus = mus[keep]
    sectors = np.searchsorted(poles, mus)
    lams = phase_curve_lambda(side, mus)

    branches = []
    for index in range(3):
        sel = sectors == index
        if np.any(sel):
            branches.append(CurveBranch(side, index, mus[sel], lams[sel]))
    return branches
