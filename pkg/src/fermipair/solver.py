"""Root location for the pair determinant: the discrete spectrum solver.

Discrete eigenvalues at quasimomentum K are exactly the real zeros of the
Fredholm determinant outside the band.  The solver brackets sign changes on
a two-scale mesh (geometric near the band edge, uniform across the window
where roots can exist, geometric tail out to where the determinant has
flattened to 1) and polishes each bracket by bisection.

Because the interaction has orthonormal channels with weights
(lam/2, mu/2, mu), its operator norm is max(|lam|/2, |mu|); no discrete
eigenvalue can lie farther than that from the band, which bounds the uniform
mesh window rigorously.

At K = 0 and whenever cos(K1/2) = cos(K2/2) the two parity factors of the
6x6 determinant coincide and every root carries multiplicity two.  At
generic K the solver scans each parity factor separately: the factors can
have roots arbitrarily close to each other, which a sign scan of their
product would miss.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .determinant import (
    CouplingPair,
    constants,
    c_constant,
    delta,
    parity_factors,
)
from .errors import FermipairError
from .torus import (
    DEFAULT_GRID_N,
    GridSpec,
    Quasimomentum,
    band_edges,
    require_nondegenerate,
    scheduled_grid_n,
    threshold_functions,
)

__all__ = [
    "Eigenvalue",
    "SpectralReport",
    "FactorRoots",
    "find_roots_k0",
    "spectrum",
    "factor_roots",
]

_SIDES = ("below", "above")

# Mesh geometry (offsets are band-edge distances).
_GEO_INNER = 1e-8
_GEO_OUTER = 1e-1
_N_GEO_K0, _N_UNI_K0 = 64, 256
_N_GEO_K, _N_UNI_K = 48, 160
_HORIZON_TOL = 1e-6
_MAX_MESH_DEPTH = 1e7

# Polish policy: bisect to this bracket width, pushing one decade further
# when the residual stays large (near-edge determinant slopes grow like the
# logarithm of the edge distance).
_BRACKET_TOL = 1e-12
_BRACKET_TOL_HARD = 1e-13
_RESIDUAL_TOL = 5e-11

_BOUNDARY_C_TOL = 1e-6
_MAX_ROOTS_PER_FACTOR = 3


@dataclass(frozen=True)
class Eigenvalue:
    """One discrete eigenvalue: energy, band side, and multiplicity."""

    z: float
    side: str
    multiplicity: int = 1

    def __post_init__(self) -> None:
        if self.side not in _SIDES:
            raise ValueError(f"side must be 'below' or 'above', got {self.side!r}")
        if self.multiplicity not in (1, 2):
            raise ValueError(
                f"multiplicity must be 1 or 2 (parity doubling is the only "
                f"degeneracy mechanism), got {self.multiplicity}")


@dataclass(frozen=True)
class SpectralReport:
    """Full discrete spectrum of the pair operator at one (coupling, K)."""

    coupling: CouplingPair
    k: Quasimomentum
    band: tuple[float, float]
    eigenvalues: tuple[Eigenvalue, ...]
    n_below: int
    n_above: int
    boundary_uncertain: bool = False

    def __post_init__(self) -> None:
        if self.n_below + self.n_above > 6:
            raise FermipairError(
                f"found {self.n_below}+{self.n_above} eigenvalues; the rank-six "
                "interaction admits at most six"
            )


def _coupling_norm(coupling: CouplingPair) -> float:
    """Operator norm of the interaction: max over channel weights."""
    return max(abs(coupling.lam) / 2.0, abs(coupling.mu))


def _mesh_offsets(bound: float, n_geo: int, n_uni: int) -> np.ndarray:
    geo = np.geomspace(_GEO_INNER, _GEO_OUTER, n_geo)
    uni = np.linspace(_GEO_OUTER, max(bound, 2.0 * _GEO_OUTER), n_uni)[1:]
    return np.concatenate([geo, uni])


def _bisect(fn: Callable[[float], float], lo: float, hi: float,
            flo: "float | None" = None, fhi: "float | None" = None,
            xtol: float = _BRACKET_TOL) -> "float | None":
    """Bisection with a residual-aware stopping rule; None if no sign change."""
    flo = fn(lo) if flo is None else flo
    if flo == 0.0:
        return lo
    fhi = fn(hi) if fhi is None else fhi
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        return None
    fm = flo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (flo > 0) != (fm > 0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        width = hi - lo
        if width <= xtol and abs(fm) <= _RESIDUAL_TOL:
            break
        if width <= _BRACKET_TOL_HARD * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def _narrow(fn: Callable[[float], float], lo: float, hi: float,
            flo: float, fhi: float, width: float
            ) -> tuple[float, float, float, float]:
    """Shrink a sign-change bracket to the given width by bisection."""
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        fm = fn(mid)
        if fm == 0.0:
            return mid, mid, 0.0, 0.0
        if (flo > 0) != (fm > 0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return lo, hi, flo, fhi


def _locate_roots(fn_scan: Callable[[float], float], fn_polish: Callable[[float], float],
                  edge: float, sign: float, bound: float, n_geo: int, n_uni: int,
                  knots: tuple[float, ...] = (), max_roots: int = _MAX_ROOTS_PER_FACTOR,
                  values: "list[tuple[float, float]] | None" = None) -> list[float]:
    """Bracket sign changes of fn_scan on the side mesh and polish with fn_polish.

    ``values`` may carry a precomputed (z, fn_scan(z)) sequence ordered
    outward from the edge (used when two factors share one scan pass).
    """
    if values is None:
        offsets = list(_mesh_offsets(bound, n_geo, n_uni))
        for knot in knots:
            off = (knot - edge) * sign
            if _GEO_INNER < off < bound:
                offsets.append(off)
        offsets = sorted(set(offsets))
        zs = [edge + sign * off for off in offsets]
        vals = [fn_scan(z) for z in zs]
        depth = offsets[-1]
        while abs(vals[-1] - 1.0) >= _HORIZON_TOL and depth < _MAX_MESH_DEPTH:
            depth *= 2.0
            zs.append(edge + sign * depth)
            vals.append(fn_scan(zs[-1]))
    else:
        zs = [z for z, _ in values]
        vals = [v for _, v in values]

    roots: list[float] = []
    for i in range(len(zs) - 1):
        if vals[i] == 0.0:
            roots.append(zs[i])
            continue
        if (vals[i] > 0) != (vals[i + 1] > 0):
            if zs[i] < zs[i + 1]:
                lo, hi, flo, fhi = zs[i], zs[i + 1], vals[i], vals[i + 1]
            else:
                lo, hi, flo, fhi = zs[i + 1], zs[i], vals[i + 1], vals[i]
            # Coarse narrowing runs on the cheap scan evaluator; only the
            # final refinement pays for the near-edge quadrature escalation.
            lo, hi, flo, fhi = _narrow(fn_scan, lo, hi, flo, fhi,
                                       1e-5 * max(1.0, abs(edge)))
            refined = _bisect(fn_polish, lo, hi)
            if refined is None:
                # The polish evaluator (finer quadrature near the edge) can
                # disagree with the scan values only within its error band of
                # a boundary; fall back to the scan-level bracket.
                refined = _bisect(fn_scan, lo, hi, flo, fhi)
            if refined is not None:
                roots.append(refined)
    if vals and vals[-1] == 0.0:
        roots.append(zs[-1])

    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or abs(r - deduped[-1]) > 1e-10 * max(1.0, abs(r)):
            deduped.append(r)
    if len(deduped) > max_roots:
        raise FermipairError(
            f"located {len(deduped)} roots on one side of one factor; at most {max_roots} "
            "can exist, so the couplings sit too close to a phase boundary for this mesh"
        )
    return deduped


def _delta_total_fn(coupling: CouplingPair, n: "int | None", base: int) -> Callable[[float], float]:
    """Determinant evaluator; n=None selects the per-z scheduled grid."""
    k0 = Quasimomentum()
    if n is not None:
        grid = GridSpec(n)
        return lambda z: delta(coupling, z, grid).total
    return lambda z: delta(coupling, z, GridSpec(scheduled_grid_n(k0, z, base))).total


def _channel_value(index: str, z: float, grid: GridSpec) -> float:
    return getattr(threshold_functions(z, grid), index)


def _channel_root(weight: float, index: str, side: str, base: int,
                  xtol: float) -> "float | None":
    """Root of 1 + weight * g(z) for a monotone band-edge function g.

    ``index`` selects one of the six functions; the channel operator norm
    (|weight| for the 'f' channel, |weight|/2 otherwise, matching the raw
    moment scale) bounds the root's distance from the band.  The bracket
    narrows on the base grid, whose near-edge quadrature error is below
    1e-5, and only a sub-1e-5 tolerance pays for escalated grids.
    """
    if weight == 0.0:
        return None
    norm = abs(weight) if index == "f" else abs(weight) / 2.0
    edge, sign = (0.0, -1.0) if side == "below" else (8.0, 1.0)
    k0 = Quasimomentum()
    fixed = GridSpec(base)

    def g_base(z: float) -> float:
        return 1.0 + weight * _channel_value(index, z, fixed)

    def g_fine(z: float) -> float:
        n = scheduled_grid_n(k0, z, base)
        return 1.0 + weight * _channel_value(index, z, GridSpec(n))

    lo_z = edge + sign * (norm + 1.0)
    hi_z = edge + sign * _GEO_INNER
    lo, hi = sorted((lo_z, hi_z))
    flo, fhi = g_base(lo), g_base(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        return None
    lo, hi, flo, fhi = _narrow(g_base, lo, hi, flo, fhi, max(xtol, 1e-5))
    if xtol >= 1e-5:
        return 0.5 * (lo + hi)
    refined = _bisect(g_fine, lo, hi, xtol=xtol)
    if refined is None:
        refined = _bisect(g_base, lo, hi, flo, fhi, xtol=xtol)
    return refined


def find_roots_k0(coupling: CouplingPair, side: str,
                  grid: "GridSpec | None" = None) -> list[float]:
    """All roots of the K = 0 determinant on one side of the band.

    Parameters
    ----------
    coupling : CouplingPair
        Interaction strengths.
    side : {'below', 'above'}
        Which open interval to search: (-inf, 0) or (8, inf).
    grid : GridSpec, optional
        Base quadrature grid for scan evaluations (default 512 per axis);
        evaluations escalate automatically within 0.01 of the band edge.

    Returns
    -------
    list of float
        Sorted roots; an empty list is a valid outcome.  At most three roots
        can exist per side (one per interaction channel of a parity sector).

    Notes
    -----
    The mesh places 64 geometric points between edge distances 1e-8 and 0.1,
    uniform points out to the rigorous root bound max(|lam|/2, |mu|) + 1,
    and a doubling tail until |Delta - 1| < 1e-6.  Roots of the decoupled
    channel factors 1 + lam*a, 1 + mu*b, 1 + mu*f are inserted as extra mesh
    knots, since the full determinant can dip and recover between two of
    its factor roots.  Near a phase boundary (|C| below about 1e-6) a root
    may sit closer to the band edge than the innermost mesh point; spectrum()
    flags that situation instead of asserting a count.
    """
    if side not in _SIDES:
        raise ValueError(f"side must be 'below' or 'above', got {side!r}")
    if coupling.is_free:
        return []
    base = grid.n if grid is not None else DEFAULT_GRID_N
    edge, sign = (0.0, -1.0) if side == "below" else (8.0, 1.0)
    bound = max(1.0, _coupling_norm(coupling)) + 1.0

    knots = []
    for weight, index in ((coupling.lam, "a"), (coupling.mu, "b"), (coupling.mu, "f")):
        knot = _channel_root(weight, index, side, base, xtol=1e-6)
        if knot is not None:
            knots.append(knot)

    fn_scan = _delta_total_fn(coupling, base, base)
    fn_polish = _delta_total_fn(coupling, None, base)
    return _locate_roots(fn_scan, fn_polish, edge, sign, bound,
                         _N_GEO_K0, _N_UNI_K0, tuple(knots))


def _factor_fns(coupling: CouplingPair, k: Quasimomentum, which: int,
                base: int) -> tuple[Callable[[float], float], Callable[[float], float]]:
    fixed = GridSpec(base)

    def fn_scan(z: float) -> float:
        return parity_factors(coupling, k, z, fixed)[which]

    def fn_polish(z: float) -> float:
        n = scheduled_grid_n(k, z, base)
        return parity_factors(coupling, k, z, GridSpec(n))[which]

    return fn_scan, fn_polish


def _factor_side_roots(coupling: CouplingPair, k: Quasimomentum, side: str,
                       base: int, both_factors: bool) -> tuple[list[float], list[float]]:
    """Roots of each parity factor on one side at K != 0.

    One mesh pass evaluates the shared moment table per z (cached), from
    which both factor values come at negligible extra cost.
    """
    e_min, e_max = band_edges(k)
    edge, sign = (e_min, -1.0) if side == "below" else (e_max, 1.0)
    bound = max(1.0, _coupling_norm(coupling)) + 1.0
    fixed = GridSpec(base)

    offsets = sorted(_mesh_offsets(bound, _N_GEO_K, _N_UNI_K))
    zs = [edge + sign * off for off in offsets]
    pairs = [parity_factors(coupling, k, z, fixed) for z in zs]
    depth = offsets[-1]
    while (abs(pairs[-1][0] * pairs[-1][1] - 1.0) >= _HORIZON_TOL
           and depth < _MAX_MESH_DEPTH):
        depth *= 2.0
        zs.append(edge + sign * depth)
        pairs.append(parity_factors(coupling, k, zs[-1], fixed))

    results: tuple[list[float], list[float]] = ([], [])
    for which in (0, 1) if both_factors else (0,):
        fn_scan, fn_polish = _factor_fns(coupling, k, which, base)
        values = [(z, pair[which]) for z, pair in zip(zs, pairs)]
        results[which].extend(
            _locate_roots(fn_scan, fn_polish, edge, sign, bound,
                          _N_GEO_K, _N_UNI_K, values=values))
    return results


def spectrum(coupling: CouplingPair, k: "Quasimomentum | None" = None,
             grid: "GridSpec | None" = None) -> SpectralReport:
    """Locate the full discrete spectrum at one (coupling, K).

    At K = 0 the determinant factors into two identical parity blocks, so
    each root is reported once with multiplicity 2; the same happens at any
    K with cos(K1/2) = cos(K2/2) (i.e. K1 = +-K2), where the cross block of
    the moment matrix vanishes identically.  At generic K the two parity
    factors differ and their roots are reported with multiplicity 1.

    Raises
    ------
    DegenerateBandError
        If the band collapses to a point (K = (pi, pi)).

    Notes
    -----
    ``boundary_uncertain`` is set at K = 0 when either band-edge constant
    satisfies |C| < 1e-6: a root may then sit beyond mesh resolution and
    the counts should not be read as sharp.
    """
    k = k if k is not None else Quasimomentum()
    require_nondegenerate(k)
    base = grid.n if grid is not None else DEFAULT_GRID_N
    band = band_edges(k)

    eigenvalues: list[Eigenvalue] = []
    boundary_uncertain = False
    if k.is_zero:
        for side in _SIDES:
            for root in find_roots_k0(coupling, side, grid):
                eigenvalues.append(Eigenvalue(root, side, 2))
        boundary_uncertain = (
            abs(c_constant("below", coupling)) < _BOUNDARY_C_TOL
            or abs(c_constant("above", coupling)) < _BOUNDARY_C_TOL)
    elif not coupling.is_free:
        c1, c2 = k.half_cosines
        paired = c1 == c2
        for side in _SIDES:
            roots0, roots1 = _factor_side_roots(coupling, k, side, base,
                                                both_factors=not paired)
            if paired:
                eigenvalues.extend(Eigenvalue(r, side, 2) for r in roots0)
            else:
                eigenvalues.extend(Eigenvalue(r, side, 1)
                                   for r in sorted(roots0 + roots1))

    eigenvalues.sort(key=lambda ev: ev.z)
    n_below = sum(ev.multiplicity for ev in eigenvalues if ev.side == "below")
    n_above = sum(ev.multiplicity for ev in eigenvalues if ev.side == "above")
    return SpectralReport(coupling, k, band, tuple(eigenvalues),
                          n_below, n_above, boundary_uncertain)


@dataclass(frozen=True)
class FactorRoots:
    """Roots of the decoupled determinant factors with their case labels.

    ``lambda_case`` records whether the nearest-neighbor channel binds a
    state ('below' for lam < 2pi/(2-pi), 'above' for lam > 2pi/(pi-2),
    otherwise 'none'), and ``lambda_root`` the root of 1 + lam*a there.

    ``channel_case`` records the regime of the two single channels
    1 + mu*b and 1 + mu*f ('below' for mu < mu0_minus, 'above' for
    mu > -mu0_minus, otherwise 'none'); ``b_root``/``f_root`` hold their
    roots inside that regime.

    ``mu_sector_case`` labels the root count of the full mu-sector factor
    (1 + mu*b)(1 + mu*f) - 2 mu^2 e^2 by the position of mu relative to
    (mu0_minus, mu0_plus) and their negatives; ``mu_sector_roots`` holds
    the located roots on the predicted side.  In the two-root regimes the
    sector roots strictly bracket both channel roots.
    """

    coupling: CouplingPair
    lambda_case: str
    lambda_root: "float | None"
    channel_case: str
    b_root: "float | None"
    f_root: "float | None"
    mu_sector_case: str
    mu_sector_roots: tuple[float, ...]


def factor_roots(coupling: CouplingPair, grid: "GridSpec | None" = None) -> FactorRoots:
    """Roots of the three decoupled factors of the K = 0 determinant.

    Near a case boundary (mu within float distance of a threshold constant)
    a predicted root sits arbitrarily close to the band edge and may fall
    inside the innermost mesh interval; the returned tuple then carries the
    roots actually located.
    """
    base = grid.n if grid is not None else DEFAULT_GRID_N
    cst = constants()
    lam, mu = coupling.lam, coupling.mu

    if lam < cst.lambda_threshold_below:
        lambda_case = "below"
    elif lam > cst.lambda_threshold_above:
        lambda_case = "above"
    else:
        lambda_case = "none"
    lambda_root = (_channel_root(lam, "a", lambda_case, base, xtol=_BRACKET_TOL)
                   if lambda_case != "none" else None)

    if mu < cst.mu0_minus:
        channel_case = "below"
    elif mu > -cst.mu0_minus:
        channel_case = "above"
    else:
        channel_case = "none"
    b_root = f_root = None
    if channel_case != "none":
        b_root = _channel_root(mu, "b", channel_case, base, xtol=_BRACKET_TOL)
        f_root = _channel_root(mu, "f", channel_case, base, xtol=_BRACKET_TOL)

    if mu < cst.mu0_minus:
        mu_sector_case, sector_side = "two_below", "below"
    elif mu < cst.mu0_plus:
        mu_sector_case, sector_side = "one_below", "below"
    elif mu <= -cst.mu0_plus:
        mu_sector_case, sector_side = "none", None
    elif mu <= -cst.mu0_minus:
        mu_sector_case, sector_side = "one_above", "above"
    else:
        mu_sector_case, sector_side = "two_above", "above"
    sector_roots: tuple[float, ...] = ()
    if sector_side is not None:
        sector_roots = tuple(find_roots_k0(CouplingPair(0.0, mu), sector_side, grid))

    return FactorRoots(coupling, lambda_case, lambda_root,
                       channel_case, b_root, f_root,
                       mu_sector_case, sector_roots)
