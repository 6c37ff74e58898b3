"""Independent finite-dimensional checks of the determinant solver.

Two discretizations of the same pair operator, built without any use of
the determinant machinery:

* a momentum-space truncation on the antisymmetric half of an n x n
  lattice of Fourier modes, where the interaction is an explicit rank-six
  update of the diagonal dispersion;
* a position-space truncation to a finite box of relative-coordinate
  sites, where the interaction is the original short-range potential and
  the kinetic part is nearest-neighbor hopping.

Their low/high eigenvalues must converge to the determinant roots as the
grid or box grows; the test suite compares all three.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import LinearOperator, eigsh

from .determinant import CouplingPair, channel_weights
from .errors import FermipairError
from .torus import (
    SQRT2,
    Quasimomentum,
    band_edges,
    dispersion,
    require_nondegenerate,
)

__all__ = [
    "MomentumGridOperator",
    "PositionBoxOperator",
    "OracleEigenvalues",
    "build_momentum_operator",
    "build_position_operator",
    "discrete_eigenvalues",
    "extreme_eigenvalues",
    "boundary_amplitude_ratio",
]

_DENSE_DIMENSION_LIMIT = 5200
_LANCZOS_COUNT = 8


@dataclass(frozen=True)
class OracleEigenvalues:
    """Eigenvalues of a truncated operator split by band side.

    ``below`` and ``above`` hold the eigenvalues beyond ``margin`` of the
    respective band edge, ascending.  The margin absorbs the discrete
    band's finite-size wobble: band states of the truncation scatter
    within O(width/n) of the continuum band, so only eigenvalues clearing
    the margin are attributable to discrete spectrum.
    """

    below: tuple[float, ...]
    above: tuple[float, ...]
    margin: float


@dataclass(frozen=True)
class MomentumGridOperator:
    """Pair operator restricted to antisymmetric modes of an n x n grid.

    The grid holds momenta p_i = -pi + 2 pi j / n.  Antisymmetry pairs p
    with -p, so one representative per pair is kept (the four self-paired
    momenta with components in {-pi, 0} carry no antisymmetric amplitude
    and are dropped), giving dimension (n^2 - 4) / 2.  On representatives
    the operator is diag(dispersion) plus, for each interaction channel m,
    the rank-one update 2 h^2 g_m |a_m><a_m| with h = 2 pi / n; the factor
    2 h^2 is the quadrature weight of the full grid folded onto the half.
    """

    coupling: CouplingPair
    k: Quasimomentum
    n: int
    diag: np.ndarray
    basis: np.ndarray
    weights: np.ndarray

    @property
    def dimension(self) -> int:
        return self.diag.shape[0]

    @cached_property
    def folded_weights(self) -> np.ndarray:
        h = 2.0 * np.pi / self.n
        return 2.0 * h * h * self.weights

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.diag * x + self.basis @ (self.folded_weights * (self.basis.T @ x))

    def as_dense(self) -> np.ndarray:
        """Materialize the full matrix; quadratic memory in dimension."""
        mat = np.diag(self.diag).astype(float)
        for gm, column in zip(self.folded_weights, self.basis.T):
            mat += gm * np.outer(column, column)
        return mat


def _half_grid_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (i, j) with (i, j) < ((n-i) % n, (n-j) % n), vectorized."""
    i = np.repeat(np.arange(n), n)
    j = np.tile(np.arange(n), n)
    ni, nj = (n - i) % n, (n - j) % n
    keep = (i < ni) | ((i == ni) & (j < nj))
    return i[keep], j[keep]


def build_momentum_operator(coupling: CouplingPair, k: "Quasimomentum | None" = None,
                            n: int = 64) -> MomentumGridOperator:
    """Assemble the antisymmetric momentum-grid truncation.

    Parameters
    ----------
    coupling : CouplingPair
        Interaction strengths.
    k : Quasimomentum, optional
        Total quasimomentum (default 0).  The degenerate point is rejected.
    n : int
        Modes per axis; must be even and at least 8.
    """
    k = k if k is not None else Quasimomentum()
    require_nondegenerate(k)
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    if n < 8 or n % 2:
        raise ValueError(f"n must be even and at least 8, got {n}")

    i, j = _half_grid_indices(n)
    p = -np.pi + 2.0 * np.pi * np.arange(n) / n
    q1, q2 = p[i], p[j]
    diag = dispersion(k, q1, q2)

    n1 = 1.0 / (2.0 * np.pi)
    n3 = 1.0 / (SQRT2 * np.pi)
    s1, s2 = np.sin(q1), np.sin(q2)
    d1, d2 = np.sin(2.0 * q1), np.sin(2.0 * q2)
    c1, c2 = np.cos(q1), np.cos(q2)
    basis = np.column_stack([
        n1 * (s1 + s2),
        n1 * (d1 + d2),
        n3 * (s1 * c2 + s2 * c1),
        n1 * (s1 - s2),
        n1 * (d1 - d2),
        n3 * (s1 * c2 - s2 * c1),
    ])
    return MomentumGridOperator(coupling, k, n, diag, basis,
                                channel_weights(coupling))


def discrete_eigenvalues(op: MomentumGridOperator,
                         margin: "float | None" = None) -> OracleEigenvalues:
    """Eigenvalues of the truncation clearing a margin around the band.

    The default margin is 5 * width / n with width the band width at the
    operator's quasimomentum.  Dimensions up to about 5000 diagonalize
    densely; larger ones use a matrix-free Lanczos pass from each end of
    the spectrum (8 eigenvalues per end, ample for the at-most-6 discrete
    states).
    """
    e_min, e_max = band_edges(op.k)
    if margin is None:
        margin = 5.0 * (e_max - e_min) / op.n
    if op.dimension <= _DENSE_DIMENSION_LIMIT:
        eigs = np.linalg.eigvalsh(op.as_dense())
    else:
        lin = LinearOperator((op.dimension, op.dimension),
                             matvec=op.matvec, dtype=float)
        lo = eigsh(lin, k=_LANCZOS_COUNT, which="SA", return_eigenvectors=False)
        hi = eigsh(lin, k=_LANCZOS_COUNT, which="LA", return_eigenvectors=False)
        eigs = np.sort(np.concatenate([lo, hi]))
    below = tuple(float(v) for v in eigs[eigs < e_min - margin])
    above = tuple(float(v) for v in eigs[eigs > e_max + margin])
    return OracleEigenvalues(below, above, float(margin))


@dataclass(frozen=True)
class PositionBoxOperator:
    """Pair operator on antisymmetric relative-coordinate sites in a box.

    Sites s = (x, y) with |x|, |y| <= box_radius, excluding the origin
    (Pauli exclusion) and keeping one representative of each (s, -s) pair.
    The diagonal is 4 + v(s) with v the short-range potential: lam/2 on
    the four nearest neighbors, mu on the diagonal neighbors, mu/2 on the
    straight next-nearest neighbors.  Hopping to s +- e_i carries
    amplitude -cos(K_i / 2); hops landing on the origin vanish, hops
    landing on the mirrored half fold back with a sign flip, and hops
    leaving the box are dropped (Dirichlet wall).
    """

    coupling: CouplingPair
    k: Quasimomentum
    box_radius: int
    matrix: csr_matrix
    sites: tuple[tuple[int, int], ...]

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def _potential(coupling: CouplingPair, x: int, y: int) -> float:
    ax, ay = abs(x), abs(y)
    if ax + ay == 1:
        return coupling.lam / 2.0
    if ax == 1 and ay == 1:
        return coupling.mu
    if ax + ay == 2:
        return coupling.mu / 2.0
    return 0.0


def build_position_operator(coupling: CouplingPair, k: "Quasimomentum | None" = None,
                            box_radius: int = 30) -> PositionBoxOperator:
    """Assemble the sparse position-space truncation.

    ``box_radius`` must be at least 10: discrete eigenstates decay
    exponentially but need room to do so before the Dirichlet wall, and
    smaller boxes visibly shift near-edge eigenvalues.
    """
    k = k if k is not None else Quasimomentum()
    require_nondegenerate(k)
    if not isinstance(box_radius, int) or isinstance(box_radius, bool):
        raise TypeError(f"box_radius must be an int, got {type(box_radius).__name__}")
    if box_radius < 10:
        raise ValueError(f"box_radius must be at least 10, got {box_radius}")

    radius = box_radius
    position = {}
    sites = []
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            if (x, y) == (0, 0) or (x, y) <= (-x, -y):
                continue
            position[(x, y)] = len(sites)
            sites.append((x, y))

    c1, c2 = k.half_cosines
    amplitudes = ((1, 0, -c1), (-1, 0, -c1), (0, 1, -c2), (0, -1, -c2))
    rows, cols, vals = [], [], []
    for (x, y), r in position.items():
        rows.append(r)
        cols.append(r)
        vals.append(4.0 + _potential(coupling, x, y))
        for dx, dy, amp in amplitudes:
            t = (x + dx, y + dy)
            if t == (0, 0):
                continue
            col = position.get(t)
            if col is None:
                col = position.get((-t[0], -t[1]))
                amp = -amp
            if col is not None:
                rows.append(r)
                cols.append(col)
                vals.append(amp)
    dim = len(sites)
    matrix = csr_matrix((vals, (rows, cols)), shape=(dim, dim))
    return PositionBoxOperator(coupling, k, radius, matrix, tuple(sites))


def extreme_eigenvalues(op: PositionBoxOperator, count: int = _LANCZOS_COUNT,
                        return_vectors: bool = False):
    """Lowest and highest ``count`` eigenvalues of the box operator.

    Returns (low, high) ascending arrays, or with ``return_vectors`` the
    tuple (low, low_vectors, high, high_vectors) with vectors in matching
    column order.
    """
    if count < 1 or count >= op.dimension:
        raise ValueError(
            f"count must be in [1, {op.dimension - 1}], got {count}")
    if return_vectors:
        lo, lo_vecs = eigsh(op.matrix, k=count, which="SA")
        hi, hi_vecs = eigsh(op.matrix, k=count, which="LA")
        lo_order = np.argsort(lo)
        hi_order = np.argsort(hi)
        return (lo[lo_order], lo_vecs[:, lo_order],
                hi[hi_order], hi_vecs[:, hi_order])
    lo = eigsh(op.matrix, k=count, which="SA", return_eigenvectors=False)
    hi = eigsh(op.matrix, k=count, which="LA", return_eigenvectors=False)
    return np.sort(lo), np.sort(hi)


def boundary_amplitude_ratio(op: PositionBoxOperator, vector: np.ndarray) -> float:
    """Largest wavefunction amplitude on the box wall relative to its peak.

    A genuine discrete eigenstate decays exponentially, so a trustworthy
    box gives a ratio well below 1e-6; band-like states pinned by the wall
    give ratios of order one.
    """
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (op.dimension,):
        raise ValueError(
            f"vector must have shape ({op.dimension},), got {vector.shape}")
    peak = float(np.max(np.abs(vector)))
    if peak == 0.0:
        raise FermipairError("zero vector has no amplitude ratio")
    radius = op.box_radius
    on_wall = np.array([max(abs(x), abs(y)) == radius for x, y in op.sites])
    if not np.any(on_wall):
        return 0.0
    return float(np.max(np.abs(vector[on_wall])) / peak)
