"""File-rendered figures for the boundary curves and region sweeps.

Rendering uses the non-interactive matplotlib backend and writes whatever
format the file extension implies (svg, png, pdf).  Both figures put lam
on the horizontal axis and mu on the vertical axis, so the boundary
curves lam = curve(mu) appear as parametric polylines and their vertical
asymptotes in mu as horizontal guide lines.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .atlas import CurveBranch, boundary_curves, _poles

__all__ = ["save_curve_figure", "save_region_figure"]

_SIDE_STYLE = {"below": ("tab:blue", "solid"), "above": ("tab:red", "dashed")}


def save_curve_figure(path: str, branches: "Sequence[CurveBranch] | None" = None,
                      mu_range: tuple[float, float] = (-12.0, 12.0),
                      samples: int = 961,
                      lam_window: tuple[float, float] = (-40.0, 40.0)) -> str:
    """Render the phase-boundary curves of both band sides to a file.

    Parameters
    ----------
    path : str
        Output file; the extension selects the format.
    branches : sequence of CurveBranch, optional
        Pre-sampled branches to draw; by default both sides are sampled
        over ``mu_range`` with ``samples`` points.
    lam_window : (float, float)
        Horizontal axis limits; curve samples outside are clipped by the
        axes, not dropped.

    Returns
    -------
    str
        The path written.
    """
    if branches is None:
        branches = [b for side in ("below", "above")
                    for b in boundary_curves(side, mu_range, samples)]

    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    seen = set()
    for branch in branches:
        color, style = _SIDE_STYLE[branch.side]
        label = f"{branch.side}-band boundary" if branch.side not in seen else None
        seen.add(branch.side)
        ax.plot(branch.lam, branch.mu, color=color, linestyle=style, label=label)
    for side in seen:
        color, _ = _SIDE_STYLE[side]
        for pole in _poles(side):
            ax.axhline(pole, color=color, linestyle="dotted", linewidth=0.8)
    ax.set_xlim(*lam_window)
    ax.set_xlabel("lambda")
    ax.set_ylabel("mu")
    ax.set_title("Eigenvalue-count boundaries in the coupling plane")
    if seen:
        ax.legend(loc="upper left", fontsize="small")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_region_figure(path: str,
                       rows: Iterable[tuple[float, float, str]]) -> str:
    """Render a classified coupling sweep as a colored scatter map.

    Parameters
    ----------
    path : str
        Output file; the extension selects the format.
    rows : iterable of (lam, mu, region)
        Sweep points with their region tags; boundary points may carry
        any distinct tag (e.g. 'boundary') and get their own color.

    Returns
    -------
    str
        The path written.
    """
    rows = list(rows)
    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    tags = sorted({tag for _, _, tag in rows})
    cmap = plt.get_cmap("tab10" if len(tags) <= 10 else "tab20")
    for index, tag in enumerate(tags):
        lams = [lam for lam, _, t in rows if t == tag]
        mus = [mu for _, mu, t in rows if t == tag]
        ax.scatter(lams, mus, s=9, color=cmap(index % cmap.N), label=tag)
    ax.set_xlabel("lambda")
    ax.set_ylabel("mu")
    ax.set_title("Eigenvalue-count regions")
    if tags:
        ax.legend(loc="center left", bbox_to_anchor=(1.01, 0.5),
                  fontsize="small", frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
