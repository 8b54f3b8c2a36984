"""Closed-form parameter regions of the two-tier family, as scannable grids.

Three regions over (alpha, beta) at fixed gamma:

* G - the peripheral agent of the three-agent chain is harmed by the
  public signal;
* H - aggregate welfare of an l-core / m-periphery network falls
  (shrinks toward G as l/m grows);
* J - one peripheral holder keeps its signal private even though
  disclosure would raise welfare.

Membership uses strict inequalities; boundary equality is non-membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

__all__ = [
    "RegionGrid",
    "harm_statistic",
    "harm_statistic_floor",
    "harm_floor_argmin",
    "harm_gamma_threshold",
    "normalize_kind",
    "make_axis",
    "scan",
    "region_csv",
    "region_tsv",
    "KINDS",
]

KINDS = ("G", "H", "J")

_ALIASES = {
    "g": "G",
    "harm": "G",
    "h": "H",
    "welfare": "H",
    "j": "J",
    "sharing": "J",
}


def normalize_kind(kind: str) -> str:
    resolved = _ALIASES.get(kind.lower(), kind)
    if resolved not in KINDS:
        raise ValueError(f"unknown region kind {kind!r} (expected one of {KINDS})")
    return resolved


def harm_statistic(alpha, beta, gamma):
    """(1 + gamma (alpha - beta))^2 - alpha (2 gamma beta - 1); negative means the peripheral agent is harmed."""
    return (1.0 + gamma * (alpha - beta)) ** 2 - alpha * (2.0 * gamma * beta - 1.0)


def harm_statistic_floor(alpha, gamma):
    """Infimum of the harm statistic over beta in [0, 1): gamma^2 a^2 + (1 - 2 gamma^2) a + (1 - gamma)^2."""
    return gamma**2 * alpha**2 + (1.0 - 2.0 * gamma**2) * alpha + (1.0 - gamma) ** 2


def harm_floor_argmin(gamma: float) -> float:
    """Vertex of the floor in alpha: (2 gamma^2 - 1) / (2 gamma^2), interior once gamma > 1/sqrt(2)."""
    return (2.0 * gamma**2 - 1.0) / (2.0 * gamma**2)


def harm_gamma_threshold() -> float:
    """Smallest gamma with a nonempty harm region: (1 + sqrt(5)) / 4."""
    return (1.0 + sqrt(5.0)) / 4.0


@dataclass(frozen=True)
class RegionGrid:
    """Boolean membership over an (alpha, beta) grid at fixed gamma.

    membership[p, q] is the predicate at (alpha_axis[p], beta_axis[q]).
    """

    kind: str
    gamma: float
    l: int | None
    m: int | None
    alpha_axis: np.ndarray
    beta_axis: np.ndarray
    membership: np.ndarray

    @property
    def member_count(self) -> int:
        return int(self.membership.sum())


def make_axis(start: float, stop: float, step: float) -> np.ndarray:
    """Grid points start, start+step, ... strictly below stop."""
    count = int(np.ceil((stop - start) / step - 1e-9))
    return np.round(start + step * np.arange(count), 12)


# Zoomed beta axis for G/H: the interesting boundary hugs beta -> 1, and the
# harm region first enters the grid only once beta can exceed ~0.999.
DEFAULT_ALPHA_AXIS = make_axis(0.0, 1.0, 0.01)
DEFAULT_BETA_AXIS_ZOOM = make_axis(0.8, 1.0, 0.0005)
DEFAULT_BETA_AXIS_FULL = make_axis(0.0, 1.0, 0.01)


def scan(
    kind: str,
    gamma: float,
    l: int | None = None,
    m: int | None = None,
    alpha_axis: np.ndarray | None = None,
    beta_axis: np.ndarray | None = None,
) -> RegionGrid:
    """Evaluate one region's membership pointwise over the grid.

    H and J need the tier sizes l and m (H only through the ratio l/m).
    Default grids: alpha in [0, 1) step 0.01 for all kinds; beta in
    [0.8, 1) step 0.0005 for G/H and [0, 1) step 0.01 for J.
    """
    kind = normalize_kind(kind)
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    if kind in ("H", "J"):
        if l is None or m is None:
            raise ValueError(f"region {kind} needs both l and m")
        if l < 2 or m < 1:
            raise ValueError(f"need l >= 2 and m >= 1, got l={l}, m={m}")
    alpha = np.asarray(DEFAULT_ALPHA_AXIS if alpha_axis is None else alpha_axis, dtype=float)
    if beta_axis is None:
        beta = DEFAULT_BETA_AXIS_ZOOM if kind in ("G", "H") else DEFAULT_BETA_AXIS_FULL
    else:
        beta = np.asarray(beta_axis, dtype=float)
    a_grid, b_grid = np.meshgrid(alpha, beta, indexing="ij")
    stat = harm_statistic(a_grid, b_grid, gamma)
    if kind == "G":
        member = stat < 0.0
    elif kind == "H":
        member = stat < -(l / m) * (1.0 - b_grid * (2.0 * gamma * b_grid - 1.0))
    else:
        privacy_bar = (1.0 - b_grid * gamma) ** 2
        society = m * stat + l * (1.0 - b_grid * (2.0 * gamma * b_grid - 1.0))
        member = (stat < privacy_bar) & (privacy_bar < society)
    return RegionGrid(
        kind=kind,
        gamma=float(gamma),
        l=l if kind in ("H", "J") else None,
        m=m if kind in ("H", "J") else None,
        alpha_axis=alpha,
        beta_axis=beta,
        membership=member,
    )


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def region_csv(grid: RegionGrid) -> str:
    """Serialize as CSV: one metadata header block, then alpha,beta,member rows."""
    lines = ["kind,gamma,l,m"]
    lines.append(
        f"{grid.kind},{_fmt(grid.gamma)},"
        f"{'' if grid.l is None else grid.l},{'' if grid.m is None else grid.m}"
    )
    lines.append("alpha,beta,member")
    for p, a in enumerate(grid.alpha_axis):
        for q, b in enumerate(grid.beta_axis):
            lines.append(f"{_fmt(a)},{_fmt(b)},{int(grid.membership[p, q])}")
    return "\n".join(lines) + "\n"


def region_tsv(grid: RegionGrid) -> str:
    """Gnuplot-ready TSV: blocks per alpha value separated by blank lines."""
    header = (
        f"# kind={grid.kind} gamma={_fmt(grid.gamma)}"
        f" l={'' if grid.l is None else grid.l} m={'' if grid.m is None else grid.m}"
    )
    blocks = [header]
    for p, a in enumerate(grid.alpha_axis):
        rows = [
            f"{_fmt(a)}\t{_fmt(b)}\t{int(grid.membership[p, q])}"
            for q, b in enumerate(grid.beta_axis)
        ]
        blocks.append("\n".join(rows))
    return "\n\n".join(blocks) + "\n"
