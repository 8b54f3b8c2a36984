"""Katz-Bonacich centralities, their sensitivities, and spectral diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, lu_factor, lu_solve

from .errors import NumericalError
from .graphs import Network, require_valid

RESIDUAL_TOL = 1e-10

_POWER_MAX_ITER = 10_000
_POWER_TOL = 1e-12


@dataclass(frozen=True)
class CentralityProfile:
    """Centrality vector c and its sensitivity companion on a fixed network.

    c solves (I - gamma G) c = 1, summing gamma-discounted walk counts from
    each agent.  c_sens solves (I - gamma G) c_sens = c; the derivative of c
    with respect to gamma equals (c_sens - c) / gamma.
    """

    gamma: float
    c: np.ndarray
    c_sens: np.ndarray


@dataclass(frozen=True)
class SpectralReport:
    """Max row sum (a hard spectral-radius bound) and a power-iteration estimate."""

    bound: float
    rho_estimate: float
    iterations: int


def katz_bonacich(net: Network, gamma: float) -> CentralityProfile:
    """Solve both centrality systems with a single dense LU factorization.

    Raises NumericalError if the residual of the first system exceeds
    RESIDUAL_TOL or any centrality falls below 1 - 1e-12, which cannot
    happen for a validated network and gamma in (0, 1).
    """
    require_valid(net)
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    n = net.n
    system = np.eye(n) - gamma * net.weights
    try:
        factors = lu_factor(system)
        c = lu_solve(factors, np.ones(n))
        c_sens = lu_solve(factors, c)
    except LinAlgError as exc:
        raise NumericalError(f"centrality solve failed: {exc}") from exc
    residual = float(np.max(np.abs(system @ c - 1.0)))
    if not np.isfinite(residual) or residual > RESIDUAL_TOL:
        raise NumericalError("centrality residual above tolerance", residual=residual)
    if float(np.min(c)) < 1.0 - 1e-12:
        raise NumericalError(f"centrality below 1 at agent {int(np.argmin(c))}")
    c.flags.writeable = False
    c_sens.flags.writeable = False
    return CentralityProfile(gamma=float(gamma), c=c, c_sens=c_sens)


def spectral_bound(net: Network) -> SpectralReport:
    """Max row sum plus a deterministic power-iteration spectral-radius estimate.

    Iteration starts from the all-ones vector and stops once the Rayleigh
    quotient moves by at most 1e-12, or after 10,000 rounds.
    """
    require_valid(net)
    w = net.weights
    bound = float(np.max(net.out_degrees))
    v = np.ones(net.n)
    estimate = 0.0
    iterations = 0
    for iterations in range(1, _POWER_MAX_ITER + 1):
        u = w @ v
        norm = float(np.linalg.norm(u))
        if norm == 0.0:
            estimate = 0.0
            break
        current = float((v @ u) / (v @ v))
        v = u / norm
        if abs(current - estimate) <= _POWER_TOL and iterations > 1:
            estimate = current
            break
        estimate = current
    return SpectralReport(bound=bound, rho_estimate=estimate, iterations=iterations)
