"""Welfare effects of providing the public signal.

All sign conditions reduce to closed-form statistics of centralities and
degrees.  Signs are decided with a small dead band so that analytic zeros
are reported as "boundary" instead of picking up floating-point noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centrality import katz_bonacich
from .equilibrium import SignalParams
from .errors import NoWitnessError, NumericalError
from .graphs import (
    IntensityProfile,
    Network,
    core_periphery,
    empty,
    normalized_network,
    require_valid,
)

SIGN_DEAD_BAND = 1e-12


def sign_of(x: float, band: float = SIGN_DEAD_BAND) -> str:
    """'negative', 'positive', or 'boundary' when |x| falls inside the dead band."""
    if abs(x) <= band:
        return "boundary"
    return "negative" if x < 0.0 else "positive"


@dataclass(frozen=True)
class WelfareReport:
    """Per-agent and aggregate effects of switching the public signal on."""

    delta_u: np.ndarray
    delta_w: float
    statistic_s: float
    statistic_s_prime: float
    marginal_sign: str
    harmed: tuple[int, ...]
    amplifiers: tuple[int, ...]


@dataclass(frozen=True)
class MarginalReport:
    """Ingredients of the sign of dW/dtau_y at the current precisions."""

    statistic_s: float
    statistic_s_prime: float
    gap: float
    sign: str


@dataclass(frozen=True)
class AltWelfareReport:
    """Aggregate sign statistic for the separable-intensity payoff model."""

    statistic: float
    sign: str
    per_agent_terms: np.ndarray


@dataclass(frozen=True)
class SharingReport:
    """Whether one agent keeping its extra signal private is socially wasteful."""

    holder: int
    holder_prefers_private: bool
    society_prefers_public: bool
    inefficient: bool
    holder_statistic: float
    statistic_s: float


@dataclass(frozen=True)
class ReversalWitness:
    """A pair of nested networks whose welfare effects have opposite signs."""

    base: Network
    augmented: Network
    l: int
    m: int
    alpha: float
    beta: float
    delta_w_base: float
    delta_w_augmented: float


def welfare_statistic(net: Network, gamma: float) -> float:
    """S(gamma) = sum_i c_i ((1 - d_i_in) c_i + 2 d_i_in); its sign is the sign of the welfare effect."""
    c = katz_bonacich(net, gamma).c
    d_in = net.in_degrees
    return float(np.sum(c * ((1.0 - d_in) * c + 2.0 * d_in)))


def welfare_statistic_slope(net: Network, gamma: float) -> float:
    """dS/dgamma, expressed through the centrality sensitivity vector."""
    prof = katz_bonacich(net, gamma)
    d_in = net.in_degrees
    return float(
        2.0 / gamma * np.sum((prof.c_sens - prof.c) * ((1.0 - d_in) * prof.c + d_in))
    )


def delta_payoffs(net: Network, sig: SignalParams) -> tuple[np.ndarray, tuple[int, ...]]:
    """Per-agent payoff change from the public signal, plus who is harmed.

    Agent i loses exactly when c_i^2 < sum_j g_ij c_j (c_j - 2): its own
    centrality is too small next to the aggregate centrality of the agents
    it tracks.
    """
    sig.require_public()
    gamma = sig.gamma
    c = katz_bonacich(net, gamma).c
    own = c**2
    neighbor = net.weights @ (c * (c - 2.0))
    delta_u = (1.0 - gamma) * (own - neighbor) / sig.tau_x
    harmed = tuple(
        int(i) for i in range(net.n) if sign_of(float(own[i] - neighbor[i])) == "negative"
    )
    return delta_u, harmed


def delta_welfare(net: Network, sig: SignalParams) -> WelfareReport:
    """Aggregate welfare change, its sign statistic, and diagnostics.

    delta_w = tau_x^-1 (1 - gamma) S(gamma) and must match the sum of the
    per-agent changes to 1e-10.  Amplifiers lists agents meeting the
    necessary condition for an aggregate loss: in-degree above one combined
    with centrality above 2 d_in / (d_in - 1).
    """
    sig.require_public()
    gamma = sig.gamma
    delta_u, harmed = delta_payoffs(net, sig)
    s = welfare_statistic(net, gamma)
    s_prime = welfare_statistic_slope(net, gamma)
    delta_w = (1.0 - gamma) * s / sig.tau_x
    gap = abs(delta_w - float(delta_u.sum()))
    if gap > 1e-10:
        raise NumericalError("aggregate welfare does not match per-agent sum", residual=gap)
    c = katz_bonacich(net, gamma).c
    d_in = net.in_degrees
    amplifiers = tuple(
        int(i)
        for i in range(net.n)
        if d_in[i] > 1.0 and c[i] > 2.0 * d_in[i] / (d_in[i] - 1.0)
    )
    return WelfareReport(
        delta_u=delta_u,
        delta_w=delta_w,
        statistic_s=s,
        statistic_s_prime=s_prime,
        marginal_sign=sign_of(s - (1.0 - gamma) * s_prime),
        harmed=harmed,
        amplifiers=amplifiers,
    )


def marginal_value(net: Network, sig: SignalParams) -> MarginalReport:
    """Sign of dW/dtau_y: negative exactly when S(gamma) < (1 - gamma) S'(gamma)."""
    sig.require_public()
    gamma = sig.gamma
    s = welfare_statistic(net, gamma)
    s_prime = welfare_statistic_slope(net, gamma)
    gap = s - (1.0 - gamma) * s_prime
    return MarginalReport(
        statistic_s=s, statistic_s_prime=s_prime, gap=gap, sign=sign_of(gap)
    )


def alt_delta_welfare(
    net: Network, r: IntensityProfile, sig: SignalParams
) -> AltWelfareReport:
    """Welfare sign statistic for the separable-intensity payoff model.

    Uses centralities on the normalized network; agent i contributes
    c_i ((K_i - d_i_in_r) c_i + 2 d_i_in_r) with total payoff weight
    K_i = 1 - r_i + r_i d_i_out and intensity-weighted in-degree
    d_i_in_r = sum_j r_j g_ji.
    """
    sig.require_public()
    tilde = normalized_network(net, r)
    c = katz_bonacich(tilde, sig.gamma).c
    k = 1.0 - r.r + r.r * net.out_degrees
    d_in_r = net.weights.T @ r.r
    terms = c * ((k - d_in_r) * c + 2.0 * d_in_r)
    total = float(terms.sum())
    terms.flags.writeable = False
    return AltWelfareReport(statistic=total, sign=sign_of(total), per_agent_terms=terms)


def sharing_inefficiency(net: Network, sig: SignalParams, holder: int) -> SharingReport:
    """Is it wasteful for the holder to keep its extra signal private?

    The holder prefers privacy when its harm statistic
    c_h^2 - sum_j g_hj c_j (c_j - 2) falls below 1; society still prefers
    disclosure when S(gamma) exceeds 1 + d_h_in.  Inefficiency is the
    conjunction.
    """
    sig.require_public()
    require_valid(net)
    if not 0 <= holder < net.n:
        raise ValueError(f"holder index {holder} outside 0..{net.n - 1}")
    gamma = sig.gamma
    c = katz_bonacich(net, gamma).c
    holder_stat = float(c[holder] ** 2 - net.weights[holder] @ (c * (c - 2.0)))
    s = welfare_statistic(net, gamma)
    prefers_private = sign_of(holder_stat - 1.0) == "negative"
    prefers_public = sign_of(s - (1.0 + float(net.in_degrees[holder]))) == "positive"
    return SharingReport(
        holder=holder,
        holder_prefers_private=prefers_private,
        society_prefers_public=prefers_public,
        inefficient=prefers_private and prefers_public,
        holder_statistic=holder_stat,
        statistic_s=s,
    )


def prefers_split_signal(alpha: float, beta: float, gamma: float) -> bool:
    """On the three-agent chain, does agent 0 prefer agent 2's signal made independent?

    True when (1 + gamma (alpha - beta))^2 - alpha (2 gamma beta - 1) falls
    below (1 - gamma beta)^2 ((1 + gamma alpha)^2 + alpha); the right side is
    positive, so being harmed by the public signal implies this preference.
    """
    lhs = (1.0 + gamma * (alpha - beta)) ** 2 - alpha * (2.0 * gamma * beta - 1.0)
    rhs = (1.0 - gamma * beta) ** 2 * ((1.0 + gamma * alpha) ** 2 + alpha)
    return sign_of(lhs - rhs) == "negative"


_REVERSAL_GRID = tuple(round(0.05 * k, 10) for k in range(1, 20))


def connectivity_reversal(n: int, gamma: float) -> ReversalWitness:
    """Find nested networks where adding links flips the welfare effect negative.

    The base is the empty network (always a strict welfare gain).  The
    augmented candidate is the two-core periphery family on the same agents;
    the (alpha, beta) grid {0.05, ..., 0.95}^2 is scanned in row-major order
    and the first candidate with a negative welfare effect wins.  Low gamma
    leaves the loss region empty, which raises NoWitnessError.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    sig = SignalParams.from_gamma(gamma)
    base = empty(n)
    delta_base = delta_welfare(base, sig).delta_w
    l, m = 2, n - 2
    for alpha in _REVERSAL_GRID:
        for beta in _REVERSAL_GRID:
            candidate = core_periphery(l, m, alpha, beta)
            delta_candidate = delta_welfare(candidate, sig).delta_w
            if sign_of(delta_candidate) == "negative":
                return ReversalWitness(
                    base=base,
                    augmented=candidate,
                    l=l,
                    m=m,
                    alpha=alpha,
                    beta=beta,
                    delta_w_base=delta_base,
                    delta_w_augmented=delta_candidate,
                )
    raise NoWitnessError(
        f"no welfare-reducing (alpha, beta) on the 0.05-step grid at gamma={gamma}; "
        "the loss region is empty at low gamma, try a larger value"
    )
