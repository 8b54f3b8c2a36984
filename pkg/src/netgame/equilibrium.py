"""Linear equilibrium strategies and exact payoff moments.

Strategies are linear with slopes summing to one per agent, so each agent's
action-state gap X_i = a_i - theta is a fixed mix of the signal noises and
every expected payoff below is free of the payoff state.  The baseline
information structure gives everyone a common noisy signal; the variants
cover a split common signal (third agent gets an independent one), a signal
kept private by one holder, the separable-intensity payoff model, and the
welfare-efficient profile.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centrality import katz_bonacich
from .errors import NumericalError, UnsupportedVariantError
from .graphs import (
    IntensityProfile,
    Network,
    fictitious_network,
    normalized_network,
    require_valid,
)

FOC_TOL = 1e-10

VARIANTS = ("baseline", "i_prime", "i_dagger", "alt_payoff", "efficient")
PAYOFF_VARIANTS = ("baseline", "no_public")


@dataclass(frozen=True)
class SignalParams:
    """Private and public signal precisions.

    gamma = tau_x / (tau_x + tau_y) is the relative weight of private
    information; by convention gamma is 1.0 when there is no public signal.
    """

    tau_x: float
    tau_y: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.tau_x) and self.tau_x > 0.0):
            raise ValueError(f"tau_x must be positive, got {self.tau_x}")
        if not (np.isfinite(self.tau_y) and self.tau_y >= 0.0):
            raise ValueError(f"tau_y must be nonnegative, got {self.tau_y}")

    @property
    def gamma(self) -> float:
        if self.tau_y == 0.0:
            return 1.0
        return self.tau_x / (self.tau_x + self.tau_y)

    @classmethod
    def from_gamma(cls, gamma: float, tau_x: float = 1.0) -> "SignalParams":
        if not 0.0 < gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
        return cls(tau_x=tau_x, tau_y=tau_x * (1.0 - gamma) / gamma)

    def require_public(self) -> None:
        if self.tau_y <= 0.0:
            raise ValueError("this analysis needs a public signal (tau_y > 0)")


@dataclass(frozen=True)
class EquilibriumProfile:
    """Per-agent linear strategy slopes for one information-structure variant.

    slopes_public[i] weighs agent i's second signal (the common one, or the
    independent replacement the split variant hands agent 2); it is zero for
    agents who observe no such signal.  slopes_private[i] weighs the agent's
    own private signal.  The two always sum to one.
    """

    variant: str
    slopes_public: np.ndarray
    slopes_private: np.ndarray
    holder: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        pub = np.array(self.slopes_public, dtype=float)
        prv = np.array(self.slopes_private, dtype=float)
        if pub.shape != prv.shape or pub.ndim != 1:
            raise ValueError("slope vectors must be 1-D and of equal length")
        if np.max(np.abs(pub + prv - 1.0)) > 1e-12:
            raise ValueError("slopes must sum to one for every agent")
        pub.flags.writeable = False
        prv.flags.writeable = False
        object.__setattr__(self, "slopes_public", pub)
        object.__setattr__(self, "slopes_private", prv)

    @property
    def n(self) -> int:
        return self.slopes_public.shape[0]


@dataclass(frozen=True)
class PayoffReport:
    """Expected equilibrium payoffs and the second moments behind them."""

    per_agent: np.ndarray
    aggregate: float
    moments: np.ndarray


def signal_groups(profile: EquilibriumProfile) -> np.ndarray:
    """Which common noise each agent's second signal loads on (0 = shared, 1 = split)."""
    groups = np.zeros(profile.n, dtype=int)
    if profile.variant == "i_prime":
        groups[2] = 1
    return groups


def _profile(variant: str, b: np.ndarray, holder: int | None = None) -> EquilibriumProfile:
    return EquilibriumProfile(
        variant=variant, slopes_public=b, slopes_private=1.0 - b, holder=holder
    )


def solve_equilibrium(net: Network, sig: SignalParams) -> EquilibriumProfile:
    """Unique linear equilibrium under the shared public signal.

    Each public slope is (1 - gamma) times the agent's centrality; the
    fixed-point condition b_i - gamma * sum_j g_ij b_j = 1 - gamma is
    re-checked to FOC_TOL before returning.
    """
    sig.require_public()
    gamma = sig.gamma
    b = (1.0 - gamma) * katz_bonacich(net, gamma).c
    _check_foc(net, gamma, b)
    return _profile("baseline", b)


def _check_foc(net: Network, gamma: float, b: np.ndarray) -> None:
    residual = float(np.max(np.abs(b - gamma * (net.weights @ b) - (1.0 - gamma))))
    if not np.isfinite(residual) or residual > FOC_TOL:
        raise NumericalError("equilibrium fixed point residual above tolerance", residual=residual)


def moments(net: Network, sig: SignalParams) -> np.ndarray:
    """Matrix of E[X_i X_j] at the baseline equilibrium.

    Off the diagonal the entry is (1-gamma)^2 c_i c_j / tau_y; on it,
    (1-gamma) c_i (c_i - 2) / tau_x + 1 / tau_x.  The weighted-covariance
    identity sum_j g_ij E[X_i X_j] = (1-gamma) c_i (c_i - 1) / tau_x, a
    consequence of centrality self-referentiality, is verified to 1e-10.
    """
    sig.require_public()
    gamma = sig.gamma
    c = katz_bonacich(net, gamma).c
    cross = (1.0 - gamma) ** 2 * np.outer(c, c) / sig.tau_y
    second = cross.copy()
    np.fill_diagonal(second, ((1.0 - gamma) * c * (c - 2.0) + 1.0) / sig.tau_x)
    lhs = (net.weights * cross).sum(axis=1)
    rhs = (1.0 - gamma) * c * (c - 1.0) / sig.tau_x
    gap = float(np.max(np.abs(lhs - rhs)))
    if gap > 1e-10:
        raise NumericalError("weighted-covariance identity failed", residual=gap)
    second.flags.writeable = False
    return second


def payoffs(net: Network, sig: SignalParams, variant: str = "baseline") -> PayoffReport:
    """Expected per-agent payoffs, in closed form.

    baseline: tau_x^-1 (1-gamma) (c_i^2 - sum_j g_ij c_j (c_j - 2))
    - tau_x^-1 (1 + d_i_out).  no_public: -tau_x^-1 (1 + d_i_out), with
    every agent tracking only its own signal.
    """
    if variant not in PAYOFF_VARIANTS:
        raise ValueError(f"variant must be one of {PAYOFF_VARIANTS}, got {variant!r}")
    require_valid(net)
    d_out = net.out_degrees
    if variant == "no_public":
        per_agent = -(1.0 + d_out) / sig.tau_x
        second = np.eye(net.n) / sig.tau_x
        return PayoffReport(per_agent, float(per_agent.sum()), second)
    sig.require_public()
    gamma = sig.gamma
    c = katz_bonacich(net, gamma).c
    gain = c**2 - net.weights @ (c * (c - 2.0))
    per_agent = (1.0 - gamma) * gain / sig.tau_x - (1.0 + d_out) / sig.tau_x
    return PayoffReport(per_agent, float(per_agent.sum()), moments(net, sig))


def as_abc(net: Network) -> tuple[float, float]:
    """Read off (alpha, beta) when the network is the three-agent chain; raise otherwise."""
    w = net.weights
    if net.n != 3:
        raise UnsupportedVariantError("the split-signal variant needs exactly 3 agents")
    off_pattern = [(0, 2), (1, 0), (2, 0)]
    if any(w[i, j] != 0.0 for i, j in off_pattern) or w[1, 2] != w[2, 1]:
        raise UnsupportedVariantError(
            "the split-signal variant needs the chain topology: 0 -> 1 and 1 <-> 2"
        )
    return float(w[0, 1]), float(w[1, 2])


def solve_i_prime(net: Network, sig: SignalParams) -> EquilibriumProfile:
    """Equilibrium when agent 2's common signal is replaced by an independent one.

    Only agents 0 and 1 still share the common signal; agent 2's public-slot
    slope applies to its own independent draw.  Defined for the three-agent
    chain only.
    """
    sig.require_public()
    require_valid(net)
    alpha, _ = as_abc(net)
    gamma = sig.gamma
    b = np.array([(1.0 - gamma) * (1.0 + gamma * alpha), 1.0 - gamma, 1.0 - gamma])
    return _profile("i_prime", b)


def solve_i_dagger(net: Network, sig: SignalParams, holder: int) -> EquilibriumProfile:
    """Equilibrium when the extra signal stays private to one holder.

    The holder mixes it with its own signal at weight 1 - gamma; everyone
    else has nothing to condition on beyond their own signal.
    """
    sig.require_public()
    require_valid(net)
    if not 0 <= holder < net.n:
        raise ValueError(f"holder index {holder} outside 0..{net.n - 1}")
    b = np.zeros(net.n)
    b[holder] = 1.0 - sig.gamma
    return _profile("i_dagger", b, holder=holder)


def payoffs_i_dagger(net: Network, sig: SignalParams, holder: int) -> PayoffReport:
    """Closed-form payoffs when the signal stays private to the holder.

    The holder gains tau_x^-1 (1-gamma) over its no-public payoff; each other
    agent gains tau_x^-1 (1-gamma) g_{i,holder}; nothing else moves.
    """
    sig.require_public()
    require_valid(net)
    if not 0 <= holder < net.n:
        raise ValueError(f"holder index {holder} outside 0..{net.n - 1}")
    gamma = sig.gamma
    d_out = net.out_degrees
    bonus = (1.0 - gamma) * net.weights[:, holder] / sig.tau_x
    bonus = bonus.copy()
    bonus[holder] = (1.0 - gamma) / sig.tau_x
    per_agent = bonus - (1.0 + d_out) / sig.tau_x
    second = np.eye(net.n) / sig.tau_x
    second[holder, holder] = gamma / sig.tau_x
    return PayoffReport(per_agent, float(per_agent.sum()), second)


def solve_alt_payoff(net: Network, r: IntensityProfile, sig: SignalParams) -> EquilibriumProfile:
    """Equilibrium of the separable-intensity model: centrality on the normalized network."""
    sig.require_public()
    gamma = sig.gamma
    tilde = normalized_network(net, r)
    b = (1.0 - gamma) * katz_bonacich(tilde, gamma).c
    _check_foc(tilde, gamma, b)
    return _profile("alt_payoff", b)


def solve_efficient(net: Network, sig: SignalParams) -> EquilibriumProfile:
    """Welfare-efficient slopes: the equilibrium of the fictitious network."""
    sig.require_public()
    gamma = sig.gamma
    fict = fictitious_network(net)
    b = (1.0 - gamma) * katz_bonacich(fict, gamma).c
    _check_foc(fict, gamma, b)
    return _profile("efficient", b)


def profile_moments(profile: EquilibriumProfile, sig: SignalParams) -> np.ndarray:
    """E[X_i X_j] for an arbitrary slope profile with unit slope sums.

    Agents loading on different common noises (the split variant) have zero
    covariance; otherwise cov = b_i b_j / tau_y and the variance adds the
    private-noise term (1 - b_i)^2 / tau_x.
    """
    b = profile.slopes_public
    if np.any(b != 0.0):
        sig.require_public()
        cross = np.outer(b, b) / sig.tau_y
    else:
        cross = np.zeros((profile.n, profile.n))
    groups = signal_groups(profile)
    cross = np.where(groups[:, None] == groups[None, :], cross, 0.0)
    second = cross.copy()
    np.fill_diagonal(second, np.diag(cross) + (1.0 - b) ** 2 / sig.tau_x)
    return second


def profile_payoffs(
    net: Network,
    sig: SignalParams,
    profile: EquilibriumProfile,
    r: IntensityProfile | None = None,
) -> PayoffReport:
    """Expected payoffs for any slope profile, equilibrium or not.

    Pass an intensity profile to score against the separable-intensity
    payoff, whose adaptation weight is 1 - r_i and coordination weights are
    r_i g_ij.  This is the analytic counterpart of the simulator and the
    basis for best-response and planner-optimality checks.
    """
    if r is None:
        require_valid(net)
        adapt = 1.0 - net.out_degrees
        coord = net.weights
    else:
        if r.n != net.n:
            raise ValueError(f"intensity profile has {r.n} entries for a {net.n}-agent network")
        adapt = 1.0 - r.r
        coord = r.r[:, None] * net.weights
    if profile.n != net.n:
        raise ValueError("profile and network sizes differ")
    second = profile_moments(profile, sig)
    var = np.diag(second)
    pair_loss = (coord * (var[:, None] - 2.0 * second + var[None, :])).sum(axis=1)
    per_agent = -adapt * var - pair_loss
    return PayoffReport(per_agent, float(per_agent.sum()), second)
