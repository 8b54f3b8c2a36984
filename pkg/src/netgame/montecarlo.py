"""Seeded Monte Carlo oracle for payoffs, moments, and best responses.

Only signal noises are drawn; the payoff state is pinned at zero.  That is
harmless because every profile here keeps each agent's slopes summing to
one, which makes realized payoffs independent of the state.  Draws are
generated in fixed-size batches, each batch seeded by (seed, batch index)
with one child stream per noise source, so results are bit-reproducible
and independent of how batches might be scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equilibrium import EquilibriumProfile, SignalParams, signal_groups
from .graphs import IntensityProfile, Network, require_structure, require_valid

BATCH_SIZE = 100_000


@dataclass(frozen=True)
class SimConfig:
    """Draw count, seed, and signal precisions for one simulation run."""

    n_draws: int
    seed: int
    sig: SignalParams

    def __post_init__(self):
        if self.n_draws < 1:
            raise ValueError(f"n_draws must be >= 1, got {self.n_draws}")


@dataclass(frozen=True)
class SimResult:
    """Sample payoff means/SEs and second-moment estimates."""

    payoff_mean: np.ndarray
    payoff_se: np.ndarray
    moment_estimates: np.ndarray
    moment_se: np.ndarray
    batch_means: np.ndarray
    n_draws: int


@dataclass(frozen=True)
class BestResponseAudit:
    """Estimated gain from the best own-slope deviation, per agent.

    best_slope is the sample-optimal weight on the agent's second signal
    within the unit-slope-sum class (NaN for agents without a second
    signal, whose only admissible strategy is their own signal); slope_se
    is its delta-method standard error.
    """

    deviation_gain: np.ndarray
    gain_se: np.ndarray
    best_slope: np.ndarray
    slope_se: np.ndarray
    responsive: np.ndarray


def _payoff_weights(
    net: Network, r: IntensityProfile | None
) -> tuple[np.ndarray, np.ndarray]:
    """(adaptation weights, coordination matrix) for the scored payoff."""
    if r is None:
        require_valid(net)
        return 1.0 - net.out_degrees, net.weights
    if r.n != net.n:
        raise ValueError(f"intensity profile has {r.n} entries for a {net.n}-agent network")
    require_structure(net)
    return 1.0 - r.r, r.r[:, None] * net.weights


def _batch_sizes(n_draws: int) -> list[int]:
    sizes = [BATCH_SIZE] * (n_draws // BATCH_SIZE)
    if n_draws % BATCH_SIZE:
        sizes.append(n_draws % BATCH_SIZE)
    return sizes


def _batch_noise(
    cfg: SimConfig, batch_index: int, size: int, n: int, need_common: bool, need_split: bool
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-batch noise draws: common, split-common, and per-agent private."""
    root = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(batch_index,))
    children = root.spawn(n + 2)
    sd_x = 1.0 / np.sqrt(cfg.sig.tau_x)
    if need_common:
        common = np.random.Generator(np.random.PCG64(children[0])).standard_normal(size)
        common *= 1.0 / np.sqrt(cfg.sig.tau_y)
    else:
        common = np.zeros(size)
    if need_split:
        split = np.random.Generator(np.random.PCG64(children[1])).standard_normal(size)
        split *= 1.0 / np.sqrt(cfg.sig.tau_y)
    else:
        split = np.zeros(size)
    private = np.empty((size, n))
    for i in range(n):
        gen = np.random.Generator(np.random.PCG64(children[2 + i]))
        private[:, i] = gen.standard_normal(size) * sd_x
    return common, split, private


def _prepare(net: Network, profile: EquilibriumProfile, cfg: SimConfig):
    if profile.n != net.n:
        raise ValueError("profile and network sizes differ")
    groups = signal_groups(profile)
    need_common = bool(np.any((profile.slopes_public != 0.0) & (groups == 0)))
    need_split = bool(np.any(groups == 1))
    if (need_common or need_split) and cfg.sig.tau_y <= 0.0:
        raise ValueError("profile loads on a second signal but tau_y is not positive")
    return groups, need_common, need_split


def simulate(
    net: Network,
    profile: EquilibriumProfile,
    cfg: SimConfig,
    r: IntensityProfile | None = None,
) -> SimResult:
    """Estimate expected payoffs and second moments under a slope profile.

    Pass an intensity profile to score the separable-intensity payoff
    instead of the baseline one.  Identical configs give bit-identical
    results.
    """
    adapt, coord = _payoff_weights(net, r)
    groups, need_common, need_split = _prepare(net, profile, cfg)
    n = net.n
    b = profile.slopes_public
    coord_sum = coord.sum(axis=1)

    payoff_sum = np.zeros(n)
    payoff_sumsq = np.zeros(n)
    cross_sum = np.zeros((n, n))
    cross_sumsq = np.zeros((n, n))
    batch_means = []
    for batch_index, size in enumerate(_batch_sizes(cfg.n_draws)):
        common, split, private = _batch_noise(cfg, batch_index, size, n, need_common, need_split)
        second = np.where(groups[None, :] == 0, common[:, None], split[:, None])
        x = b * second + (1.0 - b) * private
        sq = x**2
        xc = x @ coord.T
        sqc = sq @ coord.T
        u = -adapt * sq - (coord_sum * sq - 2.0 * x * xc + sqc)
        payoff_sum += u.sum(axis=0)
        payoff_sumsq += (u**2).sum(axis=0)
        cross_sum += x.T @ x
        cross_sumsq += sq.T @ sq
        batch_means.append(u.mean(axis=0))

    draws = cfg.n_draws
    payoff_mean = payoff_sum / draws
    payoff_var = np.maximum(payoff_sumsq / draws - payoff_mean**2, 0.0)
    moment_mean = cross_sum / draws
    moment_var = np.maximum(cross_sumsq / draws - moment_mean**2, 0.0)
    arrays = dict(
        payoff_mean=payoff_mean,
        payoff_se=np.sqrt(payoff_var / draws),
        moment_estimates=moment_mean,
        moment_se=np.sqrt(moment_var / draws),
        batch_means=np.array(batch_means),
    )
    for arr in arrays.values():
        arr.flags.writeable = False
    return SimResult(n_draws=draws, **arrays)


def best_response_audit(
    net: Network,
    profile: EquilibriumProfile,
    cfg: SimConfig,
    r: IntensityProfile | None = None,
) -> BestResponseAudit:
    """Gain from each agent's sample-optimal own-slope deviation.

    Deviations stay inside the unit-slope-sum class (the only class with
    state-free payoffs), so they are parameterized by the single weight t
    on the agent's second signal.  The realized payoff is exactly
    quadratic in t; its per-draw coefficients are averaged to locate the
    sample optimum and to attach a standard error to the gain.  Agents
    without a second signal cannot deviate and report zero gain.
    """
    adapt, coord = _payoff_weights(net, r)
    groups, need_common, need_split = _prepare(net, profile, cfg)
    n = net.n
    b = profile.slopes_public
    k_total = adapt + coord.sum(axis=1)
    responsive = np.ones(n, dtype=bool)
    if profile.variant == "i_dagger":
        if profile.holder is None:
            raise ValueError("i_dagger profiles need a holder index")
        responsive[:] = False
        responsive[profile.holder] = True

    s_a1 = np.zeros(n)
    s_a2 = np.zeros(n)
    s_a1sq = np.zeros(n)
    s_a2sq = np.zeros(n)
    s_a1a2 = np.zeros(n)
    for batch_index, size in enumerate(_batch_sizes(cfg.n_draws)):
        common, split, private = _batch_noise(cfg, batch_index, size, n, need_common, need_split)
        second = np.where(groups[None, :] == 0, common[:, None], split[:, None])
        x = b * second + (1.0 - b) * private
        xc = x @ coord.T
        d = second - private
        a2 = -k_total * d**2
        a1 = -2.0 * d * (k_total * private - xc)
        s_a1 += a1.sum(axis=0)
        s_a2 += a2.sum(axis=0)
        s_a1sq += (a1**2).sum(axis=0)
        s_a2sq += (a2**2).sum(axis=0)
        s_a1a2 += (a1 * a2).sum(axis=0)

    draws = cfg.n_draws
    m_a1, m_a2 = s_a1 / draws, s_a2 / draws
    v_a1 = np.maximum(s_a1sq / draws - m_a1**2, 0.0)
    v_a2 = np.maximum(s_a2sq / draws - m_a2**2, 0.0)
    cov = s_a1a2 / draws - m_a1 * m_a2

    best = np.full(n, np.nan)
    slope_se = np.full(n, np.nan)
    gain = np.zeros(n)
    gain_se = np.zeros(n)
    idx = responsive & (m_a2 < 0.0)
    best[idx] = -m_a1[idx] / (2.0 * m_a2[idx])
    d1 = np.where(idx, best - b, 0.0)
    d2 = np.where(idx, best**2 - b**2, 0.0)
    gain[idx] = (m_a2 * d2 + m_a1 * d1)[idx]
    gain_var = d2**2 * v_a2 + d1**2 * v_a1 + 2.0 * d1 * d2 * cov
    gain_se[idx] = np.sqrt(np.maximum(gain_var, 0.0) / draws)[idx]
    # Delta method for t = -a1 / (2 a2): gradient (-1/(2 a2), a1/(2 a2^2)).
    g1 = np.where(idx, -1.0 / (2.0 * m_a2), 0.0)
    g2 = np.where(idx, m_a1 / (2.0 * m_a2**2), 0.0)
    slope_var = g1**2 * v_a1 + g2**2 * v_a2 + 2.0 * g1 * g2 * cov
    slope_se[idx] = np.sqrt(np.maximum(slope_var, 0.0) / draws)[idx]
    for arr in (gain, gain_se, best, slope_se, responsive):
        arr.flags.writeable = False
    return BestResponseAudit(
        deviation_gain=gain,
        gain_se=gain_se,
        best_slope=best,
        slope_se=slope_se,
        responsive=responsive,
    )
