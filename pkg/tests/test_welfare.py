import numpy as np
import pytest

from netgame.centrality import katz_bonacich
from netgame.equilibrium import SignalParams, payoffs
from netgame.errors import NoWitnessError
from netgame.graphs import Network, abc, core_periphery, empty, regular
from netgame.welfare import (
    alt_delta_welfare,
    connectivity_reversal,
    delta_payoffs,
    delta_welfare,
    marginal_value,
    prefers_split_signal,
    sharing_inefficiency,
    sign_of,
    welfare_statistic,
    welfare_statistic_slope,
)
from netgame.graphs import IntensityProfile
from conftest import random_intensities, random_symmetric_network, random_valid_network


def test_sign_dead_band():
    assert sign_of(5e-13) == "boundary"
    assert sign_of(-5e-13) == "boundary"
    assert sign_of(1e-6) == "positive"
    assert sign_of(-1e-6) == "negative"


def test_regular_networks_never_harm_anyone():
    for d in (0.0, 0.3, 0.6, 0.9):
        for gamma in (0.5, 0.8, 0.95, 0.99):
            _, harmed = delta_payoffs(regular(5, d), SignalParams.from_gamma(gamma))
            assert harmed == ()


def test_chain_first_agent_harmed_at_high_gamma():
    delta_u, harmed = delta_payoffs(abc(0.2, 0.95), SignalParams.from_gamma(0.95))
    assert harmed == (0,)
    assert delta_u[0] == pytest.approx(0.05 * -0.07834375 / 0.0975**2, abs=1e-12)
    assert delta_u[1] > 0 and delta_u[2] > 0


def test_nobody_harmed_below_gamma_threshold():
    sig = SignalParams.from_gamma(0.5)
    for alpha in np.linspace(0.0, 0.95, 12):
        for beta in np.linspace(0.0, 0.95, 12):
            _, harmed = delta_payoffs(abc(alpha, beta), sig)
            assert harmed == ()


def test_harm_condition_matches_inequality(rng):
    """Sign of each payoff change equals the centrality inequality, computed independently."""
    for _ in range(10):
        net = random_valid_network(rng)
        sig = SignalParams.from_gamma(float(rng.uniform(0.3, 0.97)))
        delta_u, harmed = delta_payoffs(net, sig)
        c = katz_bonacich(net, sig.gamma).c
        for i in range(net.n):
            lhs = c[i] ** 2
            rhs = sum(net.weights[i, j] * c[j] * (c[j] - 2.0) for j in range(net.n))
            assert (i in harmed) == (lhs < rhs and abs(lhs - rhs) > 1e-12)
            if abs(lhs - rhs) > 1e-12:
                assert (delta_u[i] < 0) == (lhs < rhs)


def test_regular_welfare_statistic_closed_form_and_monotone():
    n = 5
    for gamma in (0.5, 0.8, 0.95):
        values = []
        for d in np.arange(0.0, 0.96, 0.05):
            s = welfare_statistic(regular(n, d), gamma)
            expected = n * (1.0 + d - 2.0 * gamma * d * d) / (1.0 - gamma * d) ** 2
            assert s == pytest.approx(expected, rel=1e-12)
            assert s > 0
            values.append(s)
        assert all(b > a for a, b in zip(values, values[1:]))


def test_two_tier_welfare_loss_case():
    sig = SignalParams.from_gamma(0.95)
    report = delta_welfare(core_periphery(2, 20, 0.2, 0.95), sig)
    assert report.delta_w < 0
    # matches the family inequality: f < -(l/m)(1 - beta (2 gamma beta - 1))
    f = -0.07834375
    assert f < -(2.0 / 20.0) * (1.0 - 0.95 * (2.0 * 0.95 * 0.95 - 1.0))
    assert -(2.0 / 20.0) * (1.0 - 0.95 * (2.0 * 0.95 * 0.95 - 1.0)) == pytest.approx(-0.023525)
    # statistic equals the closed family form
    expected_s = (20.0 * f + 2.0 * (1.0 - 0.95 * (2.0 * 0.95 * 0.95 - 1.0))) / 0.0975**2
    assert report.statistic_s == pytest.approx(expected_s, rel=1e-12)
    # periphery harmed, core amplifies
    assert set(report.harmed) == set(range(2, 22))
    assert report.amplifiers == (0, 1)


def test_welfare_equals_payoff_difference(rng):
    for _ in range(10):
        net = random_valid_network(rng)
        sig = SignalParams.from_gamma(float(rng.uniform(0.2, 0.95)))
        report = delta_welfare(net, sig)
        direct = payoffs(net, sig).aggregate - payoffs(net, sig, "no_public").aggregate
        assert report.delta_w == pytest.approx(direct, abs=1e-10)
        assert report.delta_w == pytest.approx(float(report.delta_u.sum()), abs=1e-10)


def test_undirected_networks_always_gain(rng):
    for _ in range(15):
        net = random_symmetric_network(rng)
        sig = SignalParams.from_gamma(float(rng.uniform(0.2, 0.97)))
        assert delta_welfare(net, sig).delta_w > 0


def test_empty_network_welfare_gain():
    report = delta_welfare(empty(22), SignalParams.from_gamma(0.95))
    assert report.delta_w == pytest.approx(0.05 * 22.0, abs=1e-12)
    assert report.statistic_s == pytest.approx(22.0, abs=1e-12)


def test_marginal_value_empty_network():
    report = marginal_value(empty(4), SignalParams.from_gamma(0.7))
    assert report.statistic_s_prime == pytest.approx(0.0, abs=1e-12)
    assert report.sign == "positive"


def test_marginal_value_slope_matches_finite_difference(rng):
    h = 1e-6
    for _ in range(10):
        net = random_valid_network(rng, max_out=0.9)
        gamma = float(rng.uniform(0.3, 0.9))
        s_prime = welfare_statistic_slope(net, gamma)
        fd = (welfare_statistic(net, gamma + h) - welfare_statistic(net, gamma - h)) / (2.0 * h)
        assert s_prime == pytest.approx(fd, rel=1e-4, abs=1e-8)


def test_marginal_sign_matches_welfare_derivative(rng):
    """Sign statistic vs a finite difference of aggregate welfare in tau_y."""
    for _ in range(8):
        net = random_valid_network(rng, max_out=0.9)
        tau_y = float(rng.uniform(0.05, 2.0))
        report = marginal_value(net, SignalParams(tau_x=1.0, tau_y=tau_y))
        h = 1e-5 * tau_y
        w_up = payoffs(net, SignalParams(tau_x=1.0, tau_y=tau_y + h)).aggregate
        w_dn = payoffs(net, SignalParams(tau_x=1.0, tau_y=tau_y - h)).aggregate
        fd = (w_up - w_dn) / (2.0 * h)
        if abs(fd) > 1e-6:
            assert report.sign == ("positive" if fd > 0 else "negative")


def test_marginal_condition_tightens_discrete_loss():
    """Near gamma -> 1 the sensitivity correction vanishes, so a discrete loss
    implies a negative marginal value."""
    net = core_periphery(2, 20, 0.2, 0.95)
    ratios = []
    for gamma in (0.99, 0.999, 0.9999):
        report = marginal_value(net, SignalParams.from_gamma(gamma))
        assert report.statistic_s < 0
        assert report.sign == "negative"
        ratios.append(
            abs((1.0 - gamma) * report.statistic_s_prime) / abs(report.statistic_s)
        )
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[2] < 0.01


def test_two_tier_marginal_and_discrete_signs_reported():
    report = delta_welfare(core_periphery(2, 20, 0.2, 0.95), SignalParams.from_gamma(0.95))
    assert report.statistic_s < 0
    assert report.marginal_sign in ("negative", "positive", "boundary")


def test_alt_welfare_uniform_intensity_case(rng):
    """Unit out-degrees with a shared intensity: statistic n c^2 (1-r) + 2 c r n > 0."""
    for _ in range(10):
        n = int(rng.integers(2, 8))
        raw = rng.random((n, n)) + 0.05
        np.fill_diagonal(raw, 0.0)
        net = Network(raw / raw.sum(axis=1, keepdims=True))
        r_val = float(rng.uniform(0.05, 0.95))
        gamma = float(rng.uniform(0.2, 0.95))
        report = alt_delta_welfare(net, IntensityProfile.uniform(n, r_val), SignalParams.from_gamma(gamma))
        c = 1.0 / (1.0 - gamma * r_val)
        expected = n * c**2 * (1.0 - r_val) + 2.0 * c * r_val * n
        assert report.statistic == pytest.approx(expected, rel=1e-10)
        assert report.sign == "positive"


def test_alt_welfare_uniform_direction_case(rng):
    """Uniform weights with heterogeneous intensities: every agent's term is positive."""
    for _ in range(10):
        n = int(rng.integers(3, 8))
        w = np.full((n, n), 1.0 / (n - 1))
        np.fill_diagonal(w, 0.0)
        net = Network(w)
        r = random_intensities(rng, n)
        report = alt_delta_welfare(net, r, SignalParams.from_gamma(float(rng.uniform(0.2, 0.95))))
        assert np.all(report.per_agent_terms > 0)
        assert report.sign == "positive"


def test_alt_welfare_reduces_to_baseline_statistic_on_uniform_out_degree(rng):
    """With r_i = 1/(2 - d), the normalized network equals the base network and the
    alt statistic is exactly r times the baseline one."""
    for _ in range(8):
        n = int(rng.integers(2, 8))
        d = float(rng.uniform(0.1, 0.9))
        raw = rng.random((n, n)) + 0.05
        np.fill_diagonal(raw, 0.0)
        net = Network(raw * d / raw.sum(axis=1, keepdims=True))
        r_val = 1.0 / (2.0 - d)
        gamma = float(rng.uniform(0.2, 0.95))
        alt = alt_delta_welfare(net, IntensityProfile.uniform(n, r_val), SignalParams.from_gamma(gamma))
        assert alt.statistic == pytest.approx(r_val * welfare_statistic(net, gamma), rel=1e-10)


def test_alt_welfare_sign_matches_per_agent_sum(rng):
    from netgame.equilibrium import profile_payoffs, solve_alt_payoff

    for _ in range(6):
        net = random_valid_network(rng)
        r = random_intensities(rng, net.n)
        sig = SignalParams.from_gamma(float(rng.uniform(0.3, 0.9)))
        report = alt_delta_welfare(net, r, sig)
        prof = solve_alt_payoff(net, r, sig)
        scored = profile_payoffs(net, sig, prof, r=r).per_agent
        k = 1.0 - r.r + r.r * net.out_degrees
        no_public = -(k + r.r * net.out_degrees) / sig.tau_x
        delta_sum = float((scored - no_public).sum())
        assert delta_sum == pytest.approx(
            (1.0 - sig.gamma) * report.statistic / sig.tau_x, abs=1e-10
        )


def test_sharing_inefficiency_two_tier_cases():
    sig = SignalParams.from_gamma(0.95)
    wide = sharing_inefficiency(core_periphery(22, 44, 0.2, 0.95), sig, holder=22)
    assert wide.holder_prefers_private and wide.society_prefers_public and wide.inefficient
    # compound-form arithmetic behind the two booleans
    f = -0.07834375
    bar = (1.0 - 0.95 * 0.95) ** 2
    society = 44.0 * f + 22.0 * (1.0 - 0.95 * (2.0 * 0.95 * 0.95 - 1.0))
    assert bar == pytest.approx(0.00950625)
    assert society == pytest.approx(1.728375)
    assert f < bar < society

    narrow = sharing_inefficiency(core_periphery(2, 20, 0.2, 0.95), sig, holder=2)
    assert narrow.holder_prefers_private
    assert not narrow.society_prefers_public
    assert not narrow.inefficient
    assert 20.0 * f + 2.0 * (1.0 - 0.95 * (2.0 * 0.95 * 0.95 - 1.0)) == pytest.approx(-1.096375)


def test_sharing_compound_inequality_equivalence(rng):
    """Centrality-based booleans equal the closed-form compound inequality."""
    gamma = 0.95
    sig = SignalParams.from_gamma(gamma)
    l, m = 22, 44
    for alpha in np.linspace(0.05, 0.95, 7):
        for beta in np.linspace(0.05, 0.95, 7):
            report = sharing_inefficiency(core_periphery(l, m, alpha, beta), sig, holder=l)
            f = (1.0 + gamma * (alpha - beta)) ** 2 - alpha * (2.0 * gamma * beta - 1.0)
            bar = (1.0 - beta * gamma) ** 2
            society = m * f + l * (1.0 - beta * (2.0 * gamma * beta - 1.0))
            assert report.holder_prefers_private == (f < bar)
            assert report.society_prefers_public == (bar < society)
            assert report.inefficient == (f < bar < society)


def test_sharing_empty_network_holder_never_prefers_private():
    report = sharing_inefficiency(empty(4), SignalParams.from_gamma(0.9), holder=1)
    assert report.holder_statistic == pytest.approx(1.0, abs=1e-12)
    assert not report.holder_prefers_private
    assert not report.inefficient


def test_connectivity_reversal_witness_and_determinism():
    first = connectivity_reversal(22, 0.95)
    second = connectivity_reversal(22, 0.95)
    assert (first.alpha, first.beta) == (second.alpha, second.beta) == (0.1, 0.95)
    assert first.base == empty(22)
    assert np.all(first.base.weights <= first.augmented.weights)
    assert first.delta_w_base > 0 > first.delta_w_augmented


def test_connectivity_reversal_moderate_n():
    witness = connectivity_reversal(12, 0.95)
    assert witness.l == 2 and witness.m == 10
    assert witness.delta_w_base > 0 > witness.delta_w_augmented


def test_connectivity_reversal_requires_high_gamma():
    with pytest.raises(NoWitnessError, match="larger"):
        connectivity_reversal(22, 0.5)
    # a 2-agent core over a single peripheral agent needs beta beyond the grid
    with pytest.raises(NoWitnessError):
        connectivity_reversal(3, 0.95)
    with pytest.raises(ValueError):
        connectivity_reversal(2, 0.95)


def test_harmed_agents_prefer_split_signal(rng):
    """Being harmed by the public signal implies preferring the split structure."""
    gamma = 0.95
    sig = SignalParams.from_gamma(gamma)
    for alpha in np.linspace(0.05, 0.9, 6):
        for beta in np.linspace(0.5, 0.95, 6):
            _, harmed = delta_payoffs(abc(alpha, beta), sig)
            if 0 in harmed:
                assert prefers_split_signal(alpha, beta, gamma)
