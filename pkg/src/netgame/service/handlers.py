"""Verb implementations shared by the HTTP endpoints and the CLI."""

from __future__ import annotations

import numpy as np

from .. import centrality as centrality_mod
from .. import equilibrium as eq
from .. import graphs, montecarlo, regions, welfare
from .models import (
    AuditBlock,
    CentralityRequest,
    CentralityResponse,
    EquilibriumRequest,
    EquilibriumResponse,
    MarginalRequest,
    MarginalResponse,
    NetworkPayload,
    NetworkRequest,
    PayoffsRequest,
    PayoffsResponse,
    RegionRequest,
    RegionResponse,
    ReversalRequest,
    ReversalResponse,
    ShareRequest,
    ShareResponse,
    SimulateRequest,
    SimulateResponse,
    ValidateRequest,
    ValidateResponse,
    WelfareRequest,
    WelfareResponse,
)


def network_from_payload(payload: NetworkPayload) -> graphs.Network:
    w = np.zeros((payload.n, payload.n))
    for i, j, weight in payload.edges:
        if not (0 <= i < payload.n and 0 <= j < payload.n):
            raise ValueError(f"edge index ({i}, {j}) outside 0..{payload.n - 1}")
        w[i, j] = weight
    return graphs.Network(w)


def network_to_payload(net: graphs.Network) -> NetworkPayload:
    edges = [
        (int(i), int(j), float(net.weights[i, j])) for i, j in zip(*np.nonzero(net.weights))
    ]
    edges.sort(key=lambda e: (e[0], e[1]))
    return NetworkPayload(n=net.n, edges=edges)


def resolve_network(req: NetworkRequest) -> graphs.Network:
    if req.family is not None:
        return graphs.from_family(req.family)
    return network_from_payload(req.network)


def resolve_signal(req: NetworkRequest) -> eq.SignalParams:
    if req.gamma is not None:
        return eq.SignalParams.from_gamma(req.gamma)
    return eq.SignalParams(tau_x=req.tau_x, tau_y=req.tau_y)


def _intensities(raw: list[float] | None, n: int) -> graphs.IntensityProfile:
    if raw is None:
        raise ValueError("this variant needs 'intensities' (one value, or one per agent)")
    values = list(raw)
    if len(values) == 1:
        values = values * n
    if len(values) != n:
        raise ValueError(f"expected 1 or {n} intensities, got {len(values)}")
    return graphs.IntensityProfile(np.array(values))


def validate_network(req: ValidateRequest) -> ValidateResponse:
    violations = graphs.validate(resolve_network(req))
    return ValidateResponse(valid=not violations, violations=violations)


def centrality(req: CentralityRequest) -> CentralityResponse:
    net = resolve_network(req)
    sig = resolve_signal(req)
    sig.require_public()
    prof = centrality_mod.katz_bonacich(net, sig.gamma)
    spectral = centrality_mod.spectral_bound(net)
    return CentralityResponse(
        gamma=prof.gamma,
        c=prof.c.tolist(),
        c_sens=prof.c_sens.tolist(),
        spectral_bound=spectral.bound,
        rho_estimate=spectral.rho_estimate,
    )


def _solve_profile(
    net: graphs.Network,
    sig: eq.SignalParams,
    variant: str,
    holder: int,
    intensities: list[float] | None,
) -> tuple[eq.EquilibriumProfile, graphs.IntensityProfile | None]:
    if variant == "baseline":
        return eq.solve_equilibrium(net, sig), None
    if variant == "i_prime":
        return eq.solve_i_prime(net, sig), None
    if variant == "i_dagger":
        return eq.solve_i_dagger(net, sig, holder), None
    if variant == "efficient":
        return eq.solve_efficient(net, sig), None
    r = _intensities(intensities, net.n)
    return eq.solve_alt_payoff(net, r, sig), r


def equilibrium(req: EquilibriumRequest) -> EquilibriumResponse:
    net = resolve_network(req)
    sig = resolve_signal(req)
    profile, _ = _solve_profile(net, sig, req.variant, req.holder, req.intensities)
    return EquilibriumResponse(
        variant=profile.variant,
        gamma=sig.gamma,
        slopes_public=profile.slopes_public.tolist(),
        slopes_private=profile.slopes_private.tolist(),
        holder=profile.holder,
    )


def payoffs(req: PayoffsRequest) -> PayoffsResponse:
    net = resolve_network(req)
    sig = resolve_signal(req)
    if req.variant in ("baseline", "no_public"):
        report = eq.payoffs(net, sig, req.variant)
    elif req.variant == "i_dagger":
        report = eq.payoffs_i_dagger(net, sig, req.holder)
    else:
        profile, r = _solve_profile(net, sig, req.variant, req.holder, req.intensities)
        report = eq.profile_payoffs(net, sig, profile, r=r)
    return PayoffsResponse(
        variant=req.variant,
        gamma=sig.gamma,
        per_agent=report.per_agent.tolist(),
        aggregate=report.aggregate,
    )


def welfare_report(req: WelfareRequest) -> WelfareResponse:
    net = resolve_network(req)
    sig = resolve_signal(req)
    report = welfare.delta_welfare(net, sig)
    alt_statistic = alt_sign = None
    if req.intensities is not None:
        alt = welfare.alt_delta_welfare(net, _intensities(req.intensities, net.n), sig)
        alt_statistic, alt_sign = alt.statistic, alt.sign
    return WelfareResponse(
        gamma=sig.gamma,
        delta_u=report.delta_u.tolist(),
        delta_w=report.delta_w,
        statistic_s=report.statistic_s,
        statistic_s_prime=report.statistic_s_prime,
        marginal_sign=report.marginal_sign,
        harmed=list(report.harmed),
        amplifiers=list(report.amplifiers),
        alt_statistic=alt_statistic,
        alt_sign=alt_sign,
    )


def marginal(req: MarginalRequest) -> MarginalResponse:
    net = resolve_network(req)
    sig = resolve_signal(req)
    report = welfare.marginal_value(net, sig)
    return MarginalResponse(
        gamma=sig.gamma,
        statistic_s=report.statistic_s,
        statistic_s_prime=report.statistic_s_prime,
        gap=report.gap,
        sign=report.sign,
    )


def share(req: ShareRequest) -> ShareResponse:
    net = resolve_network(req)
    sig = resolve_signal(req)
    report = welfare.sharing_inefficiency(net, sig, req.holder)
    return ShareResponse(
        holder=report.holder,
        holder_prefers_private=report.holder_prefers_private,
        society_prefers_public=report.society_prefers_public,
        inefficient=report.inefficient,
        holder_statistic=report.holder_statistic,
        statistic_s=report.statistic_s,
    )


def _axis_override(lo, hi, step, default):
    """Keep the kind's default axis unless any bound or step is overridden."""
    if lo is None and hi is None and step is None:
        return default
    lo = float(default[0]) if lo is None else lo
    hi = float(default[-1] + (default[1] - default[0])) if hi is None else hi
    step = float(default[1] - default[0]) if step is None else step
    if step <= 0 or hi <= lo:
        raise ValueError("axis override needs step > 0 and max > min")
    return regions.make_axis(lo, hi, step)


def region(req: RegionRequest) -> RegionResponse:
    kind = regions.normalize_kind(req.kind)
    beta_default = (
        regions.DEFAULT_BETA_AXIS_ZOOM if kind in ("G", "H") else regions.DEFAULT_BETA_AXIS_FULL
    )
    grid = regions.scan(
        req.kind,
        req.gamma,
        l=req.l,
        m=req.m,
        alpha_axis=_axis_override(
            req.alpha_min, req.alpha_max, req.alpha_step, regions.DEFAULT_ALPHA_AXIS
        ),
        beta_axis=_axis_override(req.beta_min, req.beta_max, req.beta_step, beta_default),
    )
    return RegionResponse(
        kind=grid.kind,
        gamma=grid.gamma,
        l=grid.l,
        m=grid.m,
        alpha_axis=grid.alpha_axis.tolist(),
        beta_axis=grid.beta_axis.tolist(),
        membership=grid.membership.tolist(),
        member_count=grid.member_count,
    )


def region_grid(req: RegionRequest) -> regions.RegionGrid:
    """The raw grid, for CSV/TSV serialization paths."""
    resp = region(req)
    return regions.RegionGrid(
        kind=resp.kind,
        gamma=resp.gamma,
        l=resp.l,
        m=resp.m,
        alpha_axis=np.array(resp.alpha_axis),
        beta_axis=np.array(resp.beta_axis),
        membership=np.array(resp.membership, dtype=bool),
    )


def reversal(req: ReversalRequest) -> ReversalResponse:
    witness = welfare.connectivity_reversal(req.n, req.gamma)
    return ReversalResponse(
        l=witness.l,
        m=witness.m,
        alpha=witness.alpha,
        beta=witness.beta,
        delta_w_base=witness.delta_w_base,
        delta_w_augmented=witness.delta_w_augmented,
        base=network_to_payload(witness.base),
        augmented=network_to_payload(witness.augmented),
    )


def simulate(req: SimulateRequest) -> SimulateResponse:
    net = resolve_network(req)
    sig = resolve_signal(req)
    profile, r = _solve_profile(net, sig, req.variant, req.holder, req.intensities)
    cfg = montecarlo.SimConfig(n_draws=req.draws, seed=req.seed, sig=sig)
    result = montecarlo.simulate(net, profile, cfg, r=r)
    audit = None
    if req.audit:
        audited = montecarlo.best_response_audit(net, profile, cfg, r=r)
        audit = AuditBlock(
            deviation_gain=audited.deviation_gain.tolist(),
            gain_se=audited.gain_se.tolist(),
            best_slope=[None if np.isnan(v) else float(v) for v in audited.best_slope],
            slope_se=[None if np.isnan(v) else float(v) for v in audited.slope_se],
        )
    return SimulateResponse(
        variant=profile.variant,
        n_draws=result.n_draws,
        seed=req.seed,
        payoff_mean=result.payoff_mean.tolist(),
        payoff_se=result.payoff_se.tolist(),
        moment_estimates=result.moment_estimates.tolist(),
        moment_se=result.moment_se.tolist(),
        batch_means=result.batch_means.tolist(),
        audit=audit,
    )
