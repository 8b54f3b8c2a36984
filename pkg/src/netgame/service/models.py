"""Request and response schemas for the HTTP service (also used by the CLI)."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, model_validator


class NetworkPayload(BaseModel):
    """Sparse network form: agent count plus (i, j, weight) entries."""

    n: int
    edges: list[tuple[int, int, float]] = []


class NetworkRequest(BaseModel):
    """Common input block: one network source plus one signal parameterization.

    Exactly one of `family` / `network` selects the network; the signal is
    either `gamma` alone (tau_x defaults to 1, tau_y derived) or the
    explicit pair (tau_x, tau_y).
    """

    family: str | None = None
    network: NetworkPayload | None = None
    gamma: float | None = None
    tau_x: float | None = None
    tau_y: float | None = None

    _needs_signal = True

    @model_validator(mode="after")
    def _check(self):
        if (self.family is None) == (self.network is None):
            raise ValueError("provide exactly one of 'family' and 'network'")
        has_pair = self.tau_x is not None or self.tau_y is not None
        if self.gamma is not None and has_pair:
            raise ValueError("give either 'gamma' or the pair 'tau_x'/'tau_y', not both")
        if has_pair and (self.tau_x is None or self.tau_y is None):
            raise ValueError("'tau_x' and 'tau_y' must be given together")
        if self._needs_signal and self.gamma is None and not has_pair:
            raise ValueError("a signal parameterization is required ('gamma' or 'tau_x'/'tau_y')")
        return self


class ValidateRequest(NetworkRequest):
    _needs_signal = False


class CentralityRequest(NetworkRequest):
    pass


class EquilibriumRequest(NetworkRequest):
    variant: Literal["baseline", "i_prime", "i_dagger", "alt", "efficient"] = "baseline"
    holder: int = 0
    intensities: list[float] | None = None


class PayoffsRequest(NetworkRequest):
    variant: Literal["baseline", "no_public", "i_dagger", "i_prime", "efficient", "alt"] = (
        "baseline"
    )
    holder: int = 0
    intensities: list[float] | None = None


class WelfareRequest(NetworkRequest):
    intensities: list[float] | None = None


class MarginalRequest(NetworkRequest):
    pass


class ShareRequest(NetworkRequest):
    holder: int = 0


class RegionRequest(BaseModel):
    kind: Literal["G", "H", "J", "g", "h", "j", "harm", "welfare", "sharing"]
    gamma: float
    l: int | None = None
    m: int | None = None
    alpha_min: float | None = None
    alpha_max: float | None = None
    alpha_step: float | None = None
    beta_min: float | None = None
    beta_max: float | None = None
    beta_step: float | None = None


class ReversalRequest(BaseModel):
    n: int
    gamma: float


class SimulateRequest(NetworkRequest):
    variant: Literal["baseline", "i_prime", "i_dagger", "alt", "efficient"] = "baseline"
    holder: int = 0
    intensities: list[float] | None = None
    draws: int = 100_000
    seed: int = 0
    audit: bool = False


class ValidateResponse(BaseModel):
    valid: bool
    violations: list[str]


class CentralityResponse(BaseModel):
    gamma: float
    c: list[float]
    c_sens: list[float]
    spectral_bound: float
    rho_estimate: float


class EquilibriumResponse(BaseModel):
    variant: str
    gamma: float
    slopes_public: list[float]
    slopes_private: list[float]
    holder: int | None = None


class PayoffsResponse(BaseModel):
    variant: str
    gamma: float
    per_agent: list[float]
    aggregate: float


class WelfareResponse(BaseModel):
    gamma: float
    delta_u: list[float]
    delta_w: float
    statistic_s: float
    statistic_s_prime: float
    marginal_sign: str
    harmed: list[int]
    amplifiers: list[int]
    alt_statistic: float | None = None
    alt_sign: str | None = None


class MarginalResponse(BaseModel):
    gamma: float
    statistic_s: float
    statistic_s_prime: float
    gap: float
    sign: str


class ShareResponse(BaseModel):
    holder: int
    holder_prefers_private: bool
    society_prefers_public: bool
    inefficient: bool
    holder_statistic: float
    statistic_s: float


class RegionResponse(BaseModel):
    kind: str
    gamma: float
    l: int | None
    m: int | None
    alpha_axis: list[float]
    beta_axis: list[float]
    membership: list[list[bool]]
    member_count: int


class ReversalResponse(BaseModel):
    l: int
    m: int
    alpha: float
    beta: float
    delta_w_base: float
    delta_w_augmented: float
    base: NetworkPayload
    augmented: NetworkPayload


class AuditBlock(BaseModel):
    deviation_gain: list[float]
    gain_se: list[float]
    best_slope: list[float | None]
    slope_se: list[float | None]


class SimulateResponse(BaseModel):
    variant: str
    n_draws: int
    seed: int
    payoff_mean: list[float]
    payoff_se: list[float]
    moment_estimates: list[list[float]]
    moment_se: list[list[float]]
    batch_means: list[list[float]]
    audit: AuditBlock | None = None
