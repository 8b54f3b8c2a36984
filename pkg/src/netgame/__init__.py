"""Equilibrium and welfare analysis of beauty-contest games on weighted directed networks."""

from .centrality import CentralityProfile, SpectralReport, katz_bonacich, spectral_bound
from .equilibrium import (
    EquilibriumProfile,
    PayoffReport,
    SignalParams,
    moments,
    payoffs,
    payoffs_i_dagger,
    profile_payoffs,
    solve_alt_payoff,
    solve_efficient,
    solve_equilibrium,
    solve_i_dagger,
    solve_i_prime,
)
from .errors import (
    NetworkFormatError,
    NetworkInvalidError,
    NoWitnessError,
    NumericalError,
    UnsupportedVariantError,
)
from .graphs import (
    CorePeripheryParams,
    IntensityProfile,
    Network,
    abc,
    core_periphery,
    empty,
    fictitious_network,
    from_family,
    load,
    normalized_network,
    regular,
    save,
    validate,
)
from .montecarlo import BestResponseAudit, SimConfig, SimResult, best_response_audit, simulate
from .regions import RegionGrid, harm_gamma_threshold, harm_statistic, region_csv, region_tsv, scan
from .welfare import (
    AltWelfareReport,
    MarginalReport,
    ReversalWitness,
    SharingReport,
    WelfareReport,
    alt_delta_welfare,
    connectivity_reversal,
    delta_payoffs,
    delta_welfare,
    marginal_value,
    sharing_inefficiency,
    welfare_statistic,
    welfare_statistic_slope,
)

__version__ = "0.1.0"
