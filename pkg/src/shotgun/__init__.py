"""Robust buy-sell price announcements under distribution-band uncertainty."""

from .bands import (
    Band,
    BandFactory,
    correlated_triangular_factory,
    eps_shift_band,
    interval_band,
    iid_factory,
)
from .distributions import (
    Cdf,
    DistFamily,
    ShrcReport,
    ZeroDensityError,
    beta,
    check_shrc,
    make_cdf,
    median_bracket,
    triangular,
    truncnormal,
    uniform,
)
from .integrate import QuadratureError, cdf_expectation, simpson_adaptive
from .oracle import (OracleReport, chooser_worst_scan, grid_argmax_price,
                     oracle_scenarios, verify_policy)
from .payoff import (
    Utility,
    bayes_payoff,
    cara_utility,
    chooser_decision,
    identity_utility,
    maxmin_price,
    worst_case_payoff,
)
from .quasiconcave import (PeakResult, golden_max_batch, min_peak,
                           qc_grid_check, unimodal_max)
from .scenario import (
    ConfigError,
    Scenario,
    default_scenario,
    load_scenario,
    parse_scenario,
    validate_scenario,
)
from .solver import (
    REGIME_APPROX_SUP,
    REGIME_BAYES_HIGH,
    REGIME_BAYES_LOW,
    REGIME_HEDGE,
    PricePolicy,
    bayes_price,
    bayes_price_many,
    correlated_price,
    interval_price,
    knight_price,
    price_rule,
    sweep_policy,
    triangular_hedge_test,
    validate_policy,
)
from .welfare import (
    EfficiencyRegion,
    KinkError,
    UnsupportedUtilityError,
    WelfareCurve,
    chooser_worst_cdf,
    compare_roles,
    efficiency_region,
    inefficiency_area,
    phi_chooser,
    phi_derivatives,
    phi_divider,
)

__version__ = "0.1.0"

__all__ = [
    "Band",
    "BandFactory",
    "Cdf",
    "ConfigError",
    "DistFamily",
    "EfficiencyRegion",
    "KinkError",
    "OracleReport",
    "PeakResult",
    "PricePolicy",
    "QuadratureError",
    "REGIME_APPROX_SUP",
    "REGIME_BAYES_HIGH",
    "REGIME_BAYES_LOW",
    "REGIME_HEDGE",
    "Scenario",
    "ShrcReport",
    "UnsupportedUtilityError",
    "Utility",
    "WelfareCurve",
    "ZeroDensityError",
    "bayes_payoff",
    "bayes_price",
    "bayes_price_many",
    "beta",
    "cara_utility",
    "cdf_expectation",
    "check_shrc",
    "chooser_decision",
    "chooser_worst_cdf",
    "chooser_worst_scan",
    "compare_roles",
    "correlated_price",
    "correlated_triangular_factory",
    "default_scenario",
    "efficiency_region",
    "eps_shift_band",
    "golden_max_batch",
    "grid_argmax_price",
    "identity_utility",
    "iid_factory",
    "inefficiency_area",
    "interval_band",
    "interval_price",
    "knight_price",
    "load_scenario",
    "make_cdf",
    "maxmin_price",
    "median_bracket",
    "min_peak",
    "oracle_scenarios",
    "parse_scenario",
    "phi_chooser",
    "phi_derivatives",
    "phi_divider",
    "price_rule",
    "qc_grid_check",
    "simpson_adaptive",
    "sweep_policy",
    "triangular",
    "triangular_hedge_test",
    "truncnormal",
    "uniform",
    "unimodal_max",
    "validate_policy",
    "validate_scenario",
    "verify_policy",
    "worst_case_payoff",
]
