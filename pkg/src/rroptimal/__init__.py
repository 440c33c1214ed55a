"""Optimal binary randomized response under an l1 (0, delta)-privacy budget."""

from .core import (
    MechanismPair,
    PrivacyBudget,
    ProbabilityVector,
    RROptimalError,
    make_distribution,
    mixture,
)
from .estimation import SurveyDataset, mle, monte_carlo_mse, sample_survey, simulate
from .exponents import (
    ExponentResult,
    chernoff_exponent,
    han_kobayashi,
    hoeffding_exponent,
    max_chernoff,
    max_hoeffding,
    max_stein,
    min_han_kobayashi,
    stein_exponent,
)
from .information import (
    KL,
    ConvexGenerator,
    f_divergence,
    fisher_information,
    max_f_divergence,
    max_fisher,
    max_renyi,
    renyi_divergence,
)
from .mechanisms import (
    OptimalFamilyParams,
    greenberg,
    holohan,
    is_optimal,
    optimal_family,
    optimal_three_symbol,
    optimal_two_symbol,
    warner,
)
from .privacy import dp_delta, min_weighted_error, satisfies_constraint, uc_security

__version__ = "0.1.0"

__all__ = [
    "MechanismPair",
    "PrivacyBudget",
    "ProbabilityVector",
    "RROptimalError",
    "make_distribution",
    "mixture",
    "SurveyDataset",
    "mle",
    "monte_carlo_mse",
    "sample_survey",
    "simulate",
    "ExponentResult",
    "chernoff_exponent",
    "han_kobayashi",
    "hoeffding_exponent",
    "max_chernoff",
    "max_hoeffding",
    "max_stein",
    "min_han_kobayashi",
    "stein_exponent",
    "KL",
    "ConvexGenerator",
    "f_divergence",
    "fisher_information",
    "max_f_divergence",
    "max_fisher",
    "max_renyi",
    "renyi_divergence",
    "OptimalFamilyParams",
    "greenberg",
    "holohan",
    "is_optimal",
    "optimal_family",
    "optimal_three_symbol",
    "optimal_two_symbol",
    "warner",
    "dp_delta",
    "min_weighted_error",
    "satisfies_constraint",
    "uc_security",
]
