"""Error exponents for testing ``p_theta1`` against ``p_theta2``.

Every exponent here is a supremum over an open interval of the Renyi order
parameter ``s``.  The open ends are replaced by a small clamp and the
supremum is located by golden-section search, which is exact for the
quasi-concave objectives that appear (``s * D_{1+s}`` is convex in ``s``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import MechanismPair, PrivacyBudget, RROptimalError, check_theta, mixture_array
from .information import max_renyi, renyi_divergence_arrays

S_CLAMP = 1e-7
S_MAX = 50.0
GOLDEN_TOL = 1e-10

NEG_INTERVAL = (-1.0 + S_CLAMP, -S_CLAMP)
POS_INTERVAL = (S_CLAMP, S_MAX)

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class NonFiniteObjective(RROptimalError):
    pass


@dataclass(frozen=True)
class ExponentResult:
    """Optimised exponent (nats) and the ``s`` attaining it.

    ``at_boundary`` is set when the best point is an end of the clamped
    search interval, i.e. the supremum is approached rather than attained.
    """

    value: float
    s_star: float
    iterations: int
    at_boundary: bool = False


def _safe(objective: Callable[[float], float], s: float) -> float:
    v = float(objective(s))
    if math.isnan(v) or v == math.inf:
        raise NonFiniteObjective(f"objective returned {v!r} at s={s!r}")
    return v


def maximize_scalar(
    objective: Callable[[float], float], lo: float, hi: float, tol: float = GOLDEN_TOL
) -> ExponentResult:
    """Golden-section search for the maximum of a unimodal function on ``[lo, hi]``.

    ``-inf`` values are allowed and simply lose every comparison.  Both
    endpoints are compared against the interior optimum at the end so that
    monotone objectives report the right end.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = _safe(objective, c), _safe(objective, d)
    iterations = 0
    while b - a > tol:
        iterations += 1
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = _safe(objective, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = _safe(objective, d)
    s_star, best = (c, fc) if fc >= fd else (d, fd)
    f_lo, f_hi = _safe(objective, lo), _safe(objective, hi)
    if f_lo > best and f_lo >= f_hi:
        return ExponentResult(f_lo, float(lo), iterations, True)
    if f_hi > best:
        return ExponentResult(f_hi, float(hi), iterations, True)
    return ExponentResult(best, s_star, iterations, False)


def _mixtures(pair: MechanismPair, theta1: float, theta2: float):
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)
    return mixture_array(pair, theta1), mixture_array(pair, theta2)


def _scaled(weight: float, divergence: float) -> float:
    # s * D with D = +inf means the term is unusable at this s
    if divergence == math.inf:
        return -math.inf
    return weight * divergence


# ---------------------------------------------------------------------------
# objective builders shared by the direct and budget-optimised exponents


def chernoff_objective(renyi: Callable[[float], float]) -> Callable[[float], float]:
    return lambda s: _scaled(-s, renyi(s))


def rate_objective(renyi: Callable[[float], float], rate: float) -> Callable[[float], float]:
    """``s/(1+s) * (r - D_{1+s})`` used by the Hoeffding and Han-Kobayashi bounds."""

    def objective(s):
        d = renyi(s)
        if d == math.inf:
            return -math.inf if s > 0 else math.inf
        return s / (1.0 + s) * (rate - d)

    return objective


def _check_rate(rate: float) -> float:
    rate = float(rate)
    if not rate >= 0:
        raise RROptimalError(f"rate r must be non-negative, got {rate!r}")
    return rate


# ---------------------------------------------------------------------------
# exponents of a given pair


def chernoff_exponent(pair: MechanismPair, theta1: float, theta2: float) -> ExponentResult:
    """Best error exponent of the symmetric (Bayes) test."""
    q1, q2 = _mixtures(pair, theta1, theta2)
    return maximize_scalar(
        chernoff_objective(lambda s: renyi_divergence_arrays(q1, q2, s)), *NEG_INTERVAL
    )


def stein_exponent(pair: MechanismPair, theta1: float, theta2: float) -> float:
    q1, q2 = _mixtures(pair, theta1, theta2)
    return renyi_divergence_arrays(q1, q2, 0.0)


def hoeffding_exponent(
    pair: MechanismPair, theta1: float, theta2: float, rate: float
) -> ExponentResult:
    """Best type-II exponent when the type-I exponent must be at least ``rate``."""
    rate = _check_rate(rate)
    q1, q2 = _mixtures(pair, theta1, theta2)
    return maximize_scalar(
        rate_objective(lambda s: renyi_divergence_arrays(q2, q1, s), rate), *NEG_INTERVAL
    )


def han_kobayashi(
    pair: MechanismPair, theta1: float, theta2: float, rate: float
) -> ExponentResult:
    """Exponent of the correct-decision probability above the Stein rate.

    The supremum over ``s > 0`` is truncated at ``S_MAX``; when the objective
    keeps increasing the result carries ``at_boundary=True``.
    """
    rate = _check_rate(rate)
    q1, q2 = _mixtures(pair, theta1, theta2)
    return maximize_scalar(
        rate_objective(lambda s: renyi_divergence_arrays(q2, q1, s), rate), *POS_INTERVAL
    )


# ---------------------------------------------------------------------------
# optimised over every pair within a budget


def max_chernoff(budget: PrivacyBudget, theta1: float, theta2: float) -> ExponentResult:
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)
    return maximize_scalar(
        chernoff_objective(lambda s: max_renyi(budget, theta1, theta2, s)), *NEG_INTERVAL
    )


def max_stein(budget: PrivacyBudget, theta1: float, theta2: float) -> float:
    return max_renyi(budget, theta1, theta2, 0.0)


def max_hoeffding(
    budget: PrivacyBudget, theta1: float, theta2: float, rate: float
) -> ExponentResult:
    rate = _check_rate(rate)
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)
    return maximize_scalar(
        rate_objective(lambda s: max_renyi(budget, theta2, theta1, s), rate), *NEG_INTERVAL
    )


def min_han_kobayashi(
    budget: PrivacyBudget, theta1: float, theta2: float, rate: float
) -> ExponentResult:
    """Smallest Han-Kobayashi exponent over the budget.

    Attained by the same pair that maximises every Renyi divergence.
    """
    rate = _check_rate(rate)
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)
    return maximize_scalar(
        rate_objective(lambda s: max_renyi(budget, theta2, theta1, s), rate), *POS_INTERVAL
    )
