"""Statistical utility of a mechanism and its best achievable values.

Fisher information measures how precisely the population ratio theta can be
estimated; f-divergences and Renyi divergences measure how well two candidate
ratios can be told apart.  The ``max_*`` functions give the largest value any
pair satisfying a :class:`PrivacyBudget` can reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp, xlogy

from .core import MechanismPair, PrivacyBudget, RROptimalError, check_theta, mixture_array


class ThetaOnBoundary(RROptimalError):
    pass


class SOutOfRange(RROptimalError):
    pass


# ---------------------------------------------------------------------------
# Fisher information


def fisher_information(pair: MechanismPair, theta: float) -> float:
    """``sum_y (p1(y) - p0(y))**2 / p_theta(y)``.

    Symbols that neither output uses contribute nothing.  At ``theta`` equal
    to 0 or 1 a symbol with zero mixture mass but unequal outputs makes the
    information infinite, which is reported as :class:`ThetaOnBoundary`.
    """
    theta = check_theta(theta)
    p0, p1 = pair.arrays()
    mix = mixture_array(pair, theta)
    diff = p1 - p0
    live = mix > 0
    if np.any(~live & (diff != 0)):
        raise ThetaOnBoundary(
            f"theta={theta!r} puts zero mass on a symbol where p0 and p1 differ"
        )
    return float(np.sum(diff[live] ** 2 / mix[live]))


def _case_i(a, w, theta):
    return (w - a) / (theta * (w * (1.0 - theta) + a * theta))


def _case_ii(a, w, theta):
    return (1.0 - w - a) / ((1.0 - theta) * (a * (1.0 - theta) + (1.0 - w) * theta))


def _case_iii(a, w, theta):
    return (1.0 - a / (w * (1.0 - theta) + (1.0 - w) * theta)) / (theta * (1.0 - theta))


def max_fisher(budget: PrivacyBudget, theta: float, alphabet_size: int = 3) -> float:
    """Largest Fisher information at ``theta`` among pairs within the budget.

    With two output symbols the answer depends on which side of
    ``budget.theta0`` theta falls; with three or more a single pair wins
    everywhere.
    """
    theta = check_theta(theta, interior=True)
    alphabet_size = int(alphabet_size)
    if alphabet_size < 2:
        raise RROptimalError(f"alphabet_size must be at least 2, got {alphabet_size}")
    a, w = budget.a, budget.weight
    if alphabet_size >= 3:
        return _case_iii(a, w, theta)
    if theta <= budget.theta0:
        return _case_i(a, w, theta)
    return _case_ii(a, w, theta)


def binary_case_values(budget: PrivacyBudget, theta: float) -> tuple[float, float]:
    """Fisher information of both binary-output shapes at ``theta``."""
    theta = check_theta(theta, interior=True)
    return _case_i(budget.a, budget.weight, theta), _case_ii(budget.a, budget.weight, theta)


# ---------------------------------------------------------------------------
# f-divergences


@dataclass(frozen=True)
class ConvexGenerator:
    """Convex ``f`` on ``(0, inf)`` plus its two boundary limits.

    ``limit_at_zero`` is ``f(0+)`` and ``slope_at_infinity`` is
    ``lim f(x)/x``; either may be ``math.inf``.  ``evaluate`` must accept
    numpy arrays.
    """

    evaluate: Callable[[np.ndarray], np.ndarray]
    limit_at_zero: float
    slope_at_infinity: float
    name: str = "f"

    def __call__(self, x):
        return self.evaluate(x)


def _xlogx(x):
    return xlogy(x, x)


KL = ConvexGenerator(_xlogx, 0.0, math.inf, "x log x")
LINEAR = ConvexGenerator(lambda x: x - 1.0, -1.0, 1.0, "x - 1")
TOTAL_VARIATION = ConvexGenerator(lambda x: 0.5 * np.abs(x - 1.0), 0.5, 0.5, "|x - 1|/2")
CHI_SQUARE = ConvexGenerator(lambda x: (x - 1.0) ** 2, 1.0, math.inf, "(x - 1)^2")
SQUARED_HELLINGER = ConvexGenerator(
    lambda x: (np.sqrt(x) - 1.0) ** 2, 1.0, 1.0, "(sqrt(x) - 1)^2"
)


def power_generator(s: float) -> ConvexGenerator:
    """``-x**(1+s)`` for ``s`` in (-1, 0) and ``x**(1+s)`` for ``s > 0``.

    The matching f-divergence ``F`` gives the Renyi divergence as
    ``log(|F|)/s``.
    """
    s = float(s)
    if s <= -1 or s == 0:
        raise SOutOfRange(f"power generator needs s in (-1,0) or (0,inf), got {s!r}")
    if s < 0:
        return ConvexGenerator(lambda x: -np.power(x, 1.0 + s), 0.0, 0.0, f"-x^{1 + s:g}")
    return ConvexGenerator(lambda x: np.power(x, 1.0 + s), 0.0, math.inf, f"x^{1 + s:g}")


def f_divergence_arrays(q1: np.ndarray, q2: np.ndarray, f: ConvexGenerator) -> float:
    both = (q1 > 0) & (q2 > 0)
    total = float(np.sum(q2[both] * f(q1[both] / q2[both])))
    for m in q1[(q2 == 0) & (q1 > 0)]:
        total += m * f.slope_at_infinity
    for m in q2[(q1 == 0) & (q2 > 0)]:
        total += m * f.limit_at_zero
    return total


def f_divergence(pair: MechanismPair, theta1: float, theta2: float, f: ConvexGenerator) -> float:
    """``D_f(p_theta1 || p_theta2) = sum_y p_theta2(y) f(p_theta1(y) / p_theta2(y))``."""
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)
    return f_divergence_arrays(mixture_array(pair, theta1), mixture_array(pair, theta2), f)


def _check_s(s: float) -> float:
    s = float(s)
    if not s > -1.0:
        raise SOutOfRange(f"Renyi order parameter s must exceed -1, got {s!r}")
    return s


def _renyi_from_terms(masses, log_ratios, s: float, lost_mass: float = 0.0) -> float:
    """``log(sum_k m_k * r_k**s) / s`` given ``sum_k m_k + lost_mass == 1``.

    For moderate ``|s|`` the sum minus one is accumulated through ``expm1``
    so the result keeps full relative precision as ``s -> 0``.
    """
    masses = np.asarray(masses, dtype=float)
    log_ratios = np.asarray(log_ratios, dtype=float)
    if lost_mass == 0.0 and not np.any(log_ratios):
        # identical distributions; the masses need not sum to exactly 1 in floats
        return 0.0
    if abs(s) <= 1.0:
        excess = float(np.sum(masses * np.expm1(s * log_ratios))) - lost_mass
        return math.log1p(excess) / s
    return float(logsumexp(np.log(masses) + s * log_ratios) / s)


def renyi_divergence_arrays(q1: np.ndarray, q2: np.ndarray, s: float) -> float:
    s = _check_s(s)
    live = q1 > 0
    orphan = live & (q2 == 0)
    if s >= 0 and np.any(orphan):
        return math.inf
    both = live & (q2 > 0)
    if not np.any(both):
        # disjoint supports with s < 0: the power sum vanishes
        return math.inf
    log_ratios = np.log(q1[both]) - np.log(q2[both])
    if s == 0.0:
        return float(np.sum(q1[both] * log_ratios))
    return _renyi_from_terms(q1[both], log_ratios, s, float(q1[orphan].sum()))


def renyi_divergence(pair: MechanismPair, theta1: float, theta2: float, s: float) -> float:
    """Relative Renyi entropy ``D_{1+s}(p_theta1 || p_theta2)``; KL at ``s = 0``."""
    s = _check_s(s)
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)
    return renyi_divergence_arrays(mixture_array(pair, theta1), mixture_array(pair, theta2), s)


def relative_entropy(pair: MechanismPair, theta1: float, theta2: float) -> float:
    return renyi_divergence(pair, theta1, theta2, 0.0)


# ---------------------------------------------------------------------------
# Closed-form maxima over the budget (three or more output symbols)


def _shared_mass(a, w, theta):
    # mixture mass of the shared symbol of the optimal pair
    return a * ((1.0 - theta) * w + theta * (1.0 - w)) / (w * (1.0 - w))


def _term(mass: float, value: float) -> float:
    return 0.0 if mass == 0.0 else mass * value


def max_f_divergence(
    budget: PrivacyBudget, theta1: float, theta2: float, f: ConvexGenerator
) -> float:
    """Largest ``D_f(p_theta1 || p_theta2)`` within the budget.

    Sum of three terms, one per symbol class of the optimal pair: shared,
    bit-0 only, bit-1 only.  The bit-1-only term is weighted by ``theta2``.
    """
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)
    a, w = budget.a, budget.weight
    m1 = _shared_mass(a, w, theta1)
    m2 = _shared_mass(a, w, theta2)
    only0 = 1.0 - a / (1.0 - w)
    only1 = 1.0 - a / w
    total = m2 * float(f(np.float64(m1 / m2)))
    total += _term(only0 * (1.0 - theta2), float(f(np.float64((1.0 - theta1) / (1.0 - theta2)))))
    total += _term(only1 * theta2, float(f(np.float64(theta1 / theta2))))
    return total


def max_renyi(budget: PrivacyBudget, theta1: float, theta2: float, s: float) -> float:
    """Largest ``D_{1+s}(p_theta1 || p_theta2)`` within the budget."""
    s = _check_s(s)
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)
    a, w = budget.a, budget.weight
    c = a / (w * (1.0 - w))
    u1 = (1.0 - theta1) * w + theta1 * (1.0 - w)
    u2 = (1.0 - theta2) * w + theta2 * (1.0 - w)
    only0 = 1.0 - a / (1.0 - w)
    only1 = 1.0 - a / w
    masses = [c * u1]
    log_ratios = [math.log(u1) - math.log(u2)]
    if only0 > 0:
        masses.append(only0 * (1.0 - theta1))
        log_ratios.append(math.log(1.0 - theta1) - math.log(1.0 - theta2))
    if only1 > 0:
        masses.append(only1 * theta1)
        log_ratios.append(math.log(theta1) - math.log(theta2))
    if s == 0.0:
        return float(sum(m * l for m, l in zip(masses, log_ratios)))
    return _renyi_from_terms(masses, log_ratios, s)
