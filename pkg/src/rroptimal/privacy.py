"""Privacy measures for a mechanism pair.

The l1 quantity ``||(1-w) p0 - w p1||_1`` controls how well an adversary who
sees one disclosed symbol can guess the private bit: the smallest achievable
weighted error is ``(1 - ||.||_1)/2``.  At ``w = 1/2`` the constraint is the
same as ``(0, delta)``-differential privacy.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import BOUND_TOL, MechanismPair, PrivacyBudget, RROptimalError

MAX_EXHAUSTIVE_SIZE = 20


class AlphabetTooLarge(RROptimalError):
    pass


def _check_weight(weight: float) -> float:
    weight = float(weight)
    if not (0.0 < weight < 1.0):
        raise RROptimalError(f"weight must lie in (0,1), got {weight!r}")
    return weight


def uc_security(pair: MechanismPair, weight: float = 0.5) -> float:
    """l1 norm of ``(1-w) p0 - w p1``; lies in ``[|1-2w|, 1]``."""
    w = _check_weight(weight)
    p0, p1 = pair.arrays()
    return float(np.abs((1.0 - w) * p0 - w * p1).sum())


def min_weighted_error(pair: MechanismPair, weight: float = 0.5) -> float:
    return 0.5 * (1.0 - uc_security(pair, weight))


def min_weighted_error_exhaustive(pair: MechanismPair, weight: float = 0.5) -> float:
    """Minimise ``(1-w) p0(S) + w p1(S^c)`` by walking every subset ``S``.

    Independent of the closed form; exponential in the alphabet size.
    """
    w = _check_weight(weight)
    if pair.size > MAX_EXHAUSTIVE_SIZE:
        raise AlphabetTooLarge(
            f"exhaustive search is capped at {MAX_EXHAUSTIVE_SIZE} symbols, got {pair.size}"
        )
    p0, p1 = pair.p0.tolist(), pair.p1.tolist()
    best = math.inf
    for mask in itertools.product((False, True), repeat=pair.size):
        err = 0.0
        for in_s, q0, q1 in zip(mask, p0, p1):
            err += (1.0 - w) * q0 if in_s else w * q1
        best = min(best, err)
    return best


def dp_delta(pair: MechanismPair, epsilon: float = 0.0) -> float:
    """Smallest delta for which the pair is ``(epsilon, delta)``-DP.

    The worst event for ordering ``(i, j)`` collects every symbol where
    ``p_i(y) > e^eps p_j(y)``; both orderings are checked.
    """
    epsilon = float(epsilon)
    if epsilon < 0:
        raise RROptimalError(f"epsilon must be non-negative, got {epsilon!r}")
    p0, p1 = pair.arrays()
    scale = math.exp(epsilon)
    forward = np.clip(p0 - scale * p1, 0.0, None).sum()
    backward = np.clip(p1 - scale * p0, 0.0, None).sum()
    return float(min(1.0, max(forward, backward)))


def satisfies_constraint(pair: MechanismPair, budget: PrivacyBudget) -> bool:
    return uc_security(pair, budget.weight) <= budget.delta + BOUND_TOL
