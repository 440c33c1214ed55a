"""Mechanism constructors: the optimal pairs, classical baselines, and the
optimality certificate for alphabets with at least three symbols.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    NORM_TOL,
    MechanismPair,
    PrivacyBudget,
    ProbabilityVector,
    RROptimalError,
    check_theta,
)

SUPPORT_TOL = 1e-12
OPTIMAL_TOL = 1e-9


class InvalidBreakpoints(RROptimalError):
    pass


class BlockNotNormalized(RROptimalError):
    pass


class AlphabetTooSmall(RROptimalError):
    pass


def _pair(p0, p1) -> MechanismPair:
    return MechanismPair(ProbabilityVector(p0), ProbabilityVector(p1))


def _check_unit_open(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 < value < 1.0):
        raise RROptimalError(f"{name} must lie in (0,1), got {value!r}")
    return value


def optimal_three_symbol(budget: PrivacyBudget) -> MechanismPair:
    """Fisher-optimal pair on three symbols; the same pair for every theta.

    Symbol 0 is shared, symbol 1 is emitted only by bit 0 and symbol 2 only
    by bit 1.  The constraint holds with equality.
    """
    a, w = budget.a, budget.weight
    x, y = a / (1.0 - w), a / w
    return _pair([x, 1.0 - x, 0.0], [y, 0.0, 1.0 - y])


def optimal_two_symbol(budget: PrivacyBudget, theta: float) -> MechanismPair:
    """Best binary-output pair; which of the two shapes wins depends on theta.

    At ``theta == theta0`` both shapes give the same Fisher information; the
    first shape is returned.
    """
    theta = check_theta(theta, interior=True)
    a, w = budget.a, budget.weight
    if theta <= budget.theta0:
        y = a / w
        return _pair([1.0, 0.0], [y, 1.0 - y])
    x = a / (1.0 - w)
    return _pair([x, 1.0 - x], [1.0, 0.0])


def warner_raw(pi: float) -> MechanismPair:
    """Warner's scheme: report the true bit with probability ``pi``."""
    pi = _check_unit_open("pi", pi)
    return _pair([pi, 1.0 - pi], [1.0 - pi, pi])


def greenberg_raw(pi: float, eta: float) -> MechanismPair:
    """Unrelated-question scheme.

    With probability ``pi`` the respondent answers truthfully; otherwise they
    answer an unrelated question whose YES rate is ``eta``.
    """
    pi = _check_unit_open("pi", pi)
    eta = _check_unit_open("eta", eta)
    return _pair(
        [pi + (1.0 - pi) * (1.0 - eta), (1.0 - pi) * eta],
        [(1.0 - pi) * (1.0 - eta), pi + (1.0 - pi) * eta],
    )


def warner(delta: float) -> MechanismPair:
    """Warner's scheme tuned so that ``||p0 - p1||_1 / 2 == delta``."""
    delta = _check_unit_open("delta", delta)
    return warner_raw((1.0 + delta) / 2.0)


def greenberg(delta: float, eta: float) -> MechanismPair:
    delta = _check_unit_open("delta", delta)
    return greenberg_raw(delta, eta)


def holohan(delta: float, theta: float) -> MechanismPair:
    """Binary ``(0, delta)``-DP pair, oriented by whether theta exceeds 1/2."""
    delta = _check_unit_open("delta", delta)
    theta = check_theta(theta)
    if theta <= 0.5:
        return _pair([1.0, 0.0], [1.0 - delta, delta])
    return _pair([1.0 - delta, delta], [1.0, 0.0])


@dataclass(frozen=True)
class OptimalFamilyParams:
    """Block layout of an optimal pair on ``len(b)`` symbols.

    Symbols ``[0, r1)`` are shared by both outputs, ``[r1, r2)`` belong to
    bit 0 only, ``[r2, r3)`` to bit 1 only and ``[r3, n)`` are never emitted.
    ``b`` distributes unit mass inside each block.
    """

    b: tuple[float, ...]
    r1: int
    r2: int
    r3: int

    def __post_init__(self):
        b = tuple(float(v) for v in self.b)
        object.__setattr__(self, "b", b)
        n = len(b)
        r1, r2, r3 = int(self.r1), int(self.r2), int(self.r3)
        if not (1 <= r1 < r2 < r3 <= n):
            raise InvalidBreakpoints(
                f"need 1 <= r1 < r2 < r3 <= {n}, got ({self.r1}, {self.r2}, {self.r3})"
            )
        if any(v < 0 for v in b):
            raise BlockNotNormalized("block weights must be non-negative")
        blocks = [(0, r1), (r1, r2), (r2, r3)]
        if r3 < n:
            blocks.append((r3, n))
        for lo, hi in blocks:
            total = sum(b[lo:hi])
            if abs(total - 1.0) > NORM_TOL:
                raise BlockNotNormalized(f"block [{lo + 1}..{hi}] sums to {total!r}, not 1")

    @property
    def size(self) -> int:
        return len(self.b)


def optimal_family(budget: PrivacyBudget, params: OptimalFamilyParams) -> MechanismPair:
    """Any optimal pair on three or more symbols, up to relabelling symbols."""
    a, w = budget.a, budget.weight
    b = np.asarray(params.b)
    x, y = a / (1.0 - w), a / w
    p0 = np.zeros(params.size)
    p1 = np.zeros(params.size)
    r1, r2, r3 = params.r1, params.r2, params.r3
    p0[:r1] = x * b[:r1]
    p1[:r1] = y * b[:r1]
    p0[r1:r2] = (1.0 - x) * b[r1:r2]
    p1[r2:r3] = (1.0 - y) * b[r2:r3]
    return _pair(p0, p1)


def is_optimal(pair: MechanismPair, budget: PrivacyBudget, tol: float = OPTIMAL_TOL) -> bool:
    """Certificate that a pair attains the largest Fisher information.

    Requires ``(1-w) p0(y) == w p1(y)`` on every symbol both outputs use, and
    ``(1-w) * p0(supp p1) == w * p1(supp p0) == a``.  Only meaningful for at
    least three symbols.
    """
    if pair.size < 3:
        raise AlphabetTooSmall(
            f"the optimality certificate needs at least 3 symbols, got {pair.size}"
        )
    a, w = budget.a, budget.weight
    p0, p1 = pair.arrays()
    in0 = p0 > SUPPORT_TOL
    in1 = p1 > SUPPORT_TOL
    shared = in0 & in1
    if np.any(np.abs((1.0 - w) * p0[shared] - w * p1[shared]) > tol):
        return False
    mass0 = (1.0 - w) * p0[in1].sum()
    mass1 = w * p1[in0].sum()
    return abs(mass0 - a) <= tol and abs(mass1 - a) <= tol
