"""Numerical certification of the closed-form optima.

Nothing here trusts the closed forms: objectives are evaluated symbol by
symbol on explicitly enumerated or randomly drawn feasible pairs, and the
best value found is compared with the value the theory predicts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import BOUND_TOL, MechanismPair, PrivacyBudget, ProbabilityVector, check_theta
from .information import ConvexGenerator

HOMOGENEITY_RTOL = 1e-9
SUBADDITIVITY_ATOL = 1e-9
DET_TOL = 1e-12
J_EQUALITY_TOL = 1e-10


@dataclass(frozen=True)
class SublinearObjective:
    """Per-symbol function ``psi(p0(y), p1(y))``; must broadcast over arrays."""

    psi: Callable[[np.ndarray, np.ndarray], np.ndarray]
    description: str = ""

    def __call__(self, x, y):
        return self.psi(np.asarray(x, dtype=float), np.asarray(y, dtype=float))


def fisher_objective(theta: float) -> SublinearObjective:
    theta = check_theta(theta, interior=True)

    def psi(x, y):
        den = (1.0 - theta) * x + theta * y
        with np.errstate(divide="ignore", invalid="ignore"):
            val = (y - x) ** 2 / den
        return np.where(den > 0, val, 0.0)

    return SublinearObjective(psi, f"Fisher information at theta={theta!r}")


def f_divergence_objective(theta1: float, theta2: float, f: ConvexGenerator) -> SublinearObjective:
    theta1 = check_theta(theta1, interior=True)
    theta2 = check_theta(theta2, interior=True)

    def psi(x, y):
        m1 = (1.0 - theta1) * x + theta1 * y
        m2 = (1.0 - theta2) * x + theta2 * y
        live = m2 > 0
        safe = np.where(live, m2, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = m2 * f(m1 / safe)
        return np.where(live, val, 0.0)

    return SublinearObjective(
        psi, f"D_f(p_{theta1!r} || p_{theta2!r}) with f = {f.name}"
    )


def sublinear_check(obj: SublinearObjective, samples: int = 1000, seed: int = 0) -> bool:
    """Test positive homogeneity and subadditivity on random inputs.

    About one coordinate in five is set to exactly zero so that boundary
    conventions get exercised.
    """
    rng = np.random.default_rng(seed)

    def draw():
        v = rng.uniform(0.0, 2.0, samples)
        v[rng.random(samples) < 0.2] = 0.0
        return v

    x1, y1, x2, y2 = draw(), draw(), draw(), draw()
    alpha = np.exp(rng.uniform(np.log(1e-3), np.log(1e3), samples))
    base = obj(x1, y1)
    scaled = obj(alpha * x1, alpha * y1)
    if not (np.all(np.isfinite(base)) and np.all(np.isfinite(scaled))):
        return False
    homog = np.abs(scaled - alpha * base) <= HOMOGENEITY_RTOL * np.maximum(1.0, np.abs(alpha * base))
    subadd = obj(x1 + x2, y1 + y2) <= base + obj(x2, y2) + SUBADDITIVITY_ATOL
    return bool(np.all(homog) and np.all(subadd))


def evaluate_psi_sum(obj: SublinearObjective, pair: MechanismPair) -> float:
    p0, p1 = pair.arrays()
    return float(np.sum(obj(p0, p1)))


def _family_arrays(budget: PrivacyBudget, alphabet_size: int, grid_points: int):
    if alphabet_size not in (2, 3):
        raise ValueError(f"extreme-point enumeration covers 2 or 3 symbols, got {alphabet_size}")
    if grid_points < 2:
        raise ValueError(f"grid_points must be at least 2, got {grid_points}")
    a, w = budget.a, budget.weight
    xs = np.linspace(a / (1.0 - w), 1.0, grid_points)
    ys = np.linspace(a / w, 1.0, grid_points)
    blocks0, blocks1 = [], []
    if alphabet_size == 3:
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        X, Y = X.ravel(), Y.ravel()
        zero = np.zeros_like(X)
        blocks0.append(np.column_stack([X, 1.0 - X, zero]))
        blocks1.append(np.column_stack([Y, zero, 1.0 - Y]))
    pad = [np.zeros(grid_points)] * (alphabet_size - 2)
    one, zero = np.ones(grid_points), np.zeros(grid_points)
    # bit 0 always reports symbol 0; bit 1 mixes symbols 0 and 1
    blocks0.append(np.column_stack([one, zero] + pad))
    blocks1.append(np.column_stack([ys, 1.0 - ys] + pad))
    # mirror image
    blocks0.append(np.column_stack([xs, 1.0 - xs] + pad))
    blocks1.append(np.column_stack([one, zero] + pad))
    return np.vstack(blocks0), np.vstack(blocks1)


def candidate_count(alphabet_size: int, grid_points: int) -> int:
    """Number of pairs emitted by :func:`extreme_point_candidates`."""
    return grid_points**2 + 2 * grid_points if alphabet_size == 3 else 2 * grid_points


def extreme_point_candidates(
    budget: PrivacyBudget, alphabet_size: int = 3, grid_points: int = 50
) -> list[MechanismPair]:
    """Feasible pairs with one shared symbol and disjoint supports elsewhere.

    Every extreme point of the feasible set has this shape, so a convex
    objective attains its maximum among them.  The grids start exactly at
    the boundary values ``a/(1-w)`` and ``a/w``.
    """
    P0, P1 = _family_arrays(budget, alphabet_size, grid_points)
    return [MechanismPair(ProbabilityVector(r0), ProbabilityVector(r1)) for r0, r1 in zip(P0, P1)]


def _uc_rows(budget: PrivacyBudget, P0: np.ndarray, P1: np.ndarray) -> np.ndarray:
    w = budget.weight
    return np.abs((1.0 - w) * P0 - w * P1).sum(axis=1)


def random_feasible_pairs(
    budget: PrivacyBudget, alphabet_size: int, draws: int, seed: int
) -> tuple[np.ndarray, np.ndarray, float]:
    """Rejection-sample pairs uniformly from the product of simplices.

    Returns the accepted ``(P0, P1)`` rows and the acceptance rate.
    """
    rng = np.random.default_rng(seed)
    P0 = rng.dirichlet(np.ones(alphabet_size), draws)
    P1 = rng.dirichlet(np.ones(alphabet_size), draws)
    keep = _uc_rows(budget, P0, P1) <= budget.delta + BOUND_TOL
    rate = float(keep.mean()) if draws else 0.0
    return P0[keep], P1[keep], rate


@dataclass(frozen=True)
class SearchReport:
    best_value: float
    best_pair: MechanismPair
    candidates_examined: int
    closed_form_value: float
    gap: float
    grid_best_value: float
    grid_gap: float
    acceptance_rate: float

    def to_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "best_pair": self.best_pair.to_dict(),
            "candidates_examined": self.candidates_examined,
            "closed_form_value": self.closed_form_value,
            "gap": self.gap,
            "grid_best_value": self.grid_best_value,
            "grid_gap": self.grid_gap,
            "acceptance_rate": self.acceptance_rate,
        }


def _argmax_row(values: np.ndarray, P0: np.ndarray, P1: np.ndarray) -> int:
    best = values.max()
    ties = np.flatnonzero(values == best)
    if ties.size == 1:
        return int(ties[0])
    keyed = [(json.dumps([P0[i].tolist(), P1[i].tolist()]), int(i)) for i in ties]
    return min(keyed)[1]


def brute_force_max(
    budget: PrivacyBudget,
    obj: SublinearObjective,
    alphabet_size: int = 3,
    grid_points: int = 400,
    random_samples: int = 100_000,
    seed: int = 0,
    closed_form: float | None = None,
) -> SearchReport:
    """Best objective value over enumerated extreme points plus random feasible pairs.

    ``closed_form`` is the value to certify; when omitted it is the objective
    at the three-symbol optimal pair (or, for two symbols, the better of the
    two boundary pairs), which is what the theory predicts.
    """
    G0, G1 = _family_arrays(budget, alphabet_size, grid_points)
    R0, R1, rate = random_feasible_pairs(budget, alphabet_size, random_samples, seed)
    P0, P1 = np.vstack([G0, R0]), np.vstack([G1, R1])
    values = np.sum(obj(P0, P1), axis=1)
    grid_values = values[: len(G0)]
    if closed_form is None:
        closed_form = _predicted_max(budget, obj, alphabet_size)
    i = _argmax_row(values, P0, P1)
    best_pair = MechanismPair(ProbabilityVector(P0[i]), ProbabilityVector(P1[i]))
    best = float(values[i])
    grid_best = float(grid_values.max())
    return SearchReport(
        best_value=best,
        best_pair=best_pair,
        candidates_examined=int(len(values)),
        closed_form_value=float(closed_form),
        gap=float(closed_form) - best,
        grid_best_value=grid_best,
        grid_gap=float(closed_form) - grid_best,
        acceptance_rate=rate,
    )


def _predicted_max(budget: PrivacyBudget, obj: SublinearObjective, alphabet_size: int) -> float:
    a, w = budget.a, budget.weight
    x, y = a / (1.0 - w), a / w
    if alphabet_size >= 3:
        p0 = np.zeros(alphabet_size)
        p1 = np.zeros(alphabet_size)
        p0[:2] = [x, 1.0 - x]
        p1[0], p1[2] = y, 1.0 - y
        return float(np.sum(obj(p0, p1)))
    first = np.sum(obj(np.array([1.0, 0.0]), np.array([y, 1.0 - y])))
    second = np.sum(obj(np.array([x, 1.0 - x]), np.array([1.0, 0.0])))
    return float(max(first, second))


def _fisher_arrays(q0: np.ndarray, q1: np.ndarray, theta: float) -> float:
    mix = (1.0 - theta) * q0 + theta * q1
    live = mix > 0
    return float(np.sum((q1[live] - q0[live]) ** 2 / mix[live]))


def convexity_equality_holds(
    qpair: MechanismPair, qpair2: MechanismPair, theta: float, t: float
) -> tuple[bool, bool]:
    """Compare the two sides of the equality condition for convexity of J.

    Returns ``(J is affine along the segment, every per-symbol 2x2
    determinant vanishes)``.  The two answers should always agree.
    """
    theta = check_theta(theta, interior=True)
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0,1), got {t!r}")
    q0, q1 = qpair.arrays()
    r0, r1 = qpair2.arrays()
    mixed = _fisher_arrays((1.0 - t) * q0 + t * r0, (1.0 - t) * q1 + t * r1, theta)
    combo = (1.0 - t) * _fisher_arrays(q0, q1, theta) + t * _fisher_arrays(r0, r1, theta)
    dets = q1 * r0 - q0 * r1
    return bool(abs(mixed - combo) <= J_EQUALITY_TOL), bool(np.all(np.abs(dets) <= DET_TOL))


def break_optimality(pair: MechanismPair, eps: float = 1e-3) -> MechanismPair:
    """Feasible perturbation of an optimal pair that violates the certificate.

    Moves ``eps`` of one output's exclusive mass onto a shared symbol.  This
    keeps the l1 constraint (the shared symbol's imbalance grows by exactly
    the amount the exclusive mass shrinks) but breaks the proportionality
    ``(1-w) p0(y) == w p1(y)``.
    """
    p0, p1 = (arr.copy() for arr in pair.arrays())
    shared = np.flatnonzero((p0 > 0) & (p1 > 0))
    if shared.size == 0:
        raise ValueError("pair has no shared symbol")
    target = shared[0]
    for donor_row in (p0, p1):
        other = p1 if donor_row is p0 else p0
        exclusive = np.flatnonzero((donor_row >= eps) & (other == 0))
        if exclusive.size:
            donor_row[exclusive[0]] -= eps
            donor_row[target] += eps
            return MechanismPair(ProbabilityVector(p0), ProbabilityVector(p1))
    raise ValueError(f"no exclusive symbol carries at least eps={eps!r}")
