"""Survey simulation and maximum-likelihood recovery of theta.

Random streams come from numpy's counter-based Philox generator; trial ``i``
of a Monte Carlo run with seed ``s`` uses ``Philox(s + i)`` so results are
bit-reproducible and independent of execution order.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

from .core import MechanismPair, RROptimalError, check_theta
from .information import fisher_information

MLE_TOL = 1e-10
FISHER_CLAMP = 1e-9


class DegenerateLikelihood(RROptimalError):
    pass


class NonPositiveFisher(RROptimalError):
    pass


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class SurveyDataset:
    """Per-symbol counts of disclosed answers from ``n`` respondents."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if not counts:
            raise RROptimalError("a dataset needs at least one symbol")
        if any(c < 0 for c in counts):
            raise RROptimalError(f"counts must be non-negative, got {counts}")
        object.__setattr__(self, "counts", counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def size(self) -> int:
        return len(self.counts)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["symbol", "count"])
        for i, c in enumerate(self.counts):
            writer.writerow([i, c])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SurveyDataset":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [h.strip() for h in rows[0]] != ["symbol", "count"]:
            raise RROptimalError('dataset CSV must start with the header "symbol,count"')
        body = [r for r in rows[1:] if r]
        try:
            pairs = sorted((int(s), int(c)) for s, c in body)
        except ValueError as exc:
            raise RROptimalError(f"malformed dataset row: {exc}") from exc
        if [s for s, _ in pairs] != list(range(len(pairs))):
            raise RROptimalError("dataset symbols must be 0, 1, ..., |Y|-1 with no gaps")
        return cls(tuple(c for _, c in pairs))


def _sample_counts(pair: MechanismPair, theta: float, n: int, rng: np.random.Generator):
    # X ~ Bernoulli(theta) per respondent, then Y ~ p_X; grouped by X value
    ones = rng.binomial(n, theta)
    p0, p1 = pair.arrays()
    counts = rng.multinomial(n - ones, p0) + rng.multinomial(ones, p1)
    return counts


def sample_survey(pair: MechanismPair, theta: float, n: int, seed: int) -> SurveyDataset:
    theta = check_theta(theta)
    if n < 1:
        raise RROptimalError(f"need at least one respondent, got n={n}")
    return SurveyDataset(tuple(_sample_counts(pair, theta, int(n), make_rng(seed)).tolist()))


@dataclass(frozen=True)
class EstimateResult:
    theta_hat: float
    fisher_at_hat: float
    ci_lo: float
    ci_hi: float
    alpha: float
    n: int
    uninformative: bool = False


def _score(p0, p1, counts, theta):
    mix = (1.0 - theta) * p0 + theta * p1
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(np.sum(counts * (p1 - p0) / mix))


def mle_theta(pair: MechanismPair, data: SurveyDataset) -> tuple[float, bool]:
    """Maximiser of ``sum_y counts(y) log p_theta(y)`` over ``[0, 1]``.

    The log-likelihood is concave, so its derivative is bisected.  Returns
    ``(theta_hat, uninformative)``; data that carry no information about
    theta give ``(0.5, True)``.
    """
    if data.size != pair.size:
        raise RROptimalError(
            f"dataset has {data.size} symbols but the mechanism has {pair.size}"
        )
    if data.n < 1:
        raise RROptimalError("dataset is empty")
    p0, p1 = pair.arrays()
    counts = np.asarray(data.counts, dtype=float)
    seen = counts > 0
    if np.any(seen & (p0 == 0) & (p1 == 0)):
        raise DegenerateLikelihood("observed a symbol the mechanism never emits")
    p0, p1, counts = p0[seen], p1[seen], counts[seen]
    if np.all(p0 == p1):
        return 0.5, True
    if _score(p0, p1, counts, 0.0) <= 0:
        return 0.0, False
    if _score(p0, p1, counts, 1.0) >= 0:
        return 1.0, False
    lo, hi = 0.0, 1.0
    while hi - lo > MLE_TOL:
        mid = 0.5 * (lo + hi)
        if _score(p0, p1, counts, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), False


def normal_quantile(p: float) -> float:
    """Inverse of the standard normal CDF."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise RROptimalError(f"quantile level must lie in (0,1), got {p!r}")
    return float(ndtri(p))


def confidence_interval(theta_hat: float, fisher: float, n: int, alpha: float = 0.05):
    """Asymptotic ``1 - alpha`` interval ``theta_hat -/+ z / sqrt(n J)``, clipped to [0, 1]."""
    if not fisher > 0:
        raise NonPositiveFisher(f"Fisher information must be positive, got {fisher!r}")
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise RROptimalError(f"alpha must lie in (0,1), got {alpha!r}")
    half = normal_quantile(1.0 - alpha / 2.0) / math.sqrt(n * fisher)
    return max(0.0, theta_hat - half), min(1.0, theta_hat + half)


def mle(pair: MechanismPair, data: SurveyDataset, alpha: float = 0.05) -> EstimateResult:
    theta_hat, flat = mle_theta(pair, data)
    clamped = min(max(theta_hat, FISHER_CLAMP), 1.0 - FISHER_CLAMP)
    fisher = fisher_information(pair, clamped)
    if fisher > 0:
        lo, hi = confidence_interval(theta_hat, fisher, data.n, alpha)
    else:
        lo, hi = 0.0, 1.0
    return EstimateResult(theta_hat, fisher, lo, hi, float(alpha), data.n, flat)


@dataclass(frozen=True)
class SimulationSummary:
    theta: float
    n: int
    trials: int
    alpha: float
    mean_theta_hat: float
    std_theta_hat: float
    mse: float
    crb: float
    coverage: float
    uninformative_trials: int

    @property
    def mse_over_crb(self) -> float:
        return self.mse / self.crb if self.crb > 0 else math.inf


def run_trials(pair: MechanismPair, theta: float, n: int, trials: int, seed: int,
               alpha: float = 0.05) -> list[EstimateResult]:
    theta = check_theta(theta)
    if trials < 1:
        raise RROptimalError(f"need at least one trial, got {trials}")
    return [
        mle(pair, SurveyDataset(tuple(_sample_counts(pair, theta, n, make_rng(seed + i)).tolist())),
            alpha)
        for i in range(trials)
    ]


def monte_carlo_mse(pair: MechanismPair, theta: float, n: int, trials: int, seed: int) -> float:
    """Empirical mean of ``(theta_hat - theta)**2`` over independent surveys."""
    results = run_trials(pair, theta, n, trials, seed)
    return math.fsum((r.theta_hat - theta) ** 2 for r in results) / trials


def simulate(pair: MechanismPair, theta: float, n: int, trials: int, seed: int,
             alpha: float = 0.05) -> SimulationSummary:
    """Monte Carlo check of the estimator against the Cramer-Rao bound ``1/(n J)``."""
    theta = check_theta(theta, interior=True)
    results = run_trials(pair, theta, n, trials, seed, alpha)
    hats = np.array([r.theta_hat for r in results])
    mse = math.fsum((h - theta) ** 2 for h in hats) / trials
    fisher = fisher_information(pair, theta)
    covered = sum(r.ci_lo <= theta <= r.ci_hi for r in results)
    return SimulationSummary(
        theta=theta,
        n=int(n),
        trials=int(trials),
        alpha=float(alpha),
        mean_theta_hat=math.fsum(hats) / trials,
        std_theta_hat=float(np.std(hats)),
        mse=mse,
        crb=1.0 / (n * fisher) if fisher > 0 else math.inf,
        coverage=covered / trials,
        uninformative_trials=sum(r.uninformative for r in results),
    )
