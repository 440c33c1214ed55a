"""Value types shared by every module: distributions, mechanism pairs, budgets.

A randomized-response mechanism for a private bit is an ordered pair
``(p0, p1)`` of distributions over a finite disclosed alphabet.  Respondents
holding bit ``x`` report a symbol drawn from ``p_x``; an analyst who does not
see the bits observes the mixture ``(1 - theta) p0 + theta p1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12
CLAMP_TOL = 1e-15
BOUND_TOL = 1e-12


class RROptimalError(ValueError):
    """Base class for domain errors raised by this package."""


class NegativeEntry(RROptimalError):
    pass


class NotNormalized(RROptimalError):
    pass


class SizeMismatch(RROptimalError):
    pass


class InvalidBudget(RROptimalError):
    pass


class InvalidTheta(RROptimalError):
    pass


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ProbabilityVector:
    """A validated probability distribution over ``size`` symbols.

    Entries in ``[-1e-15, 0)`` are clamped to zero so that closed-form
    constructions landing on an exact zero survive float round-off.
    """

    probs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.probs, dtype=float).ravel()
        if arr.size == 0:
            raise RROptimalError("a distribution needs at least one symbol")
        if not np.all(np.isfinite(arr)):
            raise RROptimalError(f"non-finite probability in {arr.tolist()}")
        if np.any(arr < -CLAMP_TOL):
            raise NegativeEntry(f"negative probability in {arr.tolist()}")
        arr[arr < 0] = 0.0
        total = arr.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise NotNormalized(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", _readonly(arr))

    @property
    def size(self) -> int:
        return self.probs.size

    def __len__(self):
        return self.size

    def __getitem__(self, idx):
        return self.probs[idx]

    def __eq__(self, other):
        if not isinstance(other, ProbabilityVector):
            return NotImplemented
        return self.size == other.size and bool(np.all(self.probs == other.probs))

    def __hash__(self):
        return hash(self.probs.tobytes())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    def tolist(self) -> list[float]:
        return self.probs.tolist()


def make_distribution(values: Sequence[float]) -> ProbabilityVector:
    return ProbabilityVector(values)


@dataclass(frozen=True)
class MechanismPair:
    """Ordered pair ``(p0, p1)``: output distributions for private bits 0 and 1."""

    p0: ProbabilityVector
    p1: ProbabilityVector

    def __post_init__(self):
        p0 = self.p0 if isinstance(self.p0, ProbabilityVector) else ProbabilityVector(self.p0)
        p1 = self.p1 if isinstance(self.p1, ProbabilityVector) else ProbabilityVector(self.p1)
        if p0.size != p1.size:
            raise SizeMismatch(f"p0 has {p0.size} symbols but p1 has {p1.size}")
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "p1", p1)

    @classmethod
    def from_lists(cls, p0: Sequence[float], p1: Sequence[float]) -> "MechanismPair":
        return cls(ProbabilityVector(p0), ProbabilityVector(p1))

    @property
    def size(self) -> int:
        return self.p0.size

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self.p0.probs, self.p1.probs

    def to_dict(self) -> dict:
        return {"p0": self.p0.tolist(), "p1": self.p1.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, obj: dict) -> "MechanismPair":
        try:
            p0, p1 = obj["p0"], obj["p1"]
        except (KeyError, TypeError) as exc:
            raise RROptimalError('mechanism JSON needs "p0" and "p1" arrays') from exc
        if not isinstance(p0, list) or not isinstance(p1, list):
            raise RROptimalError('"p0" and "p1" must be JSON arrays')
        for v in p0 + p1:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise RROptimalError(f"non-numeric probability {v!r}")
        return cls.from_lists(p0, p1)

    @classmethod
    def from_json(cls, text: str) -> "MechanismPair":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RROptimalError(f"malformed mechanism JSON: {exc}") from exc
        return cls.from_dict(obj)


@dataclass(frozen=True)
class PrivacyBudget:
    """Constraint ``||(1-w) p0 - w p1||_1 <= delta``.

    ``a = (1 - delta)/2`` is the floor on the adversary's weighted error and
    ``theta0 = (w - a)/delta`` is where the best binary-output mechanism
    switches shape.
    """

    delta: float
    weight: float = 0.5
    a: float = field(init=False)
    theta0: float = field(init=False)

    def __post_init__(self):
        delta, w = float(self.delta), float(self.weight)
        if not (0.0 < delta < 1.0):
            raise InvalidBudget(f"delta must lie in (0,1), got {delta!r}")
        a = (1.0 - delta) / 2.0
        if not (a - BOUND_TOL <= w <= 1.0 - a + BOUND_TOL):
            raise InvalidBudget(
                f"weight must lie in [a, 1-a] = [{a!r}, {1 - a!r}] for delta={delta!r}, got {w!r}"
            )
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "a", a)
        # same as (w - a)/delta, but exactly 1/2 when w == 1/2
        object.__setattr__(self, "theta0", min(1.0, max(0.0, (2.0 * w - 1.0 + delta) / (2.0 * delta))))


def check_theta(theta: float, interior: bool = False) -> float:
    """Validate a population ratio; ``interior`` demands ``0 < theta < 1``."""
    theta = float(theta)
    if not (0.0 <= theta <= 1.0):
        raise InvalidTheta(f"theta must lie in [0,1], got {theta!r}")
    if interior and theta in (0.0, 1.0):
        raise InvalidTheta(f"theta must lie strictly inside (0,1), got {theta!r}")
    return theta


def mixture_array(pair: MechanismPair, theta: float) -> np.ndarray:
    p0, p1 = pair.arrays()
    return (1.0 - theta) * p0 + theta * p1


def mixture(pair: MechanismPair, theta: float) -> ProbabilityVector:
    """Distribution of one disclosed symbol when a fraction ``theta`` holds bit 1."""
    theta = check_theta(theta)
    return ProbabilityVector(mixture_array(pair, theta))
