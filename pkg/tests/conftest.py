import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from rroptimal.core import MechanismPair, PrivacyBudget


@pytest.fixture
def budget_quarter():
    return PrivacyBudget(0.25, 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_pair(rng, size, alpha=1.0):
    return MechanismPair.from_lists(
        rng.dirichlet(np.full(size, alpha)), rng.dirichlet(np.full(size, alpha))
    )


def random_budget(rng, w_half=False):
    delta = rng.uniform(0.05, 0.95)
    a = (1 - delta) / 2
    w = 0.5 if w_half else rng.uniform(a, 1 - a)
    return PrivacyBudget(delta, w)


@st.composite
def pairs(draw, min_size=2, max_size=6):
    size = draw(st.integers(min_size, max_size))
    seed = draw(st.integers(0, 2**32 - 1))
    sparse = draw(st.booleans())
    rng = np.random.default_rng(seed)
    p0 = rng.dirichlet(np.ones(size))
    p1 = rng.dirichlet(np.ones(size))
    if sparse:
        p0[rng.random(size) < 0.3] = 0.0
        p1[rng.random(size) < 0.3] = 0.0
        if p0.sum() == 0:
            p0[0] = 1.0
        if p1.sum() == 0:
            p1[-1] = 1.0
        p0 /= p0.sum()
        p1 /= p1.sum()
    return MechanismPair.from_lists(p0, p1)


@st.composite
def budgets(draw):
    delta = draw(st.floats(0.02, 0.98))
    a = (1 - delta) / 2
    w = draw(st.floats(a, 1 - a))
    return PrivacyBudget(delta, w)


interior = st.floats(0.001, 0.999)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
