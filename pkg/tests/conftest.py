import math
import sys
from pathlib import Path

import numpy as np
import pytest

from bernoulli_ivp.solver import IVProblem

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"

SQ13 = math.sqrt(13)


def example1_exact(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-2.5 * x) * (np.cosh(SQ13 / 2 * x) + 3 / SQ13 * np.sinh(SQ13 / 2 * x)) - np.exp(-x)


def example3_exact(x):
    """Closed form obtained with t = sin(x): y_tt + 2y = 2(1 - t^2)."""
    x = np.asarray(x, dtype=float)
    return 2 - np.sin(x) ** 2 - 2 * np.cos(math.sqrt(2) * np.sin(x))


def example3_misstated_form(x):
    x = np.asarray(x, dtype=float)
    return 2 - 2 * np.cos(math.sqrt(2) * np.sin(x) ** 2) - np.sin(x)


@pytest.fixture
def example1():
    return IVProblem(5, 3, "exp(-x)", n=6)


@pytest.fixture
def example2():
    return IVProblem(-5, 2, "tan(x)", n=9)


@pytest.fixture
def example3():
    return IVProblem("tan(x)", "2*cos(x)^2", "2*cos(x)^4", n=6)


@pytest.fixture
def grid201():
    return np.linspace(0.0, 1.0, 201)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
