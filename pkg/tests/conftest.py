import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from wehrhart import HPolytope, WeightPoly
from wehrhart.alcoved import AlcovedSpec

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), "data")

# Hexagon and its wall-motion direction used in the dilation and sign tests.
HEX_A = ((1, -1), (1, 0), (-1, 1), (0, 1), (-1, 0), (0, -1))
HEX_V = (3, 5, 4, 8, 3, 0)
HEX_H = (-1, 2, 0, 1, 0, 0)
HEX_HSTAR = {
    0: (0, 25, 65, 10),
    1: (0, -7, -37, -10),
    2: (0, -10, -39, -9),
    3: (0, 18, 67, 15),
}


def hex_b(k):
    return tuple(v + k * h for v, h in zip(HEX_V, HEX_H))


@pytest.fixture
def hexagon():
    return HPolytope(HEX_A, HEX_V)


@pytest.fixture
def linear_weight():
    return WeightPoly.from_json(
        {"d": 2, "terms": [{"coeff": "-3", "exponents": [1, 0]}, {"coeff": "2", "exponents": [0, 1]}]})


def segment(b=(3, 0)):
    return HPolytope(((1,), (-1,)), b)


def cube(d):
    rows = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rows += [tuple(-x for x in r) for r in rows]
    return HPolytope(rows, (1,) * d + (0,) * d)


def alcoved_d2_formula():
    """The reference x1*x2 count for the d=2 alcoved type, as text and scale."""
    with open(os.path.join(DATA, "alcoved_d2_x1x2.txt")) as fh:
        body = " ".join(line.strip() for line in fh if not line.startswith("#"))
    return body, Fraction(1, 24)


def alcoved(text):
    return AlcovedSpec.parse(text)


ACCEPTANCE_LINES = []


def report(criterion, ok, detail=""):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
