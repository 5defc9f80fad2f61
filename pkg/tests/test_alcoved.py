import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import HEX_A, HEX_V
from wehrhart import ExhaustedAttempts, NotMetric, enumerate_vertices, in_type_cone, is_smooth
from wehrhart.alcoved import (
    AlcovedSpec,
    alcoved_labels,
    alcoved_matrix,
    is_maximal,
    is_tight_metric,
    random_alcoved,
    refine_to_maximal,
    triangle_slacks,
)


def test_matrices():
    assert alcoved_matrix(1) == [(1,), (-1,)]
    assert alcoved_matrix(2) == list(HEX_A)
    assert len(alcoved_matrix(3)) == 12
    assert alcoved_labels(2) == ["b12", "b13", "b21", "b23", "b31", "b32"]


def test_parse_shorthand():
    s = AlcovedSpec.parse("d=2 b12=3,b13=5,b21=4,b23=8,b31=3,b32=0")
    assert s.vector() == HEX_V
    assert AlcovedSpec.parse(str(s)) == s
    with pytest.raises(ValueError):
        AlcovedSpec.parse("d=2 b12=3")
    with pytest.raises(ValueError):
        AlcovedSpec.parse("b12=3")


def test_tight_metric():
    assert is_tight_metric(AlcovedSpec.from_vector(2, HEX_V))
    assert not is_tight_metric(AlcovedSpec.from_vector(2, (1, 5, 1, 1, 0, 0)))
    assert is_tight_metric(AlcovedSpec.from_vector(2, (0,) * 6))


def test_maximal():
    assert is_maximal(AlcovedSpec.from_vector(2, HEX_V))
    assert is_maximal(AlcovedSpec.from_vector(2, (1, 2, 1, 2, 1, 1)))
    # b13 = b12 + b23
    assert not is_maximal(AlcovedSpec.from_vector(2, (2, 5, 4, 3, 3, 1)))
    with pytest.raises(NotMetric):
        is_maximal(AlcovedSpec.from_vector(2, (1, 5, 1, 1, 0, 0)))


def test_strict_inequalities_are_not_enough_in_dimension_three():
    # Some b have every triangle slack positive, yet a vertex of P_A(b) has
    # more than three tight facets.
    hits = 0
    for seed in range(400):
        r = random.Random(seed)
        s = AlcovedSpec.from_vector(3, [r.randint(0, 6) for _ in range(12)])
        if all(v > 0 for v in triangle_slacks(s).values()) and not is_maximal(s):
            hits += 1
    assert hits > 0


def test_random_generator():
    a = random_alcoved(2, 10, 42)
    assert a == random_alcoved(2, 10, 42)
    assert is_maximal(a)
    s = random_alcoved(1, 1, 0)
    assert sum(s.vector()) > 0
    with pytest.raises(ExhaustedAttempts):
        random_alcoved(3, 1, 0, max_attempts=5)


@pytest.mark.parametrize("text", [
    "d=2 b12=1,b13=1,b21=0,b23=0,b31=0,b32=0",
    "d=2 b12=2,b13=5,b21=4,b23=3,b31=3,b32=1",
    "d=2 b12=0,b13=0,b21=0,b23=0,b31=0,b32=0",
    "d=3 b12=1,b13=1,b14=1,b21=0,b23=0,b24=0,b31=0,b32=0,b34=0,b41=0,b42=0,b43=0",
])
def test_refine_to_maximal(text):
    s = AlcovedSpec.parse(text)
    r = refine_to_maximal(s)
    assert is_maximal(r)
    P = r.polytope()
    bases = enumerate_vertices(P)
    assert in_type_cone(P, bases, s.vector())
    for vb in bases:
        assert P.contains(vb.point(s.vector()), s.vector())


def test_refine_keeps_maximal_input():
    s = AlcovedSpec.from_vector(2, HEX_V)
    assert refine_to_maximal(s) == s


@given(st.integers(0, 2 ** 32), st.sampled_from([2, 3]))
def test_random_maximal_are_smooth_with_central_binomial_vertices(seed, d):
    s = random_alcoved(d, 10, seed)
    P = s.polytope()
    assert len(enumerate_vertices(P)) == {2: 6, 3: 20}[d]
    assert is_smooth(P)
