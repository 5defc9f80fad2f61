import math
from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from wehrhart import MPoly
from wehrhart.poly import B, H, X
from wehrhart.todd import (
    bernoulli,
    scaled_table,
    todd_apply,
    todd_apply_all_and_zero,
    todd_apply_vars,
    todd_coefficients,
    todd_scaled,
)

VARS = [H(0), H(1), B(0), X(0)]
monomials = st.dictionaries(st.sampled_from(VARS), st.integers(1, 4), max_size=3)
polys = st.lists(st.tuples(monomials, st.integers(-9, 9)), max_size=5).map(
    lambda items: sum((MPoly.monomial(m, c) for m, c in items), MPoly()))


def test_known_bernoulli_numbers():
    assert [bernoulli(k) for k in range(5)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


def test_bernoulli_against_sympy():
    # sympy >= 1.12 uses B_1 = +1/2; the two conventions differ only there.
    for k in range(40):
        ref = sympy.bernoulli(k)
        if k == 1:
            ref = -ref
        assert bernoulli(k) == Fraction(int(ref.p), int(ref.q))


def test_bernoulli_recurrence_and_odd_vanishing():
    for k in range(1, 30):
        assert sum(math.comb(k + 1, i) * bernoulli(i) for i in range(k + 1)) == 0
        if k % 2 == 1 and k > 1:
            assert bernoulli(k) == 0


def test_todd_series_head():
    assert todd_coefficients(4) == [1, Fraction(1, 2), Fraction(1, 12), 0, Fraction(-1, 720)]


def test_single_variable_examples():
    assert todd_apply(MPoly.constant(7), H(0)) == MPoly.constant(7)
    assert todd_apply(MPoly.parse("h1"), H(0)) == MPoly.parse("h1 + 1/2")
    assert todd_apply(MPoly.parse("h1^2"), H(0)) == MPoly.parse("h1^2 + h1 + 1/6")


def test_segment_examples():
    p = (MPoly.parse("b1 + h1") ** 2 - MPoly.parse("h2") ** 2) / 2
    assert todd_apply_all_and_zero(p) == MPoly.parse("1/2*b1^2 + 1/2*b1")
    assert todd_apply_all_and_zero(MPoly.parse("b1 + b2 + h1 + h2")) == MPoly.parse("b1 + b2 + 1")
    q = MPoly.parse("b1^2 + 3")
    assert todd_apply_all_and_zero(q) == q


def test_todd_turns_integrals_into_sums():
    # Both endpoints perturbed: Todd of int_{-b2-h2}^{b1+h1} x^k dx is the
    # lattice sum over [-b2, b1].
    for k in range(6):
        hi, lo = MPoly.parse("b1 + h1"), MPoly.parse("-b2 - h2")
        integral = (hi ** (k + 1) - lo ** (k + 1)) / (k + 1)
        count = todd_apply_all_and_zero(integral)
        for b1 in range(4):
            for b2 in range(3):
                assert count.eval({B(0): b1, B(1): b2}) == sum(x ** k for x in range(-b2, b1 + 1))


@given(polys)
def test_todd_commutes(p):
    assert todd_apply_vars(p, [H(0), H(1)]) == todd_apply_vars(p, [H(1), H(0)])


@given(polys, polys, st.integers(-5, 5))
def test_todd_linear(p, q, a):
    assert todd_apply(p * a + q, H(0)) == todd_apply(p, H(0)) * a + todd_apply(q, H(0))


@given(polys, st.integers(0, 6))
def test_truncation_safety(p, extra):
    D = max(p.degree_in(H(0)), 0)
    coeffs = todd_coefficients(D + extra)
    manual = MPoly()
    for k, c in enumerate(coeffs):
        manual = manual + p.partial(H(0), k) * c
    assert manual == todd_apply(p, H(0))


@given(polys)
def test_integer_scaled_pass_matches(p):
    p = p * 1
    raw, den = todd_scaled(dict(p.raw_terms), 1, [H(0), H(1)])
    assert MPoly(raw) / den == todd_apply_vars(p, [H(0), H(1)])


def test_scaled_table():
    table, L = scaled_table(4)
    assert [Fraction(t, L) for t in table] == todd_coefficients(4)
