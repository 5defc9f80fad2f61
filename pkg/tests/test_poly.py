from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wehrhart import MissingAssignment, MPoly
from wehrhart.poly import B, Block, H, T, X, Z, decode, encode, format_rational, homogeneous_components

VARS = [X(0), X(1), B(0), B(1), B(2), H(0), T]

coeffs = st.one_of(st.integers(-20, 20), st.fractions(max_denominator=12).filter(lambda f: abs(f) < 20))
monomials = st.dictionaries(st.sampled_from(VARS), st.integers(1, 3), max_size=3)
polys = st.lists(st.tuples(monomials, coeffs), max_size=6).map(
    lambda items: sum((MPoly.monomial(m, c) for m, c in items), MPoly()))
points = st.fixed_dictionaries({v: st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4)) for v in VARS})


def test_segment_count_formula_prints_canonically():
    b1, b2 = MPoly.var(B(0)), MPoly.var(B(1))
    p = (b1 * (b1 + 1) - b2 * (b2 + 1)) / 2
    assert p.to_str() == "1/2*b1^2 - 1/2*b2^2 + 1/2*b1 - 1/2*b2"


def test_construction_and_inspection():
    p = MPoly.parse("3*x1^2*x2 - 1/2*b1 + 7")
    assert p.degree() == 3
    assert p.degree(Block.B) == 1
    assert p.constant_term() == 7
    assert p.coefficient({X(0): 2, X(1): 1}) == 3
    assert set(p.variables()) == {X(0), X(1), B(0)}
    assert MPoly().degree() == -1
    assert MPoly.constant(0).is_zero()


def test_encode_decode_roundtrip():
    mono = {X(2): 3, B(4): 1, Z: 5}
    assert dict(decode(encode(mono))) == mono
    with pytest.raises(OverflowError):
        encode({X(0): 256})


def test_evaluate_requires_every_variable():
    p = MPoly.parse("b1*b2 + 1")
    assert p.eval({B(0): 2, B(1): 3}) == 7
    with pytest.raises(MissingAssignment):
        p.eval({B(0): 2})


def test_substitute_simultaneous():
    p = MPoly.parse("x1^2 + x2")
    swapped = p.substitute({X(0): MPoly.var(X(1)), X(1): MPoly.var(X(0))})
    assert swapped == MPoly.parse("x2^2 + x1")


def test_homogeneous_components_highest_first():
    p = MPoly.parse("x1^3 + x1*x2 + x2 + 5")
    comps = homogeneous_components(p, Block.X)
    assert [deg for deg, _ in comps] == [3, 2, 1, 0]
    assert sum((c for _, c in comps), MPoly()) == p


def test_partial_derivative():
    p = MPoly.parse("b1^3*b2 + b1")
    assert p.partial(B(0)) == MPoly.parse("3*b1^2*b2 + 1")
    assert p.partial(B(0), 3) == MPoly.parse("6*b2")
    assert p.partial(B(0), 4).is_zero()


def test_json_roundtrip_with_labels():
    names = {B(0): "b12", B(1): "b13"}
    p = MPoly.parse("1/24*b12^4 - 6*b12^2*b13^2", {n: v for v, n in names.items()})
    obj = p.to_json(names)
    assert obj["terms"][0] == {"coeff": "1/24", "monomial": {"b12": 4}}
    assert MPoly.from_json(obj, {n: v for v, n in names.items()}) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        MPoly.parse("x1 +* 2")
    with pytest.raises(ValueError):
        MPoly.parse("sin(x1)")


def test_format_rational():
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(6, 3)) == "2"


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MPoly()
    assert p * 1 == p


@given(polys, polys, points)
def test_evaluation_is_a_ring_homomorphism(p, q, pt):
    assert (p * q).eval(pt) == p.eval(pt) * q.eval(pt)
    assert (p + q).eval(pt) == p.eval(pt) + q.eval(pt)


@given(polys)
def test_string_roundtrip(p):
    assert MPoly.parse(p.to_str()) == p
    assert MPoly.from_json(p.to_json()) == p


@given(polys, polys)
def test_leibniz_rule(p, q):
    v = B(0)
    assert (p * q).partial(v) == p.partial(v) * q + p * q.partial(v)


@given(polys, points)
def test_substitution_then_eval(p, pt):
    img = {X(0): MPoly.parse("b1 + 2*t"), B(1): MPoly.parse("x2 - 1")}
    direct = p.substitute(img).eval(pt)
    inner = {v: img[v].eval(pt) if v in img else pt[v] for v in VARS}
    assert direct == p.eval(inner)


@given(polys)
def test_degree_of_product(p):
    q = MPoly.parse("x1 + b1 + 1")
    if not p.is_zero():
        assert (p * q).degree() == p.degree() + 1
