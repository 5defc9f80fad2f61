"""Exact integration of polynomial weights over parametric simplices.

For a homogeneous ``f`` of degree ``m`` on a d-simplex with vertices
``s_1..s_{d+1}``::

    int f = vol / (2^m m! C(m+d, m)) * sum_{i_1<=...<=i_m} sum_eps
            eps_1...eps_m f(eps_1 s_{i_1} + ... + eps_m s_{i_m})

The vertices are linear forms in the right-hand-side variables, so the result
is a polynomial in those variables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Sequence, Tuple

from . import kernels
from .errors import NotHomogeneous
from .geometry import ParametricTriangulation, ParametricVertex, poly_det
from .poly import Block, MPoly, X, decode


@dataclass(frozen=True)
class WeightPoly:
    """A weight polynomial in the x-variables of R^d."""

    w: MPoly
    d: int

    def __post_init__(self):
        for v in self.w.variables():
            if v.block != Block.X or v.index >= self.d:
                raise ValueError(f"weight uses {v}, which is not one of x1..x{self.d}")

    @property
    def m(self) -> int:
        return max(self.w.degree(), 0)

    @property
    def homogeneous(self) -> bool:
        return self.w.is_homogeneous()

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1) -> "WeightPoly":
        d = len(exponents)
        return cls(MPoly.monomial({X(j): e for j, e in enumerate(exponents) if e}, coeff), d)

    @classmethod
    def one(cls, d: int) -> "WeightPoly":
        return cls(MPoly.constant(1), d)

    @classmethod
    def from_json(cls, obj: Mapping) -> "WeightPoly":
        d = int(obj["d"])
        w = MPoly()
        for term in obj["terms"]:
            exps = [int(e) for e in term["exponents"]]
            if len(exps) != d:
                raise ValueError(f"exponent vector {exps} does not have length {d}")
            w = w + MPoly.monomial({X(j): e for j, e in enumerate(exps) if e},
                                   Fraction(str(term["coeff"])))
        return cls(w, d)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "terms": [
                {"coeff": _fmt(c), "exponents": [mono.get(X(j), 0) for j in range(self.d)]}
                for mono, c in self.w.terms()
            ],
        }

    def monomials(self) -> List[Tuple[Fraction, Tuple[int, ...]]]:
        return [(c, tuple(mono.get(X(j), 0) for j in range(self.d))) for mono, c in self.w.terms()]

    def __call__(self, point: Sequence) -> Fraction:
        return self.w.eval({X(j): x for j, x in enumerate(point)})


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _x_monomials(f: MPoly, d: int) -> List[Tuple[object, Tuple[int, ...]]]:
    out = []
    for k, c in f.raw_terms.items():
        exps = [0] * d
        for v, e in decode(k):
            exps[v.index] = e
        out.append((c, tuple(exps)))
    return out


def _eval_monomials(monos, point: List[dict]) -> dict:
    """``f(point)`` where ``point`` holds linear forms as raw term dicts."""
    cache = {}

    def power(j, e):
        got = cache.get((j, e))
        if got is None:
            got = point[j] if e == 1 else kernels.mul(power(j, e - 1), point[j])
            cache[(j, e)] = got
        return got

    out: dict = {}
    for c, exps in monos:
        acc = {0: c}
        for j, e in enumerate(exps):
            if e:
                acc = kernels.mul(acc, power(j, e))
                if not acc:
                    break
        kernels.add_into(out, acc)
    return out


def _simplex_sum(monos, m: int, S: Sequence[ParametricVertex]) -> dict:
    """The double sum over multisets and sign vectors, as a raw term dict.

    ``f(-y) = (-1)^m f(y)`` makes the summand invariant under ``eps -> -eps``,
    so only ``eps_1 = +1`` is enumerated and the total is doubled.
    """
    d = len(S) - 1
    coords = [[v.coords[j].raw_terms for j in range(d)] for v in S]
    total: dict = {}
    for multiset in itertools.combinations_with_replacement(range(d + 1), m):
        for tail in itertools.product((1, -1), repeat=m - 1):
            eps = (1,) + tail
            point = []
            for j in range(d):
                acc: dict = {}
                for e, i in zip(eps, multiset):
                    kernels.add_into(acc, coords[i][j], e)
                point.append(acc)
            sign = 1
            for e in tail:
                sign *= e
            kernels.add_into(total, _eval_monomials(monos, point), 2 * sign)
    return total


def _signed_det(S: Sequence[ParametricVertex], sign: int) -> MPoly:
    s1 = S[0].coords
    rows = [[c - c1 for c, c1 in zip(v.coords, s1)] for v in S[1:]]
    D = poly_det(rows)
    return D if sign > 0 else -D


def _raw_simplex_integral(f: MPoly, m: int, S: Sequence[ParametricVertex], sign: int) -> dict:
    """``d! * 2^m m! C(m+d, m) * int_S f`` as a raw term dict (m >= 1)."""
    d = len(S) - 1
    inner = _simplex_sum(_x_monomials(f, d), m, S)
    return kernels.mul(_signed_det(S, sign).raw_terms, inner)


def _scale_for(d: int, m: int) -> Fraction:
    return Fraction(1, math.factorial(d) * 2 ** m * math.factorial(m) * math.comb(m + d, m))


def _check_homogeneous(f: MPoly, d: int) -> int:
    comps = f.homogeneous_components(Block.X)
    if len(comps) > 1:
        raise NotHomogeneous(f"weight {f} mixes degrees {[deg for deg, _ in comps]}")
    for v in f.variables():
        if v.block != Block.X or v.index >= d:
            raise ValueError(f"weight uses {v}, which is not one of x1..x{d}")
    return comps[0][0] if comps else 0


def integrate_over_simplex(f, S: Sequence[ParametricVertex], sign: int) -> MPoly:
    """Integral of a homogeneous ``f`` over the parametric simplex ``S``."""
    d = len(S) - 1
    w = f.w if isinstance(f, WeightPoly) else MPoly.coerce(f)
    m = _check_homogeneous(w, d)
    if w.is_zero():
        return MPoly()
    if m == 0:
        return integrate_over_simplex_degree0(w.constant_term(), S, sign)
    raw = _raw_simplex_integral(w, m, S, sign)
    return MPoly._raw(kernels.scale(raw, _scale_for(d, m)))


def integrate_over_simplex_degree0(c, S: Sequence[ParametricVertex], sign: int) -> MPoly:
    d = len(S) - 1
    return _signed_det(S, sign) * (Fraction(c) / math.factorial(d))


def _integral_scaled(w, T: ParametricTriangulation) -> Tuple[dict, int]:
    """``(raw, den)`` with ``int_{P} w = raw / den``.

    ``raw`` stays integral when the weight and the vertex forms are.
    """
    d = T.polytope.d
    wp = w.w if isinstance(w, WeightPoly) else MPoly.coerce(w)
    wden = 1
    for c in wp.raw_terms.values():
        if isinstance(c, Fraction):
            wden = wden * c.denominator // math.gcd(wden, c.denominator)
    if wden != 1:
        wp = wp * wden
    parts = []
    for m, comp in wp.homogeneous_components(Block.X):
        _check_homogeneous(comp, d)
        acc: dict = {}
        for k, S in enumerate(T.simplices):
            verts = [T.vertices[i] for i in S]
            sign = T.orientation_signs[k]
            if m == 0:
                part = kernels.scale(_signed_det(verts, sign).raw_terms, comp.constant_term())
            else:
                part = _raw_simplex_integral(comp, m, verts, sign)
            kernels.add_into(acc, part)
        scale = Fraction(1, math.factorial(d)) if m == 0 else _scale_for(d, m)
        parts.append((acc, scale.denominator))
    den = 1
    for _, pden in parts:
        den = den * pden // math.gcd(den, pden)
    raw: dict = {}
    for acc, pden in parts:
        kernels.add_into(raw, acc, den // pden)
    return raw, den * wden


def _from_scaled(raw: dict, den: int) -> MPoly:
    if den == 1:
        return MPoly(raw)
    return MPoly(kernels.scale(raw, Fraction(1, den)))


def integrate_over_polytope(w, T: ParametricTriangulation) -> MPoly:
    """``int_{P_A(b+h)} w dx`` summed over the simplices of ``T``.

    Inhomogeneous weights are split into homogeneous components.
    """
    return _from_scaled(*_integral_scaled(w, T))
