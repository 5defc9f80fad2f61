"""Parametric weighted counts, weighted Ehrhart and h*-polynomials.

The parametric count follows three steps: triangulate ``P_A(b0)`` with
vertices as linear forms, integrate the weight over the perturbed polytope,
then apply the Todd operator in the perturbation variables and set them to
zero.  Everything here is exact except ``hstar_roots``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import mpmath

from .errors import NotSmooth, OutsideTypeCone, ZeroPolynomial
from .geometry import (
    HPolytope,
    VertexBasis,
    enumerate_vertices,
    in_type_cone,
    non_smooth_vertex,
    triangulate,
)
from .integration import WeightPoly, _from_scaled, _integral_scaled, integrate_over_polytope
from .poly import Block, MPoly, T
from .poly import Z as _Z
from .todd import todd_apply_all_and_zero, todd_scaled


@dataclass(frozen=True)
class ParametricCount:
    """Weighted lattice-point count of ``P_A(b)`` as a polynomial in ``b``.

    Valid for every ``b`` in the closed type cone of ``polytope.b0``.
    """

    poly: MPoly
    polytope: HPolytope
    bases: Tuple[VertexBasis, ...]
    weight: WeightPoly

    @property
    def d(self) -> int:
        return self.polytope.d

    @property
    def m(self) -> int:
        return self.weight.m

    @property
    def degree_cap(self) -> int:
        return self.d + self.m

    def in_cone(self, b: Sequence[int]) -> bool:
        return in_type_cone(self.polytope, self.bases, b)

    def __call__(self, b: Sequence[int]) -> Fraction:
        return self.poly.eval(self.polytope.b_point(b))

    def to_str(self) -> str:
        return self.poly.to_str(self.polytope.names())


def parametric_weighted_count(P: HPolytope, w: WeightPoly, *, perturbed: bool = False) -> ParametricCount:
    """Weighted count of ``P_A(b)`` as a polynomial in ``b``.

    ``perturbed=True`` carries separate ``h`` variables through the integral
    and applies ``Todd_h`` before zeroing them.  The default integrates in
    ``b`` alone and applies ``Todd_b``, which is the same operator after the
    shift ``b -> b + h`` and halves the number of variables.
    """
    if w.d != P.d:
        raise ValueError(f"weight lives in R^{w.d} but the polytope in R^{P.d}")
    reason = non_smooth_vertex(P)
    if reason is not None:
        raise NotSmooth(reason)
    bases = enumerate_vertices(P)
    T_ = triangulate(P, bases, perturbed=perturbed)
    if perturbed:
        poly = todd_apply_all_and_zero(integrate_over_polytope(w, T_))
    else:
        raw, den = _integral_scaled(w, T_)
        raw, den = todd_scaled(raw, den, P.b_vars())
        poly = _from_scaled(raw, den)
    return ParametricCount(poly, P, tuple(bases), w)


@dataclass(frozen=True)
class EhrhartPoly:
    """``ehr(t) = sum_i coeffs[i] t^i`` with ``len(coeffs) == degree_cap + 1``.

    Coefficients are ``Fraction`` for a concrete polytope and ``MPoly`` in the
    b-variables for the parametric form.
    """

    coeffs: Tuple
    degree_cap: int

    def __post_init__(self):
        if len(self.coeffs) != self.degree_cap + 1:
            raise ValueError("need exactly degree_cap + 1 coefficients")

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def dilate(self, r: int) -> "EhrhartPoly":
        """The Ehrhart polynomial of ``rP``: ``t -> ehr(r t)``."""
        return EhrhartPoly(tuple(c * r ** i for i, c in enumerate(self.coeffs)), self.degree_cap)

    def evaluate_at(self, b_point) -> "EhrhartPoly":
        return EhrhartPoly(tuple(MPoly.coerce(c).eval(b_point) for c in self.coeffs), self.degree_cap)


def weighted_ehrhart(pc: ParametricCount, b: Optional[Sequence[int]] = None) -> EhrhartPoly:
    """Weighted Ehrhart polynomial of ``P_A(b)`` by the substitution ``b -> t b``.

    With ``b=None`` the coefficients are polynomials in ``b``.
    """
    k = pc.degree_cap
    by_t = pc.poly.substitute({v: MPoly.var(T) * MPoly.var(v) for v in pc.polytope.b_vars()})
    sym = [MPoly() for _ in range(k + 1)]
    for deg, comp in by_t.homogeneous_components(Block.T):
        if deg > k:
            raise AssertionError(f"count has degree {deg} > d + m = {k}")
        sym[deg] = comp.set_zero([T]) if deg == 0 else comp.substitute({T: 1})
    if b is None:
        return EhrhartPoly(tuple(sym), k)
    b = tuple(int(x) for x in b)
    if not pc.in_cone(b):
        raise OutsideTypeCone(f"b = {list(b)} is outside the closed type cone of b0 = {list(pc.polytope.b0)}")
    point = pc.polytope.b_point(b)
    return EhrhartPoly(tuple(c.eval(point) for c in sym), k)


@lru_cache(maxsize=None)
def eulerian(i: int) -> Tuple[int, ...]:
    """Coefficients (ascending) of ``A_i`` with ``sum_t t^i z^t = A_i(z)/(1-z)^(i+1)``."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i == 0:
        return (1,)
    prev = eulerian(i - 1)
    # A_i = z (1 - z) A_{i-1}' + i z A_{i-1}
    deriv = [j * prev[j] for j in range(1, len(prev))]
    out = [0] * (i + 1)
    for j, c in enumerate(deriv):
        out[j + 1] += c
        out[j + 2] -= c
    for j, c in enumerate(prev):
        out[j + 1] += i * c
    return tuple(out)


def _mul1(p: Sequence, q: Sequence) -> List:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, c in enumerate(q):
            out[i + j] += a * c
    return out


def _one_minus_z_pow(e: int) -> List[int]:
    return [(-1) ** j * math.comb(e, j) for j in range(e + 1)]


@dataclass(frozen=True)
class HStarData:
    """Numerator ``sum coeffs[j] z^j`` of the (weighted) Ehrhart series over
    ``(1 - z)^denom_exponent``."""

    coeffs: Tuple
    denom_exponent: int
    weight_degree: int = 0

    @property
    def degree_cap(self) -> int:
        return self.denom_exponent - 1

    def at_one(self):
        return sum(self.coeffs, Fraction(0))

    def to_str(self, var: str = "z") -> str:
        p = MPoly({(((_Z, j),) if j else ()): c for j, c in enumerate(self.coeffs)})
        return p.to_str({_Z: var})


def hstar_dilated(e: EhrhartPoly, r: int = 1, weight_degree: int = 0) -> HStarData:
    """h*-polynomial of the r-th dilate:
    ``sum_i c_i r^i A_i(z) (1 - z)^(k - i)`` with ``k = e.degree_cap``."""
    if r < 1:
        raise ValueError("dilation factor must be a positive integer")
    k = e.degree_cap
    out: List = [0] * (k + 1)
    for i, c in enumerate(e.coeffs):
        if not c:
            continue
        contrib = _mul1(eulerian(i), _one_minus_z_pow(k - i))
        scale = c * r ** i
        for j, a in enumerate(contrib):
            if a:
                out[j] = out[j] + scale * a
    out = [Fraction(x) if not isinstance(x, MPoly) else x for x in out]
    return HStarData(tuple(out), k + 1, weight_degree)


def hstar(e: EhrhartPoly, weight_degree: int = 0) -> HStarData:
    return hstar_dilated(e, 1, weight_degree)


def hstar_roots(h: HStarData, dps: int = 60) -> List[complex]:
    """All complex roots of ``h``, ascending by real part.

    Computed with Durand-Kerner iteration (``mpmath.polyroots``) at ``dps``
    digits and certified by ``|h(root)| < 1e-20 * max|coeff|``.
    """
    coeffs = [Fraction(c) for c in h.coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomial("the zero polynomial has no finite root set")
    zeros = 0
    while coeffs[zeros] == 0:
        zeros += 1
    roots: List[complex] = [0j] * zeros
    rest = coeffs[zeros:]
    if len(rest) > 1:
        with mpmath.workdps(dps):
            mp_coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(rest)]
            found = mpmath.polyroots(mp_coeffs, maxsteps=500, extraprec=4 * dps)
            norm = max(abs(c) for c in mp_coeffs)
            for z in found:
                resid = abs(mpmath.polyval(mp_coeffs, z))
                if resid >= mpmath.mpf("1e-20") * norm:
                    raise ArithmeticError(f"root {z} failed the residual check ({resid})")
                roots.append(complex(z))
    return sorted(roots, key=lambda z: (z.real, z.imag))


def sign_pattern(h: HStarData) -> Tuple[str, ...]:
    """Signs of ``h*_1..h*_k``, plus ``h*_0`` first when the weight degree is 0."""
    coeffs = h.coeffs if h.weight_degree == 0 else h.coeffs[1:]
    return tuple("+" if c > 0 else "-" if c < 0 else "0" for c in coeffs)


def same_sign(h: HStarData) -> bool:
    pat = [s for s in sign_pattern(h)]
    return bool(pat) and "0" not in pat and len(set(pat)) == 1


def dilation_scan(e: EhrhartPoly, r_values: Sequence[int], weight_degree: int = 0):
    """``[(r, HStarData, sign pattern)]`` for each dilation factor."""
    out = []
    for r in r_values:
        hs = hstar_dilated(e, r, weight_degree)
        out.append((r, hs, sign_pattern(hs)))
    return out


def same_sign_threshold(e: EhrhartPoly, r_max: int, weight_degree: int = 0) -> Optional[int]:
    """Smallest ``R0 <= r_max`` with one common coefficient sign for every
    ``r`` in ``[R0, r_max]``; ``None`` if ``r_max`` itself fails."""
    R0 = None
    for r in range(r_max, 0, -1):
        if same_sign(hstar_dilated(e, r, weight_degree)):
            R0 = r
        else:
            break
    return R0
