"""Bernoulli numbers and the Todd operator on polynomials."""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from . import kernels
from .poly import Block, MPoly, VarId

_lock = threading.Lock()
_bernoulli: List[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """``B_k`` with ``z/(e^z - 1) = sum B_k z^k / k!`` (so ``B_1 = -1/2``)."""
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    if k >= len(_bernoulli):
        with _lock:
            for n in range(len(_bernoulli), k + 1):
                # sum_{i=0}^{n} C(n+1, i) B_i = 0
                s = sum(math.comb(n + 1, i) * _bernoulli[i] for i in range(n))
                _bernoulli.append(-s / (n + 1))
    return _bernoulli[k]


def todd_coefficients(K: int) -> List[Fraction]:
    """``[(-1)^k B_k / k!  for k = 0..K]``."""
    return [(-1) ** k * bernoulli(k) / math.factorial(k) for k in range(K + 1)]


# Classical Todd series 1 + x/2 + x^2/12 - ...; guards the sign convention.
assert todd_coefficients(2) == [1, Fraction(1, 2), Fraction(1, 12)]


def _table(K: int) -> list:
    return [c.numerator if c.denominator == 1 else c for c in todd_coefficients(K)]


def todd_apply(p: MPoly, v: VarId) -> MPoly:
    """Apply ``Todd_v`` exactly; the series stops at the degree of ``p`` in ``v``."""
    deg = p.degree_in(v)
    if deg <= 0:
        return p
    return MPoly._raw(kernels.todd(p.raw_terms, v.shift, _table(deg)))


def todd_apply_vars(p: MPoly, variables: Iterable[VarId]) -> MPoly:
    for v in variables:
        p = todd_apply(p, v)
    return p


def todd_apply_all_and_zero(p: MPoly) -> MPoly:
    """Apply ``Todd_h`` for every h-variable in ``p``, then set ``h = 0``."""
    hs = [v for v in p.variables() if v.block == Block.H]
    terms = p.raw_terms
    for v in hs:
        deg = max(((k >> v.shift) & kernels.MASK for k in terms), default=0)
        if deg:
            terms = kernels.todd(terms, v.shift, _table(deg))
        terms = kernels.drop_var(terms, v.shift)
    return MPoly._raw(dict(terms))


def scaled_table(K: int) -> Tuple[List[int], int]:
    """Integer Todd coefficients ``L * c_k`` and the common denominator ``L``."""
    coeffs = todd_coefficients(K)
    L = 1
    for c in coeffs:
        L = L * c.denominator // math.gcd(L, c.denominator)
    return [int(c * L) for c in coeffs], L


def todd_scaled(raw: dict, den: int, variables: Iterable[VarId]) -> Tuple[dict, int]:
    """Todd operator on ``raw / den`` in integer arithmetic.

    Returns ``(raw', den')`` with ``Todd(raw / den) = raw' / den'``.
    """
    for v in variables:
        deg = max(((k >> v.shift) & kernels.MASK for k in raw), default=0)
        if deg:
            table, L = scaled_table(deg)
            raw = kernels.todd(raw, v.shift, table)
            den *= L
    return raw, den


def todd_apply_block(p: MPoly, block: Block = Block.B, variables: Optional[Iterable[VarId]] = None) -> MPoly:
    """Apply the Todd operator in every variable of ``block`` without zeroing.

    For a polynomial ``F(b)``, ``Todd_h F(b + h)`` at ``h = 0`` equals
    ``Todd_b F(b)``, which avoids doubling the variable count.
    """
    if variables is None:
        variables = [v for v in p.variables() if v.block == block]
    return todd_apply_vars(p, variables)
