"""Brute-force ground truth: lattice-point enumeration and interpolation.

Nothing here touches the triangulation, integration or Todd code paths.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .geometry import HPolytope, VertexBasis, vertex_points
from .integration import WeightPoly
from .pipeline import EhrhartPoly


def bounding_box(P: HPolytope, b: Sequence[int]) -> Optional[List[Tuple[int, int]]]:
    """Integer ``[lo, hi]`` per coordinate from the exact vertices of ``P_A(b)``;
    ``None`` when the polytope is empty."""
    pts = vertex_points(P.A, tuple(b))
    if not pts:
        return None
    box = []
    for j in range(P.d):
        vals = [p[j] for p in pts]
        box.append((math.ceil(min(vals)), math.floor(max(vals))))
    return box


def lattice_points(P: HPolytope, b: Optional[Sequence[int]] = None) -> List[Tuple[int, ...]]:
    """All integer points of ``P_A(b)`` in lexicographic order."""
    b = P.b0 if b is None else tuple(int(x) for x in b)
    box = bounding_box(P, b)
    if box is None or any(lo > hi for lo, hi in box):
        return []
    A = np.array(P.A, dtype=object)
    rhs = np.array(b, dtype=object)
    axes = [np.arange(lo, hi + 1, dtype=object) for lo, hi in box]
    grid = np.array(np.meshgrid(*axes, indexing="ij"), dtype=object).reshape(P.d, -1).T
    if grid.size == 0:
        return []
    ok = np.all(grid.dot(A.T) <= rhs, axis=1)
    return [tuple(int(x) for x in row) for row in grid[ok]]


def weighted_count_oracle(P: HPolytope, b: Optional[Sequence[int]], w: WeightPoly) -> Fraction:
    """``sum_{p in P_A(b) cap Z^d} w(p)`` by direct enumeration."""
    pts = lattice_points(P, b)
    total = Fraction(0)
    for c, exps in w.monomials():
        s = 0
        for p in pts:
            term = 1
            for x, e in zip(p, exps):
                if e:
                    term *= x ** e
            s += term
        total += c * s
    return total


def ehrhart_by_interpolation(P: HPolytope, b: Optional[Sequence[int]], w: WeightPoly) -> EhrhartPoly:
    """Recover ``ehr_{P,w}(t)`` from the counts at ``t = 0..d+m``."""
    b = P.b0 if b is None else tuple(int(x) for x in b)
    k = P.d + w.m
    ts = list(range(k + 1))
    values = [weighted_count_oracle(P, [t * x for x in b], w) for t in ts]
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    V = [[t ** i for i in range(k + 1)] for t in ts]
    coeffs = linalg.solve(V, [int(v * den) for v in values])
    return EhrhartPoly(tuple(c / den for c in coeffs), k)


def fan_coarsens(P: HPolytope, bases: Sequence[VertexBasis], b: Sequence[int]) -> bool:
    """Whether the normal fan of ``P_A(b)`` coarsens that of ``P_A(b0)``.

    Checked from the vertices of ``P_A(b)`` directly: every vertex cone of
    ``P_A(b0)`` (a facet set ``I``) must sit inside the normal cone of some
    vertex of ``P_A(b)``, i.e. all of ``I`` is tight at that vertex.
    """
    b = tuple(b)
    tight_sets = []
    for x in vertex_points(P.A, b):
        tight_sets.append({
            i for i, (row, bi) in enumerate(zip(P.A, b))
            if sum(a * xi for a, xi in zip(row, x)) == bi
        })
    return all(any(set(vb.facets) <= T for T in tight_sets) for vb in bases)
