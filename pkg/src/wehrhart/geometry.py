"""H-polytopes ``P_A(b) = {x : A x <= b}`` with fixed facet normals.

Vertices are found by brute force over d-subsets of rows (exact rationals),
and the polytope at the base point ``b0`` is triangulated by a deterministic
placing triangulation whose vertices are carried along as linear forms in the
right-hand side variables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import Degenerate, Unbounded
from .poly import B, H, MPoly, VarId


@dataclass(frozen=True)
class HPolytope:
    """Integer facet matrix ``A`` (rows are outer normals) and base point ``b0``.

    ``labels`` optionally renames the right-hand side variables in printed
    output (``"b12"`` and so on for alcoved polytopes).
    """

    A: Tuple[Tuple[int, ...], ...]
    b0: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        b0 = tuple(int(x) for x in self.b0)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b0", b0)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        if not A or not A[0]:
            raise ValueError("facet matrix must be non-empty")
        d = len(A[0])
        if any(len(row) != d for row in A):
            raise ValueError("facet matrix rows have unequal length")
        if len(b0) != len(A):
            raise ValueError(f"b0 has length {len(b0)}, expected {len(A)}")
        if len(A) < d + 1:
            raise Degenerate(f"{len(A)} facets cannot bound a {d}-polytope")
        if self.labels is not None and len(self.labels) != len(A):
            raise ValueError("one label per row is required")
        _check_bounded(A)
        pts = vertex_points(A, b0)
        if not pts:
            raise Degenerate("P_A(b0) is empty")
        base = next(iter(pts))
        if linalg.rank([[x - y for x, y in zip(p, base)] for p in pts]) < d:
            raise Degenerate("P_A(b0) is not full-dimensional")

    @property
    def d(self) -> int:
        return len(self.A[0])

    @property
    def n(self) -> int:
        return len(self.A)

    def b_vars(self) -> List[VarId]:
        return [B(i) for i in range(self.n)]

    def names(self) -> Dict[VarId, str]:
        """Printing names for the b (and matching h) variables."""
        if self.labels is None:
            return {}
        out = {}
        for i, lab in enumerate(self.labels):
            out[B(i)] = lab
            out[H(i)] = "h" + lab[1:] if lab.startswith("b") else "h_" + lab
        return out

    def name_lookup(self) -> Dict[str, VarId]:
        return {name: v for v, name in self.names().items()}

    def contains(self, x: Sequence, b: Optional[Sequence] = None) -> bool:
        b = self.b0 if b is None else b
        return all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(self.A, b))

    def b_point(self, b: Sequence) -> Dict[VarId, int]:
        if len(b) != self.n:
            raise ValueError(f"right-hand side has length {len(b)}, expected {self.n}")
        return {B(i): b[i] for i in range(self.n)}


def _check_bounded(A) -> None:
    # The recession cone {x : A x <= 0} is trivial iff A has full column rank
    # and no extreme ray exists; an extreme ray is cut out by d-1 independent
    # rows, so its direction is the generalized cross product of those rows.
    d = len(A[0])
    if linalg.rank(A) < d:
        raise Unbounded("facet normals do not span R^d")
    for rows in itertools.combinations(range(len(A)), d - 1):
        M = [A[i] for i in rows]
        r = [(-1) ** j * linalg.int_det([row[:j] + row[j + 1:] for row in M]) for j in range(d)]
        if not any(r):
            continue
        vals = [sum(a * x for a, x in zip(row, r)) for row in A]
        if all(v <= 0 for v in vals) or all(v >= 0 for v in vals):
            raise Unbounded(f"P_A(b) is unbounded in direction {[int(x) for x in r]}")


def vertex_points(A, b) -> Dict[Tuple[Fraction, ...], Tuple[Tuple[int, ...], ...]]:
    """Map each vertex of ``P_A(b)`` to the d-subsets of rows solving to it.

    Tolerates degenerate (non-simple) vertices; used for validation and by
    the oracle.
    """
    d = len(A[0])
    out: Dict[Tuple[Fraction, ...], list] = {}
    for I in itertools.combinations(range(len(A)), d):
        inv = linalg.int_inverse([list(A[i]) for i in I])
        if inv is None:
            continue
        x = tuple(linalg.matvec(inv, [b[i] for i in I]))
        if x in out:
            out[x].append(I)
            continue
        if all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(A, b)):
            out[x] = [I]
    return {x: tuple(v) for x, v in out.items()}


@dataclass(frozen=True)
class VertexBasis:
    """A vertex given by its tight facet set ``I`` and ``inverse = A_I^-1``."""

    facets: Tuple[int, ...]
    inverse: Tuple[Tuple, ...]

    def point(self, b: Sequence) -> Tuple[Fraction, ...]:
        return tuple(linalg.matvec(self.inverse, [b[i] for i in self.facets]))

    def is_unimodular(self) -> bool:
        return abs(linalg.det(self.inverse)) == 1 and all(
            Fraction(x).denominator == 1 for row in self.inverse for x in row
        )


def enumerate_vertices(P: HPolytope, b: Optional[Sequence] = None) -> List[VertexBasis]:
    """One basis per vertex of ``P_A(b)`` (``b0`` by default).

    Raises ``Degenerate`` at a vertex with more than d tight facets.
    """
    b = P.b0 if b is None else tuple(b)
    out = []
    for x, subsets in vertex_points(P.A, b).items():
        tight = tuple(
            i for i, (row, bi) in enumerate(zip(P.A, b))
            if sum(a * xi for a, xi in zip(row, x)) == bi
        )
        if len(tight) > P.d:
            raise Degenerate(
                f"vertex {[str(c) for c in x]} has {len(tight)} tight facets {list(tight)}"
            )
        I = subsets[0]
        inv = linalg.int_inverse([list(P.A[i]) for i in I])
        out.append(VertexBasis(I, tuple(tuple(r) for r in inv)))
    out.sort(key=lambda vb: vb.facets)
    return out


def is_smooth(P: HPolytope) -> bool:
    try:
        bases = enumerate_vertices(P)
    except Degenerate:
        return False
    return all(abs(linalg.int_det([P.A[i] for i in vb.facets])) == 1 for vb in bases)


def non_smooth_vertex(P: HPolytope) -> Optional[str]:
    """Describe the first offending vertex, or ``None`` when ``P`` is smooth."""
    try:
        bases = enumerate_vertices(P)
    except Degenerate as exc:
        return str(exc)
    for vb in bases:
        D = linalg.int_det([P.A[i] for i in vb.facets])
        if abs(D) != 1:
            x = [str(c) for c in vb.point(P.b0)]
            return f"vertex {x} (facets {list(vb.facets)}) has |det A_I| = {abs(D)}"
    return None


def in_type_cone(P: HPolytope, bases: Sequence[VertexBasis], b: Sequence) -> bool:
    """Closed type cone membership: every vertex formula stays feasible at ``b``."""
    b = tuple(b)
    if len(b) != P.n:
        raise ValueError(f"right-hand side has length {len(b)}, expected {P.n}")
    return all(P.contains(vb.point(b), b) for vb in bases)


@dataclass(frozen=True)
class ParametricVertex:
    coords: Tuple[MPoly, ...]
    basis: VertexBasis

    def at(self, b: Sequence) -> Tuple[Fraction, ...]:
        point = {B(i): x for i, x in enumerate(b)}
        point.update({H(i): 0 for i in range(len(b))})
        return tuple(c.eval(point) for c in self.coords)


def parametric_vertex(vb: VertexBasis, perturbed: bool = True) -> ParametricVertex:
    """Vertex coordinates ``A_I^-1 (b_I + h_I)`` as linear forms.

    With ``perturbed=False`` the h-variables are omitted.
    """
    rhs = []
    for i in vb.facets:
        f = MPoly.var(B(i))
        if perturbed:
            f = f + MPoly.var(H(i))
        rhs.append(f)
    coords = []
    for row in vb.inverse:
        acc = MPoly()
        for coef, f in zip(row, rhs):
            if coef:
                acc = acc + f * coef
        coords.append(acc)
    return ParametricVertex(tuple(coords), vb)


@dataclass(frozen=True)
class ParametricTriangulation:
    polytope: HPolytope
    vertices: Tuple[ParametricVertex, ...]
    points: Tuple[Tuple[Fraction, ...], ...]
    simplices: Tuple[Tuple[int, ...], ...]
    orientation_signs: Tuple[int, ...]
    perturbed: bool = True

    def simplex(self, k: int) -> Tuple[ParametricVertex, ...]:
        return tuple(self.vertices[i] for i in self.simplices[k])

    def __len__(self):
        return len(self.simplices)


def _orient(points: Sequence[Sequence[Fraction]]) -> int:
    base = points[0]
    D = linalg.det([[x - y for x, y in zip(p, base)] for p in points[1:]])
    return (D > 0) - (D < 0)


def _placing(points: Sequence[Tuple[Fraction, ...]], order: Sequence[int], d: int):
    chosen: List[int] = []
    for i in order:
        cand = chosen + [i]
        base = points[cand[0]]
        if linalg.rank([[x - y for x, y in zip(points[j], base)] for j in cand[1:]]) == len(cand) - 1:
            chosen = cand
        if len(chosen) == d + 1:
            break
    if len(chosen) < d + 1:
        raise Degenerate("vertex set is not full-dimensional")
    simplices = [tuple(chosen)]
    for p in order:
        if p in chosen:
            continue
        counts: Dict[Tuple[int, ...], list] = {}
        for S in simplices:
            for k in range(d + 1):
                F = tuple(sorted(S[:k] + S[k + 1:]))
                counts.setdefault(F, []).append(S[k])
        added = []
        for F, opposite in counts.items():
            if len(opposite) != 1:
                continue
            s_p = _orient([points[i] for i in F] + [points[p]])
            s_q = _orient([points[i] for i in F] + [points[opposite[0]]])
            if s_p * s_q < 0:
                added.append(F + (p,))
        if not added:
            raise Degenerate(f"point {p} is not beyond any boundary facet")
        simplices.extend(added)
    return simplices


def triangulate(
    P: HPolytope,
    bases: Optional[Sequence[VertexBasis]] = None,
    order: object = "lex",
    perturbed: bool = True,
) -> ParametricTriangulation:
    """Placing triangulation of ``P_A(b0)`` on its vertices.

    ``order`` is ``"lex"`` (vertices sorted lexicographically at ``b0``),
    ``"revlex"``, or an explicit permutation of the vertex list.
    """
    if bases is None:
        bases = enumerate_vertices(P)
    bases = list(bases)
    points = [vb.point(P.b0) for vb in bases]
    if len(points) < P.d + 1:
        raise Degenerate("fewer than d+1 vertices")
    if order == "lex":
        perm = sorted(range(len(points)), key=lambda i: points[i])
    elif order == "revlex":
        perm = sorted(range(len(points)), key=lambda i: points[i], reverse=True)
    else:
        perm = list(order)
        if sorted(perm) != list(range(len(points))):
            raise ValueError("order must be a permutation of the vertex indices")
    simplices = _placing(points, perm, P.d)
    signs = []
    for S in simplices:
        s = _orient([points[i] for i in S])
        if s == 0:
            raise Degenerate(f"flat simplex {S}")
        signs.append(s)
    vertices = tuple(parametric_vertex(vb, perturbed) for vb in bases)
    return ParametricTriangulation(
        P, vertices, tuple(points), tuple(simplices), tuple(signs), perturbed
    )


def poly_det(rows: Sequence[Sequence[MPoly]]) -> MPoly:
    n = len(rows)
    if n == 1:
        return MPoly.coerce(rows[0][0])
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = MPoly()
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def parametric_volume(S: Sequence[ParametricVertex], sign: int) -> MPoly:
    """Signed volume ``sign * det(s_2 - s_1, ..., s_{d+1} - s_1) / d!``."""
    d = len(S) - 1
    s1 = S[0].coords
    rows = [[c - c1 for c, c1 in zip(v.coords, s1)] for v in S[1:]]
    return poly_det(rows) * Fraction(sign, math.factorial(d))


def volume(T: ParametricTriangulation) -> Fraction:
    """Euclidean volume of ``P_A(b0)`` from the triangulation's numeric points."""
    d = T.polytope.d
    total = Fraction(0)
    for S in T.simplices:
        pts = [T.points[i] for i in S]
        total += abs(linalg.det([[x - y for x, y in zip(p, pts[0])] for p in pts[1:]]))
    return total / math.factorial(d)
