"""Type-A alcoved polytopes ``x_i - x_j <= b_ij`` (with ``x_{d+1} = 0``)."""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

from .errors import ExhaustedAttempts, NotMetric
from .geometry import HPolytope, enumerate_vertices, in_type_cone, vertex_points


def alcoved_pairs(d: int) -> List[Tuple[int, int]]:
    """Ordered pairs ``(i, j)``, ``i != j`` in ``1..d+1``, lexicographically."""
    return [(i, j) for i in range(1, d + 2) for j in range(1, d + 2) if i != j]


def pair_label(i: int, j: int, d: int) -> str:
    return f"b{i}{j}" if d + 1 <= 9 else f"b{i}_{j}"


def alcoved_labels(d: int) -> List[str]:
    return [pair_label(i, j, d) for i, j in alcoved_pairs(d)]


def alcoved_matrix(d: int) -> List[Tuple[int, ...]]:
    """Rows ``e_i - e_j`` in canonical pair order (``e_{d+1} = 0``)."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    rows = []
    for i, j in alcoved_pairs(d):
        row = [0] * d
        if i <= d:
            row[i - 1] += 1
        if j <= d:
            row[j - 1] -= 1
        rows.append(tuple(row))
    return rows


@dataclass(frozen=True)
class AlcovedSpec:
    d: int
    b: Tuple[Tuple[Tuple[int, int], int], ...]

    @classmethod
    def from_mapping(cls, d: int, b: Mapping[Tuple[int, int], int]) -> "AlcovedSpec":
        pairs = alcoved_pairs(d)
        if set(b) != set(pairs):
            raise ValueError(f"need exactly the {len(pairs)} pairs {pairs}")
        return cls(d, tuple((p, int(b[p])) for p in pairs))

    @classmethod
    def from_vector(cls, d: int, values: Sequence[int]) -> "AlcovedSpec":
        pairs = alcoved_pairs(d)
        if len(values) != len(pairs):
            raise ValueError(f"need {len(pairs)} values, got {len(values)}")
        return cls(d, tuple(zip(pairs, (int(v) for v in values))))

    @classmethod
    def parse(cls, text: str) -> "AlcovedSpec":
        """Parse ``"d=2 b12=3,b13=5,b21=4,b23=8,b31=3,b32=0"``."""
        m = re.match(r"\s*d\s*=\s*(\d+)\s*(.*)\Z", text)
        if not m:
            raise ValueError(f"expected 'd=<int> bij=<int>,...', got {text!r}")
        d = int(m.group(1))
        labels = {pair_label(i, j, d): (i, j) for i, j in alcoved_pairs(d)}
        b = {}
        for item in filter(None, re.split(r"[,\s]+", m.group(2))):
            key, _, val = item.partition("=")
            if key not in labels or not val:
                raise ValueError(f"bad alcoved entry {item!r}")
            b[labels[key]] = int(val)
        return cls.from_mapping(d, b)

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.b)

    def vector(self) -> Tuple[int, ...]:
        return tuple(v for _, v in self.b)

    def polytope(self) -> HPolytope:
        return HPolytope(alcoved_matrix(self.d), self.vector(), tuple(alcoved_labels(self.d)))

    def __str__(self):
        return f"d={self.d} " + ",".join(f"{pair_label(i, j, self.d)}={v}" for (i, j), v in self.b)


def triangle_slacks(s: AlcovedSpec) -> Dict[Tuple[int, int, int], int]:
    """``b_ij + b_jk - b_ik`` for all distinct ``i, j, k``."""
    b = s.as_dict()
    idx = range(1, s.d + 2)
    return {
        (i, j, k): b[(i, j)] + b[(j, k)] - b[(i, k)]
        for i, j, k in itertools.permutations(idx, 3)
    }


def is_tight_metric(s: AlcovedSpec) -> bool:
    return all(v >= 0 for v in triangle_slacks(s).values())


def _expected_vertices(d: int) -> int:
    return math.comb(2 * d, d)


def _is_simple_full(s: AlcovedSpec) -> bool:
    A = alcoved_matrix(s.d)
    pts = vertex_points(A, s.vector())
    if len(pts) != _expected_vertices(s.d):
        return False
    b = s.vector()
    for x in pts:
        tight = sum(1 for row, bi in zip(A, b) if sum(a * xi for a, xi in zip(row, x)) == bi)
        if tight != s.d:
            return False
    return True


def is_maximal(s: AlcovedSpec) -> bool:
    """Strict triangle inequalities and a simple polytope with C(2d, d) vertices.

    From d = 3 on, strictness alone does not exclude walls between maximal
    cones of the fan of types, so the vertex check is part of the test.
    """
    slacks = triangle_slacks(s)
    if any(v < 0 for v in slacks.values()):
        raise NotMetric(f"{s} violates a triangle inequality")
    if any(v == 0 for v in slacks.values()):
        return False
    return _is_simple_full(s)


def _random_vector(d: int, hi: int, rng: random.Random) -> Tuple[int, ...]:
    return tuple(rng.randint(0, hi) for _ in alcoved_pairs(d))


def random_alcoved(d: int, range_: int, rng_seed, max_attempts: int = 100_000) -> AlcovedSpec:
    """Uniform entries in ``[0, range_]``, rejected until maximal."""
    if range_ < 1:
        raise ValueError("range must be positive")
    rng = rng_seed if isinstance(rng_seed, random.Random) else random.Random(rng_seed)
    for _ in range(max_attempts):
        s = AlcovedSpec.from_vector(d, _random_vector(d, range_, rng))
        if is_tight_metric(s) and is_maximal(s):
            return s
    raise ExhaustedAttempts(f"no maximal alcoved polytope in {max_attempts} draws (d={d}, range={range_})")


def refine_to_maximal(s: AlcovedSpec, seed: int = 0, max_attempts: int = 2_000) -> AlcovedSpec:
    """A maximal ``b'`` whose normal fan refines that of ``b``.

    Tries ``b' = L*b + c`` for small random maximal ``c`` and growing ``L``;
    accepts the first candidate that is maximal and has ``b`` in its closed
    type cone (exactly the refinement condition).
    """
    if not is_tight_metric(s):
        raise NotMetric(f"{s} violates a triangle inequality")
    if is_maximal(s):
        return s
    rng = random.Random(seed)
    scale = s.d + 2
    base = s.vector()
    for attempt in range(max_attempts):
        c = random_alcoved(s.d, 3, rng).vector()
        cand = AlcovedSpec.from_vector(s.d, [scale * x + y for x, y in zip(base, c)])
        if is_tight_metric(cand) and is_maximal(cand):
            P = cand.polytope()
            if in_type_cone(P, enumerate_vertices(P), base):
                return cand
        if attempt % 20 == 19:
            scale *= 2
    raise ExhaustedAttempts(f"could not refine {s} to a maximal type")
