"""Small exact linear algebra over ``Fraction`` for d <= ~6 matrices."""

from fractions import Fraction
from typing import List, Optional, Sequence


def det(M: Sequence[Sequence]) -> Fraction:
    """Bareiss fraction-free determinant (exact for int or Fraction input)."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, int) for row in M for x in row):
        return Fraction(int_det(M))
    a = [[Fraction(x) for x in row] for row in M]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss determinant kept in integers (exact division at every step)."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_inverse(M: Sequence[Sequence[int]]) -> Optional[List[List]]:
    """Inverse of an integer matrix via the adjugate.

    Entries are ``int`` when ``det = +-1`` and ``Fraction`` otherwise;
    ``None`` when singular.
    """
    n = len(M)
    D = int_det(M)
    if D == 0:
        return None
    if n == 1:
        adj = [[1]]
    else:
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
                adj[j][i] = (-1) ** (i + j) * int_det(minor)
    if D in (1, -1):
        return [[D * x for x in row] for row in adj]
    return [[Fraction(x, D) for x in row] for row in adj]


def inverse(M: Sequence[Sequence]) -> Optional[List[List[Fraction]]]:
    """Gauss-Jordan inverse; ``None`` when singular."""
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve(M: Sequence[Sequence], rhs: Sequence) -> List[Fraction]:
    """Solve a square nonsingular system by fraction-free elimination.

    Integer input stays integral until the final back-substitution divisions.
    """
    n = len(M)
    a = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[k], a[piv] = a[piv], a[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else Fraction(num) / prev
            a[i][k] = 0
        prev = a[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(a[i][n]) - sum(Fraction(a[i][j]) * x[j] for j in range(i + 1, n))
        x[i] = s / a[i][i]
    return x


def matvec(M: Sequence[Sequence], v: Sequence) -> List:
    return [sum(x * y for x, y in zip(row, v)) for row in M]


def rank(rows: Sequence[Sequence]) -> int:
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    m = len(a[0])
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][col] != 0:
                f = a[i][col] / a[r][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r
