"""Small exact linear algebra helpers over Q and F_p.

Matrices here are tiny (boundary maps of complexes on <= 8 vertices, facet
systems in dimension <= 8), so plain Fraction elimination is both exact and
fast enough.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(vec: Iterable) -> Vector:
    """Scale a rational vector to a primitive integer vector (gcd 1).

    The positive scaling factor is unique, so the output is canonical for
    each ray direction.
    """
    fracs = [Fraction(x) for x in vec]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rank(rows: Sequence[Sequence], char: int = 0) -> int:
    """Rank of a matrix given as rows, over Q (char 0) or F_char."""
    if char == 0:
        mat = [[Fraction(x) for x in row] for row in rows]
    else:
        mat = [[int(x) % char for x in row] for row in rows]
    m = len(mat)
    n = len(mat[0]) if m else 0
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        if char == 0:
            inv = 1 / mat[r][col]
        else:
            inv = pow(mat[r][col], char - 2, char)
        mat[r] = [x * inv % char if char else x * inv for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [
                    (a - f * b) % char if char else a - f * b
                    for a, b in zip(mat[i], mat[r])
                ]
        r += 1
        if r == m:
            break
    return r


def det(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    mat = [[Fraction(x) for x in row] for row in rows]
    n = len(mat)
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            result = -result
        result *= mat[col][col]
        inv = 1 / mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col]:
                f = mat[i][col] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
    return result


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve A x = b exactly; returns None if the system is inconsistent.

    For underdetermined systems, free variables are set to 0.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    mat = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(m):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if mat[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = mat[i][n]
    return x


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(p[i]) - Fraction(base[i]) for i in range(len(base))] for p in points[1:]]
    if not diffs:
        return 0
    return rank(diffs)
