"""Small exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of rows.
Only what the root-system code needs: inner products, Gauss-Jordan solves,
inverse and rank.
"""
from __future__ import annotations

from fractions import Fraction as Q
from math import lcm
from typing import Iterable, Sequence, Tuple

from .errors import DimensionMismatch

Vector = Tuple[Q, ...]
Matrix = Tuple[Vector, ...]


def vec(entries: Iterable) -> Vector:
    return tuple(Q(x) for x in entries)


def inner(u: Sequence, v: Sequence) -> Q:
    """Exact Euclidean inner product."""
    if len(u) != len(v):
        raise DimensionMismatch(f"inner: lengths {len(u)} and {len(v)} differ")
    return sum((Q(a) * Q(b) for a, b in zip(u, v)), Q(0))


def add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"add: lengths {len(u)} and {len(v)} differ")
    return tuple(Q(a) + Q(b) for a, b in zip(u, v))


def scale(k, u: Sequence) -> Vector:
    k = Q(k)
    return tuple(k * Q(a) for a in u)


def combination(coeffs: Sequence, vectors: Sequence[Sequence]) -> Vector:
    """Return sum_j coeffs[j] * vectors[j]."""
    if len(coeffs) != len(vectors):
        raise DimensionMismatch(
            f"combination: {len(coeffs)} coefficients for {len(vectors)} vectors")
    if not vectors:
        raise DimensionMismatch("combination of no vectors")
    dim = len(vectors[0])
    out = [Q(0)] * dim
    for c, v in zip(coeffs, vectors):
        if len(v) != dim:
            raise DimensionMismatch("combination: ragged vectors")
        c = Q(c)
        if c:
            for k in range(dim):
                out[k] += c * v[k]
    return tuple(out)


def denominator_lcm(vectors: Iterable[Sequence[Q]]) -> int:
    d = 1
    for v in vectors:
        for x in v:
            d = lcm(d, Q(x).denominator)
    return d


def _echelon(rows: list[list[Q]]) -> tuple[list[list[Q]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    """Rank over the rationals."""
    rows = [[Q(x) for x in row] for row in matrix]
    if not rows:
        return 0
    return len(_echelon(rows)[1])


def inverse(matrix: Sequence[Sequence]) -> Matrix:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = [[Q(x) for x in row] + [Q(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    aug, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in aug)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("matmul: inner dimensions differ")
    cols = list(zip(*b))
    return tuple(tuple(inner(row, col) for col in cols) for row in a)


def matvec(a: Sequence[Sequence], x: Sequence) -> Vector:
    return tuple(inner(row, x) for row in a)


def gram(vectors: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(inner(u, v) for v in vectors) for u in vectors)


def as_pairs(v: Sequence[Q]) -> list[list[int]]:
    """Serialize a rational vector as [[num, den], ...]."""
    return [[Q(x).numerator, Q(x).denominator] for x in v]
