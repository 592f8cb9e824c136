"""Exact linear algebra over the rationals (plain Gaussian elimination)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _copy(matrix) -> list:
    return [[Fraction(v) for v in row] for row in matrix]


def rref(matrix) -> tuple[list, list]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = _copy(matrix)
    if not m:
        return [], []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix, ncols: int | None = None) -> list:
    """Basis of the right kernel, one vector per free column, in column order."""
    if not matrix:
        return [] if not ncols else [
            [Fraction(1 if i == j else 0) for i in range(ncols)] for j in range(ncols)
        ]
    cols = len(matrix[0])
    m, pivots = rref(matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis


def independent_subset(vectors: Sequence[Sequence[Fraction]]) -> list:
    """Indices of a maximal linearly independent subset, scanning in order."""
    kept: list[int] = []
    echelon: list[list[Fraction]] = []
    for idx, vec in enumerate(vectors):
        row = [Fraction(v) for v in vec]
        for e in echelon:
            lead = next((j for j, v in enumerate(e) if v != 0), None)
            if lead is not None and row[lead] != 0:
                f = row[lead] / e[lead]
                row = [a - f * b for a, b in zip(row, e)]
        if any(v != 0 for v in row):
            echelon.append(row)
            kept.append(idx)
    return kept


def clear_denominators(vec: Sequence[Fraction]) -> list:
    """Scale a rational vector to coprime integers (empty and zero vectors pass through)."""
    fracs = [Fraction(v) for v in vec]
    from math import gcd, lcm

    denom = 1
    for v in fracs:
        denom = lcm(denom, v.denominator)
    ints = [int(v * denom) for v in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints
