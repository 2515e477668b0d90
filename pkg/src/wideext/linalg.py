"""Exact linear algebra over Q on lists of Fractions.

Matrices are lists of rows. Everything here is deterministic: pivots are
always the leftmost nonzero entry, and nullspace bases are the standard
free-variable basis of the reduced row echelon form.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    ``ncols`` is needed when ``rows`` is empty.
    """
    m = to_matrix(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis (as a list of vectors) of {v : rows·v = 0}."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def span_equal(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int) -> bool:
    """Do the row spaces of ``a`` and ``b`` coincide?"""
    ra = rank(a, ncols)
    return ra == rank(b, ncols) == rank(list(a) + list(b), ncols)


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> list[Fraction] | None:
    """One solution of rows·v = rhs (free variables set to 0), or None."""
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v


def complete_basis(v: Sequence) -> Matrix:
    """Extend the nonzero vector ``v`` to a basis of Q^n, ``v`` first.

    The remaining vectors are standard unit vectors, chosen left to right
    whenever they are independent of what has been picked so far.
    """
    n = len(v)
    basis = [[Fraction(x) for x in v]]
    for i in range(n):
        if len(basis) == n:
            break
        e = [Fraction(int(j == i)) for j in range(n)]
        if rank(basis + [e], n) == len(basis) + 1:
            basis.append(e)
    return basis


def reduce_mod_line(vec: Sequence, line: Sequence) -> list[Fraction]:
    """Canonical representative of ``vec`` in Q^n / Q·line.

    Kills the coordinate at the leftmost nonzero entry of ``line``.
    """
    vec = [Fraction(x) for x in vec]
    k = next((i for i, x in enumerate(line) if x != 0), None)
    if k is None:
        return vec
    f = vec[k] / Fraction(line[k])
    return [a - f * b for a, b in zip(vec, line)]


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))
