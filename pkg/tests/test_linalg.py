from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from wideext.linalg import (complete_basis, nullspace, rank, reduce_mod_line,
                            rref, solve, span_equal)

small = st.integers(-3, 3)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=max_rows)
        .map(lambda rows: (rows, n)))


@given(matrices())
def test_rank_matches_sympy(mn):
    rows, n = mn
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert rank(rows, n) == expected


@given(matrices())
def test_nullspace_is_kernel_of_right_dimension(mn):
    rows, n = mn
    basis = nullspace(rows, n)
    assert len(basis) == n - rank(rows, n)
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)
    if basis:
        assert rank(basis, n) == len(basis)


@given(matrices())
def test_rref_matches_sympy(mn):
    rows, n = mn
    if not rows:
        return
    red, piv = rref(rows, n)
    sred, spiv = sympy.Matrix(rows).rref()
    assert tuple(piv) == spiv
    for i, row in enumerate(red):
        assert [sympy.Rational(v.numerator, v.denominator) for v in row] == list(sred.row(i))


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_returns_solution_or_none(mn, rhs):
    rows, n = mn
    rhs = rhs[:len(rows)]
    if len(rhs) < len(rows):
        return
    v = solve(rows, rhs, n)
    consistent = rank(rows, n) == rank([r + [b] for r, b in zip(rows, rhs)], n + 1)
    assert (v is not None) == consistent
    if v is not None:
        assert all(sum(Fraction(a) * x for a, x in zip(r, v)) == b for r, b in zip(rows, rhs))


@given(st.lists(small, min_size=1, max_size=5).filter(any))
def test_complete_basis(v):
    b = complete_basis(v)
    assert b[0] == [Fraction(x) for x in v]
    assert len(b) == len(v) and rank(b, len(v)) == len(v)


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3).filter(any),
       st.integers(-3, 3))
def test_reduce_mod_line_is_canonical(vec, line, t):
    shifted = [a + t * b for a, b in zip(vec, line)]
    assert reduce_mod_line(vec, line) == reduce_mod_line(shifted, line)


def test_span_equal_ignores_generators():
    a = [[1, 0, 1], [0, 1, 1]]
    b = [[1, 1, 2], [1, -1, 0]]
    assert span_equal(a, b, 3)
    assert not span_equal(a, [[1, 0, 0]], 3)
