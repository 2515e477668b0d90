import warnings

import pytest
from hypothesis import given, strategies as st

from wideext.errors import AllZero, ParseError
from wideext.git_stability import (NATURAL, SEMISTABLE, STABLE, SYMMETRIC, UNSTABLE,
                                   PointPattern, QuotientDims, all_patterns, classify,
                                   hm_oracle, quotient_dim, weights,
                                   zero_in_relative_interior)


def test_parse_and_examples():
    assert classify(PointPattern.parse("1,1;1,1")) == STABLE
    assert classify(PointPattern.parse("1,1;0,0")) == SEMISTABLE
    assert classify(PointPattern.parse("1,0;1,1")) == UNSTABLE
    with pytest.raises(AllZero):
        PointPattern.parse("0,0;0,0")
    with pytest.raises(ParseError):
        PointPattern.parse("1,2")


def test_pattern_counts():
    assert [len(all_patterns(k)) for k in (1, 2, 3, 4)] == [3, 15, 63, 255]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_stable_locus_agrees_under_symmetric_linearization(k):
    for p in all_patterns(k):
        assert (classify(p) == STABLE) == (hm_oracle(p, SYMMETRIC) == STABLE)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_closed_orbits_are_the_non_unstable_patterns(k):
    for p in all_patterns(k):
        assert zero_in_relative_interior(p, SYMMETRIC) == (classify(p) != UNSTABLE)


def test_k1_full_agreement_both_linearizations():
    for p in all_patterns(1):
        assert classify(p) == hm_oracle(p, SYMMETRIC)


def test_known_disagreement():
    # one complete pair plus a lone v: the weight polytope still contains 0
    p = PointPattern.parse("1,1;1,0")
    assert classify(p) == UNSTABLE and hm_oracle(p) == SEMISTABLE


def test_symmetric_weights_are_opposite():
    p = PointPattern.parse("1,1;1,1;1,1")
    ws = weights(p, SYMMETRIC)
    for v, w in zip(ws[::2], ws[1::2]):
        assert [a + b for a, b in zip(v, w)] == [0, 0, 0]
    assert weights(p, NATURAL) != ws
    with pytest.raises(ValueError):
        weights(p, "other")


@given(st.integers(1, 4).flatmap(lambda k: st.tuples(
    st.lists(st.booleans(), min_size=k, max_size=k),
    st.lists(st.booleans(), min_size=k, max_size=k),
    st.permutations(range(k)))))
def test_invariant_under_permuting_pairs(data):
    v, w, perm = data
    if not any(v) and not any(w):
        return
    p = PointPattern(tuple(v), tuple(w))
    q = p.permuted(perm)
    assert classify(p) == classify(q)
    assert hm_oracle(p) == hm_oracle(q)


def test_quotient_dim():
    assert quotient_dim(QuotientDims(4, (1,), (2,))) == 5
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert quotient_dim(QuotientDims(0, (1, 1, 1), (1, 1, 1))) == 2
        assert quotient_dim(QuotientDims(0, (1,) * 5, (1,) * 5)) == 4
        assert not caught
