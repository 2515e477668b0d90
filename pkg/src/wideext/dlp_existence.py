"""Exceptional bundles on P2 and the existence function δ(μ).

An exceptional bundle F of rank r and slope μ_F owns the open interval
``]μ_F - x_F, μ_F + x_F[`` where ``x_F`` is the smaller root of
``X^2 - 3X + 1/r^2``. These intervals are pairwise disjoint and cover every
rational slope. On the interval of F,

    δ(μ) = P(-|μ - μ_F|) - (1 - 1/r^2)/2,   P(X) = X^2/2 + 3X/2 + 1,

and positive-dimensional moduli M(r, c1, c2) exist iff Δ >= δ(μ).

``x_F`` is irrational for every rank, so it is never materialised: membership
and disjointness are decided by sign tests on quadratic expressions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Iterable, Optional, Sequence

from .chern_calculus import ChernData, P2, log_invariants
from .errors import (DisjointnessViolation, NotExceptionalCandidate, ParseError,
                     SlopeOutOfWindow, ZeroRank)
from .rational import fmt


class _Uncovered:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNCOVERED"

    def __bool__(self):
        return False


UNCOVERED = _Uncovered()

DEFORMS_TO_STABLE = "DeformsToStable"
INCONCLUSIVE = "Inconclusive"

CATALOG_HEADER = "# exceptional catalog v1"


def P(x: Fraction) -> Fraction:
    return x * x / 2 + Fraction(3, 2) * x + 1


def exceptional_discriminant(rank: int) -> Fraction:
    return Fraction(1, 2) * (1 - Fraction(1, rank * rank))


@dataclass(frozen=True, order=True)
class ExceptionalBundle:
    slope: Fraction
    rank: int
    c1: int
    c2: Fraction

    @property
    def delta(self) -> Fraction:
        return exceptional_discriminant(self.rank)

    def chern(self) -> ChernData:
        return ChernData(self.rank, self.c1, self.c2)


def validate_exceptional(rank: int, c1: int) -> ExceptionalBundle:
    """Check the numerical candidacy of (rank, c1): χ(F,F) = 1 with integral c2.

    Exceptional bundles have coprime rank and degree, so non-reduced pairs
    are rejected as well.
    """
    if rank < 1:
        raise ZeroRank("rank must be positive")
    if gcd(rank, c1) != 1:
        raise NotExceptionalCandidate(f"rank {rank} and c1 {c1} are not coprime")
    delta = exceptional_discriminant(rank)
    c2 = rank * delta + Fraction(rank - 1, 2 * rank) * c1 * c1
    if c2.denominator != 1:
        raise NotExceptionalCandidate(f"c2 = {c2} is not an integer for rank {rank}, c1 {c1}")
    return ExceptionalBundle(Fraction(c1, rank), rank, c1, c2)


def interval_contains(e: ExceptionalBundle, mu) -> bool:
    """|mu - slope| < x_F, decided as x < 3/2 and x^2 - 3x + 1/r^2 > 0."""
    x = abs(Fraction(mu) - e.slope)
    return x < Fraction(3, 2) and x * x - 3 * x + Fraction(1, e.rank ** 2) > 0


def _sign_sqrt_sum_minus(A: Fraction, B: Fraction, K: Fraction) -> int:
    """Sign of sqrt(A) + sqrt(B) - K for A, B >= 0, exactly."""
    if K <= 0:
        return 1 if (A > 0 or B > 0 or K < 0) else 0
    # both sides nonnegative: compare A + B + 2 sqrt(AB) with K^2
    t = K * K - A - B
    if t < 0:
        return 1
    lhs, rhs = 4 * A * B, t * t
    return (lhs > rhs) - (lhs < rhs)


def _root_discriminant(rank: int) -> Fraction:
    # x_F = (3 - sqrt(9 - 4/r^2)) / 2
    return 9 - Fraction(4, rank * rank)


def gap_between(e: ExceptionalBundle, f: ExceptionalBundle) -> int:
    """Sign of (slope_f - x_f) - (slope_e + x_e) for slope_e < slope_f.

    Positive: a gap separates the intervals. Zero: they touch. Negative:
    they overlap.
    """
    if not e.slope < f.slope:
        raise ValueError("expects e.slope < f.slope")
    D = f.slope - e.slope
    # D - x_e - x_f = D - 3 + (sqrt(A) + sqrt(B)) / 2
    A, B = _root_discriminant(e.rank), _root_discriminant(f.rank)
    return _sign_sqrt_sum_minus(A, B, 2 * (3 - D))


def intervals_disjoint(e: ExceptionalBundle, f: ExceptionalBundle) -> bool:
    if e.slope == f.slope:
        return False
    lo, hi = (e, f) if e.slope < f.slope else (f, e)
    return gap_between(lo, hi) >= 0


def endpoints_touch(e: ExceptionalBundle, f: ExceptionalBundle) -> bool:
    lo, hi = (e, f) if e.slope < f.slope else (f, e)
    return gap_between(lo, hi) == 0


@dataclass(frozen=True)
class ExceptionalCatalog:
    entries: tuple[ExceptionalBundle, ...]
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))
        check_disjoint(self.entries)

    def find(self, mu) -> Optional[ExceptionalBundle]:
        mu = Fraction(mu)
        hits = [e for e in self.entries if interval_contains(e, mu)]
        if len(hits) > 1:
            raise DisjointnessViolation(f"slope {mu} lies in {len(hits)} intervals")
        return hits[0] if hits else None

    def gaps(self) -> list[tuple[ExceptionalBundle, ExceptionalBundle]]:
        """Consecutive pairs whose intervals are separated by a gap."""
        return [(e, f) for e, f in zip(self.entries, self.entries[1:]) if gap_between(e, f) > 0]

    def to_text(self) -> str:
        lines = [CATALOG_HEADER, f"# range {fmt(self.lo)} {fmt(self.hi)}"]
        lines += [f"{e.rank} {e.c1}" for e in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExceptionalCatalog":
        lines = text.splitlines()
        if not lines or lines[0].strip() != CATALOG_HEADER:
            raise ParseError(f"catalog must start with {CATALOG_HEADER!r}")
        entries = []
        lo = hi = None
        for line in lines[1:]:
            s = line.strip()
            if not s:
                continue
            if s.startswith("#"):
                parts = s[1:].split()
                if parts and parts[0] == "range" and len(parts) == 3:
                    lo, hi = Fraction(parts[1]), Fraction(parts[2])
                continue
            try:
                rank, c1 = (int(v) for v in s.split())
            except ValueError as exc:
                raise ParseError(f"bad catalog line {line!r}, expected 'rank c1'") from exc
            entries.append(validate_exceptional(rank, c1))
        if lo is None:
            slopes = [e.slope for e in entries] or [Fraction(0)]
            lo, hi = min(slopes), max(slopes)
        return cls(tuple(entries), lo, hi)


def check_disjoint(entries: Sequence[ExceptionalBundle]):
    es = sorted(entries)
    for e, f in zip(es, es[1:]):
        if not intervals_disjoint(e, f):
            raise DisjointnessViolation(
                f"intervals of slopes {e.slope} (rank {e.rank}) and {f.slope} (rank {f.rank}) overlap")


def line_bundle_catalog(lo, hi) -> ExceptionalCatalog:
    lo, hi = Fraction(lo), Fraction(hi)
    entries = tuple(validate_exceptional(1, n) for n in range(ceil(lo), floor(hi) + 1))
    return ExceptionalCatalog(entries, lo, hi)


def extend_catalog(cat: ExceptionalCatalog, slope_range=None,
                   rank_bound: int = 5) -> ExceptionalCatalog:
    """Fill gaps between consecutive intervals by brute-force search.

    Inside each gap every reduced slope c1/rank with rank <= rank_bound is
    tried; a candidate is kept when it passes :func:`validate_exceptional`
    and its interval is disjoint from both gap neighbours. Candidates found
    in the same gap must be disjoint from each other, otherwise the seed (or
    this search) is wrong and DisjointnessViolation is raised.
    """
    lo, hi = (cat.lo, cat.hi) if slope_range is None else map(Fraction, slope_range)
    entries = list(cat.entries)
    for left, right in cat.gaps():
        if right.slope < lo or left.slope > hi:
            continue
        found = []
        for rank in range(2, rank_bound + 1):
            start = floor(left.slope * rank) + 1
            stop = ceil(right.slope * rank) - 1
            for c1 in range(start, stop + 1):
                mu = Fraction(c1, rank)
                if not lo <= mu <= hi:
                    continue
                try:
                    cand = validate_exceptional(rank, c1)
                except NotExceptionalCandidate:
                    continue
                if intervals_disjoint(left, cand) and intervals_disjoint(cand, right):
                    found.append(cand)
        check_disjoint(found)
        entries.extend(found)
    return ExceptionalCatalog(tuple(entries), min(lo, cat.lo), max(hi, cat.hi))


def default_catalog(lo=-1, hi=1, rank_bound: int = 34) -> ExceptionalCatalog:
    """Line bundles on [lo, hi] with every gap filled up to ``rank_bound``."""
    return extend_catalog(line_bundle_catalog(lo, hi), rank_bound=rank_bound)


def delta_raw(e: ExceptionalBundle, mu) -> Fraction:
    """Conic branch of δ on the interval of ``e`` (no clamp)."""
    mu = Fraction(mu)
    if mu < e.slope:
        value = P(mu - e.slope)
    else:
        value = P(e.slope - mu)
    return value - e.delta


def delta_of_mu(cat: ExceptionalCatalog, mu):
    """δ(μ), or UNCOVERED if no catalog interval contains μ."""
    e = cat.find(mu)
    if e is None:
        return UNCOVERED
    return max(delta_raw(e, mu), Fraction(1, 2))


def exists_positive_dim_moduli(r: int, c1, c2, cat: ExceptionalCatalog):
    """True/False for Δ >= δ(μ), or UNCOVERED."""
    if r < 1:
        raise ZeroRank("rank must be positive")
    inv = log_invariants(ChernData(r, c1, c2), P2)
    threshold = delta_of_mu(cat, inv.mu)
    if threshold is UNCOVERED:
        return UNCOVERED
    return inv.delta >= threshold


def wide_ext_discriminant(exc: ExceptionalBundle, r: int, c1: int, c2, h0T: int,
                          cat: ExceptionalCatalog | None = None):
    """Discriminant of the wide extension built from ``exc`` and (r, c1, c2).

    Returns ``(delta, verdict)``; the verdict is DeformsToStable when the
    point (μ, Δ) of the extension lies on or above the graph of δ.
    """
    if h0T < 0:
        raise ValueError("h0(T) must be nonnegative")
    slope = Fraction(c1, r)
    if not (slope > exc.slope and interval_contains(exc, slope)):
        raise SlopeOutOfWindow(f"c1/r = {slope} not in the window right of slope {exc.slope}")
    R = exc.rank + r
    C1 = c1 + exc.c1
    C = (Fraction(c2) + exc.c2 + c1 * exc.c1 - Fraction(R - 1, 2 * R) * C1 * C1) / R
    delta = C + Fraction(h0T, R)
    if cat is None:
        cat = default_catalog(floor(Fraction(C1, R)) - 1, floor(Fraction(C1, R)) + 1)
    threshold = delta_of_mu(cat, Fraction(C1, R))
    if threshold is UNCOVERED:
        return delta, UNCOVERED
    return delta, DEFORMS_TO_STABLE if delta >= threshold else INCONCLUSIVE


def covered_samples(cat: ExceptionalCatalog, samples: Iterable[Fraction]) -> set[Fraction]:
    return {mu for mu in samples if cat.find(mu) is not None}


def rationals_with_denominator_at_most(lo, hi, qmax: int) -> list[Fraction]:
    lo, hi = Fraction(lo), Fraction(hi)
    out = set()
    for q in range(1, qmax + 1):
        for p in range(ceil(lo * q), floor(hi * q) + 1):
            out.add(Fraction(p, q))
    return sorted(out)
