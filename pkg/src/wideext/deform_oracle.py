"""Energy optimisation behind the rigidity of wide extensions for large twists.

For an extension ``0 -> G*(d) -> E -> F -> 0`` of semistable sheaves of ranks
``r0``, ``r1`` and degrees ``a0``, ``a1`` the HN polygon of ``E`` is the
two-edge polygon O, M = (r0, a0 + r0 d), N = (r, c1). Any deformation with a
different HN polygon has a polygon P strictly below it, and its energy
∫P'^2 is bounded below by ``r0 d^2 + 2 a0 d + const``. This module computes
the largest energy ``m`` available below the ceiling and the gap
``r0 d^2 + 2 a0 d - m``, which grows without bound in ``d``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Sequence

from .chern_calculus import ChernData, P2, twist, whitney_sum
from .errors import EmptyCompetitorSet, InconsistentTotals, NotConcave, OutOfRegime
from .hn_polygon import (FiltrationStep, HNPolygon, energy, enumerate_below,
                         validate)


@dataclass(frozen=True)
class WideExtParams:
    d: int
    r0: int
    r1: int
    a0: int
    a1: int
    b0: int = 0
    b1: int = 0

    def __post_init__(self):
        if self.r0 < 1 or self.r1 < 1:
            raise ValueError("r0 and r1 must be positive")

    @property
    def r(self) -> int:
        return self.r0 + self.r1

    @property
    def c1(self) -> int:
        return self.a0 + self.a1 + self.r0 * self.d

    def with_d(self, d: int) -> "WideExtParams":
        return WideExtParams(d, self.r0, self.r1, self.a0, self.a1, self.b0, self.b1)


@dataclass(frozen=True)
class GapReport:
    d: int
    m: Fraction
    gap: Fraction
    argmax: tuple[HNPolygon, ...] = field(default_factory=tuple)
    ceiling_energy: Fraction = Fraction(0)
    competitors: int = 0


def first_valid_d(r0: int, r1: int, a0: int, a1: int) -> int:
    """Smallest d with (a0 + r0 d)/r0 > a1/r1."""
    return floor(Fraction(a1, r1) - Fraction(a0, r0)) + 1


def build_P0(p: WideExtParams) -> HNPolygon:
    top = p.a0 + p.r0 * p.d
    if Fraction(top, p.r0) <= Fraction(p.a1, p.r1):
        raise NotConcave(f"d={p.d} too small: slope {Fraction(top, p.r0)} "
                         f"does not exceed {Fraction(p.a1, p.r1)}")
    return validate([(0, 0), (p.r0, top), (p.r, p.c1)])


def m_sup(p: WideExtParams, cap: int | None = None) -> GapReport:
    ceiling = build_P0(p)
    competitors = enumerate_below(ceiling, strict=True, cap=cap)
    if not competitors:
        raise EmptyCompetitorSet(f"no polygon strictly below {ceiling}")
    energies = [energy(q) for q in competitors]
    m = max(energies)
    argmax = tuple(q for q, e in zip(competitors, energies) if e == m)
    gap = p.r0 * p.d ** 2 + 2 * p.a0 * p.d - m
    return GapReport(p.d, m, gap, argmax, energy(ceiling), len(competitors))


def rank2_in_regime(d: int, a0: int, a1: int) -> bool:
    """Is the vertex (1, a0 + d - 1) on or above the chord (and so a competitor)?"""
    return d >= a1 - a0 + 2


def closed_form_m_rank2(d: int, a0: int, a1: int) -> Fraction:
    if not rank2_in_regime(d, a0, a1):
        raise OutOfRegime(f"closed form needs d >= {a1 - a0 + 2}, got d={d}")
    return Fraction((d + a0 - 1) ** 2 + (a1 + 1) ** 2)


def closed_form_gap_rank2(d: int, a0: int, a1: int) -> Fraction:
    if not rank2_in_regime(d, a0, a1):
        raise OutOfRegime(f"closed form needs d >= {a1 - a0 + 2}, got d={d}")
    return Fraction(2 * d - (a0 - 1) ** 2 - (a1 + 1) ** 2)


def gap_series(family: WideExtParams, d_min: int, d_max: int,
               cap: int | None = None) -> list[GapReport]:
    """``m_sup`` for every d in ``[d_min, d_max]``, in increasing d."""
    return [m_sup(family.with_d(d), cap=cap) for d in range(d_min, d_max + 1)]


def positivity_threshold(reports: Sequence[GapReport]) -> int | None:
    """First d from which every reported gap is positive, or None."""
    for i, rep in enumerate(reports):
        if all(r.gap > 0 for r in reports[i:]):
            return rep.d
    return None


def extension_chern(p: WideExtParams) -> ChernData:
    r0, d, a0, a1 = p.r0, p.d, p.a0, p.a1
    c2 = (Fraction(r0 * (r0 - 1), 2) * d * d + ((a0 + a1) * r0 - a0) * d
          + a0 * a1 + p.b0 + p.b1)
    return ChernData(p.r, p.c1, c2)


def extension_chern_whitney(p: WideExtParams) -> ChernData:
    """Same data, computed as c(G*(d)) · c(F)."""
    sub = twist(ChernData(p.r0, p.a0, p.b0), p.d, P2)
    return whitney_sum(sub, ChernData(p.r1, p.a1, p.b1), P2)


def filtration_c2(steps: Sequence[FiltrationStep]) -> Fraction:
    total = Fraction(0)
    for i, s in enumerate(steps):
        total += s.c2
        for t in steps[i + 1:]:
            total += s.degree * t.degree
    return total


def energy_identity_check(steps: Sequence[FiltrationStep],
                          p: WideExtParams) -> tuple[Fraction, Fraction]:
    """Both sides of Σ α_i²/r_i = r0 d² + 2 a0 d + 2 Σ r_i Δ_i + a0² + a1² - 2 b0 - 2 b1."""
    chern = extension_chern(p)
    if sum(s.rank for s in steps) != p.r:
        raise InconsistentTotals(f"ranks sum to {sum(s.rank for s in steps)}, expected {p.r}")
    if sum(s.degree for s in steps) != p.c1:
        raise InconsistentTotals(f"degrees sum to {sum(s.degree for s in steps)}, expected {p.c1}")
    if filtration_c2(steps) != chern.c2:
        raise InconsistentTotals(f"factors give c2 = {filtration_c2(steps)}, expected {chern.c2}")
    lhs = sum((Fraction(s.degree ** 2, s.rank) for s in steps), Fraction(0))
    rhs = (p.r0 * p.d ** 2 + 2 * p.a0 * p.d
           + 2 * sum((s.rank * s.discriminant for s in steps), Fraction(0))
           + p.a0 ** 2 + p.a1 ** 2 - 2 * p.b0 - 2 * p.b1)
    return lhs, rhs


def extension_filtration(p: WideExtParams) -> list[FiltrationStep]:
    """The two-step HN filtration G*(d) ⊂ E with the discriminants of b0, b1."""
    def disc(r, a, b):
        return (b - Fraction(r - 1, 2 * r) * a * a) / r
    return [FiltrationStep(p.r0, p.a0 + p.r0 * p.d, disc(p.r0, p.a0, p.b0)),
            FiltrationStep(p.r1, p.a1, disc(p.r1, p.a1, p.b1))]
