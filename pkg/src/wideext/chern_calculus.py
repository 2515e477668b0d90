"""Chern data, logarithmic invariants and Riemann-Roch on Pic = Z varieties.

Two kinds of ambient variety are supported:

* a surface with Picard group generated by an ample class ``h``, described
  only by the numbers ``h^2``, ``K.h`` and ``chi(O)``;
* projective 3-space, with Todd class ``1 + 2h + 11/6 h^2 + h^3``.

Chern classes are stored as numbers. On a surface ``c1`` is the coefficient
of ``h`` and ``c2`` is a degree. On P3, ``c1`` and ``c2`` are coefficients of
``h`` and ``h^2``, and ``c3`` is a degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ParseError, ZeroRank
from .rational import fmt, parse_rational

SURFACE = "surface"
P3 = "p3"

# Todd class of P3, coefficients of h^0..h^3
TODD_P3 = (Fraction(1), Fraction(2), Fraction(11, 6), Fraction(1))


@dataclass(frozen=True)
class GeometryData:
    kind: str
    h2: int = 1
    Kh: int = -3
    chiO: int = 1

    def __post_init__(self):
        if self.kind not in (SURFACE, P3):
            raise ValueError(f"unknown geometry kind {self.kind!r}")
        if self.kind == SURFACE and self.h2 <= 0:
            raise ValueError("h2 must be positive")

    @classmethod
    def surface(cls, h2: int, Kh: int, chiO: int) -> "GeometryData":
        return cls(SURFACE, h2, Kh, chiO)

    @classmethod
    def p3(cls) -> "GeometryData":
        return cls(P3, 1, -4, 1)

    @property
    def is_threefold(self) -> bool:
        return self.kind == P3


P2 = GeometryData.surface(1, -3, 1)
PROJECTIVE_3 = GeometryData.p3()


@dataclass(frozen=True)
class ChernData:
    rank: int
    c1: Fraction
    c2: Fraction = Fraction(0)
    c3: Optional[Fraction] = None

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "c1", Fraction(self.c1))
        object.__setattr__(self, "c2", Fraction(self.c2))
        if self.c3 is not None:
            object.__setattr__(self, "c3", Fraction(self.c3))

    @property
    def c3_or_zero(self) -> Fraction:
        return self.c3 if self.c3 is not None else Fraction(0)

    def to_text(self) -> str:
        parts = [str(self.rank), fmt(self.c1), fmt(self.c2)]
        if self.c3 is not None:
            parts.append(fmt(self.c3))
        return " ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "ChernData":
        fields = text.split()
        if len(fields) not in (3, 4):
            raise ParseError(f"expected 'r c1 c2 [c3]', got {text!r}")
        try:
            r = int(fields[0])
        except ValueError as exc:
            raise ParseError(f"rank must be an integer: {fields[0]!r}") from exc
        if r < 0:
            raise ParseError("rank must be nonnegative")
        vals = [parse_rational(f) for f in fields[1:]]
        return cls(r, *vals)


@dataclass(frozen=True)
class LogInvariants:
    mu: Fraction
    delta: Fraction
    delta3: Optional[Fraction] = None


def _require_rank(c: ChernData):
    if c.rank == 0:
        raise ZeroRank("slope and discriminant need positive rank")


def log_invariants(c: ChernData, g: GeometryData = P2) -> LogInvariants:
    _require_rank(c)
    r = c.rank
    mu = c.c1 / r
    delta = (c.c2 - Fraction(r - 1, 2 * r) * c.c1 ** 2 * g.h2) / r
    delta3 = None
    if g.is_threefold:
        c1, c2, c3 = c.c1, c.c2, c.c3_or_zero
        delta3 = (c3 / 2
                  + c1 * c2 * (Fraction(1, r) - Fraction(1, 2))
                  + c1 ** 3 * (Fraction(1, 3 * r * r) - Fraction(1, 2 * r) + Fraction(1, 6))) / r
    return LogInvariants(mu, delta, delta3)


def from_log_invariants(r: int, inv: LogInvariants, g: GeometryData = P2) -> ChernData:
    """Inverse of :func:`log_invariants`."""
    if r <= 0:
        raise ZeroRank("rank must be positive")
    c1 = r * inv.mu
    c2 = r * inv.delta + Fraction(r - 1, 2 * r) * c1 ** 2 * g.h2
    if not g.is_threefold:
        return ChernData(r, c1, c2)
    d3 = inv.delta3 if inv.delta3 is not None else Fraction(0)
    c3 = 2 * (r * d3
              - c1 * c2 * (Fraction(1, r) - Fraction(1, 2))
              - c1 ** 3 * (Fraction(1, 3 * r * r) - Fraction(1, 2 * r) + Fraction(1, 6)))
    return ChernData(r, c1, c2, c3)


def twist(c: ChernData, n: int, g: GeometryData = P2) -> ChernData:
    """Chern classes of ``c ⊗ O(n)``."""
    _require_rank(c)
    r, c1, c2 = c.rank, c.c1, c.c2
    if g.is_threefold:
        c3 = c.c3_or_zero
        return ChernData(
            r,
            c1 + r * n,
            c2 + (r - 1) * n * c1 + Fraction(r * (r - 1), 2) * n ** 2,
            c3 + (r - 2) * n * c2 + Fraction((r - 1) * (r - 2), 2) * n ** 2 * c1
            + Fraction(r * (r - 1) * (r - 2), 6) * n ** 3,
        )
    return ChernData(r, c1 + r * n,
                     c2 + ((r - 1) * n * c1 + Fraction(r * (r - 1), 2) * n ** 2) * g.h2,
                     c.c3)


def dual(c: ChernData) -> ChernData:
    _require_rank(c)
    return ChernData(c.rank, -c.c1, c.c2, None if c.c3 is None else -c.c3)


def whitney_sum(a: ChernData, b: ChernData, g: GeometryData = P2) -> ChernData:
    """Chern classes of a direct sum (product of total Chern classes)."""
    if g.is_threefold:
        a3, b3 = a.c3_or_zero, b.c3_or_zero
        return ChernData(a.rank + b.rank, a.c1 + b.c1,
                         a.c2 + b.c2 + a.c1 * b.c1,
                         a3 + b3 + a.c1 * b.c2 + a.c2 * b.c1)
    return ChernData(a.rank + b.rank, a.c1 + b.c1, a.c2 + b.c2 + a.c1 * b.c1 * g.h2)


def chern_character(c: ChernData, g: GeometryData = P2) -> tuple[Fraction, ...]:
    """``(ch0, ch1, ch2[, ch3])``; ``ch1`` is a coefficient of ``h``, the top one a degree."""
    c1, c2 = c.c1, c.c2
    if g.is_threefold:
        c3 = c.c3_or_zero
        return (Fraction(c.rank), c1, c1 ** 2 / 2 - c2, (c1 ** 3 - 3 * c1 * c2 + 3 * c3) / 6)
    return (Fraction(c.rank), c1, c1 ** 2 * g.h2 / 2 - c2)


def _integrate(ch: tuple[Fraction, ...], g: GeometryData) -> Fraction:
    if g.is_threefold:
        return ch[0] * TODD_P3[3] + ch[1] * TODD_P3[2] + ch[2] * TODD_P3[1] + ch[3] * TODD_P3[0]
    # td = 1 - K/2 + chi(O)[pt]
    return ch[0] * g.chiO - ch[1] * Fraction(g.Kh, 2) + ch[2]


def euler_char(c: ChernData, g: GeometryData = P2) -> Fraction:
    """χ(E) by Hirzebruch-Riemann-Roch. Rank 0 data is allowed here."""
    return _integrate(chern_character(c, g), g)


def euler_pairing_direct(a: ChernData, b: ChernData, g: GeometryData = P2) -> Fraction:
    """χ(E, F) = ∫ ch(E)^∨ ch(F) td, expanded degree by degree."""
    x, y = chern_character(a, g), chern_character(b, g)
    xd = tuple(v if i % 2 == 0 else -v for i, v in enumerate(x))
    n = len(x)
    prod = []
    for k in range(n):
        s = sum((xd[i] * y[k - i] for i in range(k + 1)), Fraction(0))
        prod.append(s)
    if not g.is_threefold:
        # the degree-2 product of two h-coefficients picks up h^2
        prod[2] = xd[0] * y[2] + xd[2] * y[0] + xd[1] * y[1] * g.h2
    return _integrate(tuple(prod), g)


def p_polynomial(g: GeometryData, mu: Fraction, delta: Fraction,
                 delta3: Fraction = Fraction(0)) -> Fraction:
    """The polynomial with χ(E) = rank · P(μ, Δ[, Δ3])."""
    if g.is_threefold:
        return (1 + Fraction(11, 6) * mu + mu ** 2 - 2 * delta + delta3
                - mu * delta + mu ** 3 / 6)
    return g.chiO + Fraction(g.h2, 2) * mu ** 2 - Fraction(g.Kh, 2) * mu - delta


def euler_pairing(a: ChernData, b: ChernData, g: GeometryData = P2) -> Fraction:
    """χ(E, F) through the log invariants of E^∨ ⊗ F.

    Odd invariants of the dual change sign, even ones do not, so the
    discriminants add while slopes (and Δ3) subtract.
    """
    _require_rank(a)
    _require_rank(b)
    ia, ib = log_invariants(a, g), log_invariants(b, g)
    d3 = Fraction(0)
    if g.is_threefold:
        d3 = ib.delta3 - ia.delta3
    return a.rank * b.rank * p_polynomial(g, ib.mu - ia.mu, ib.delta + ia.delta, d3)
