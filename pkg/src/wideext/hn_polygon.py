"""Lattice Harder-Narasimhan polygons.

A polygon is the graph of a concave piecewise-linear function on ``[0, r]``
with lattice vertices, starting at the origin and ending at ``(r, c1)``.
Polygons are kept in canonical form (no collinear interior vertices), so two
polygons are equal exactly when their vertex tuples are.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

from .errors import (BadEndpoints, EndpointMismatch, EnumerationCapExceeded,
                     NonMonotoneAbscissa, NotConcave, ParseError,
                     SlopeNotDecreasing)

DEFAULT_ENUM_CAP = 10 ** 6
Point = tuple[int, int]


def enumeration_cap() -> int:
    env = os.environ.get("WIDE_EXT_ENUM_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


@dataclass(frozen=True, order=True)
class HNPolygon:
    vertices: tuple[Point, ...]

    @property
    def rank(self) -> int:
        return self.vertices[-1][0]

    @property
    def degree(self) -> int:
        return self.vertices[-1][1]

    @property
    def endpoint(self) -> Point:
        return self.vertices[-1]

    def slopes(self) -> list[Fraction]:
        return [Fraction(y1 - y0, x1 - x0)
                for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])]

    def edges(self) -> list[tuple[int, int]]:
        """(Δx, Δy) for each edge."""
        return [(x1 - x0, y1 - y0)
                for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:])]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= self.rank:
            raise ValueError(f"abscissa {x} outside [0, {self.rank}]")
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x <= x1:
                return y0 + Fraction(y1 - y0, x1 - x0) * (x - x0)
        raise AssertionError("unreachable")

    def is_chord(self) -> bool:
        return len(self.vertices) == 2

    def to_text(self) -> str:
        return " ".join(f"{x}:{y}" for x, y in self.vertices)

    def __str__(self) -> str:
        return self.to_text()


def parse_points(text: str) -> list[Point]:
    pts = []
    for tok in text.split():
        try:
            x, y = tok.split(":")
            pts.append((int(x), int(y)))
        except ValueError as exc:
            raise ParseError(f"bad polygon vertex {tok!r}, expected x:y") from exc
    return pts


def validate(points: Sequence[Point]) -> HNPolygon:
    pts = [(int(x), int(y)) for x, y in points]
    if len(pts) < 2 or pts[0] != (0, 0):
        raise BadEndpoints("polygon must start at (0,0) and have an endpoint with r >= 1")
    for (x0, _), (x1, _) in zip(pts, pts[1:]):
        if x1 <= x0:
            raise NonMonotoneAbscissa(f"abscissas not strictly increasing at {x0} -> {x1}")
    slopes = [Fraction(y1 - y0, x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]
    for i, (s, t) in enumerate(zip(slopes, slopes[1:])):
        if t > s:
            raise NotConcave(f"slope increases at vertex {pts[i + 1]}: {s} then {t}")
    keep = [pts[0]]
    for i in range(1, len(pts) - 1):
        if slopes[i - 1] != slopes[i]:
            keep.append(pts[i])
    keep.append(pts[-1])
    return HNPolygon(tuple(keep))


def chord(r: int, c1: int) -> HNPolygon:
    return validate([(0, 0), (r, c1)])


def _check_endpoints(p: HNPolygon, q: HNPolygon):
    if p.endpoint != q.endpoint:
        raise EndpointMismatch(f"endpoints differ: {p.endpoint} vs {q.endpoint}")


def leq(p: HNPolygon, q: HNPolygon) -> bool:
    """Pointwise p <= q; checking the union of breakpoints suffices."""
    _check_endpoints(p, q)
    xs = sorted({x for x, _ in p.vertices} | {x for x, _ in q.vertices})
    return all(p(x) <= q(x) for x in xs)


def strictly_below(p: HNPolygon, q: HNPolygon) -> bool:
    return p != q and leq(p, q)


def specialization_admissible(generic: HNPolygon, special: HNPolygon) -> bool:
    """A family with generic polygon ``generic`` may specialize to ``special``."""
    return leq(generic, special)


def energy(p: HNPolygon) -> Fraction:
    """∫ P'(x)^2 dx = Σ Δy^2 / Δx."""
    return sum((Fraction(dy * dy, dx) for dx, dy in p.edges()), Fraction(0))


@dataclass(frozen=True)
class FiltrationStep:
    rank: int
    degree: int
    discriminant: Fraction = Fraction(0)

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("filtration step rank must be positive")
        object.__setattr__(self, "discriminant", Fraction(self.discriminant))
        if self.discriminant < 0:
            raise ValueError("Bogomolov: discriminant of a semistable factor is >= 0")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)

    @property
    def c2(self) -> Fraction:
        # β = rΔ + (1/2 - 1/2r) α^2
        r, a = self.rank, self.degree
        return r * self.discriminant + (Fraction(1, 2) - Fraction(1, 2 * r)) * a * a


def from_filtration(steps: Sequence[FiltrationStep]) -> HNPolygon:
    if not steps:
        raise BadEndpoints("empty filtration")
    for s, t in zip(steps, steps[1:]):
        if t.slope >= s.slope:
            raise SlopeNotDecreasing(f"slopes {s.slope} then {t.slope}")
    pts = [(0, 0)]
    for s in steps:
        x, y = pts[-1]
        pts.append((x + s.rank, y + s.degree))
    return validate(pts)


def enumerate_below(ceiling: HNPolygon, strict: bool = False,
                    cap: int | None = None) -> list[HNPolygon]:
    """All canonical concave lattice polygons lying below ``ceiling``.

    Depth-first over the next vertex. A candidate vertex must lie between the
    chord and the ceiling, keep the slope strictly decreasing, and leave room
    to reach the endpoint with a still smaller slope. Segments between two
    points under a concave ceiling stay under it, so only vertices are tested.
    """
    cap = enumeration_cap() if cap is None else cap
    r, c1 = ceiling.endpoint
    lo = chord(r, c1)
    out: list[HNPolygon] = []

    def extend(path: list[Point], prev_slope: Fraction | None):
        x, y = path[-1]
        # close with the final edge
        last = Fraction(c1 - y, r - x)
        if prev_slope is None or last < prev_slope:
            out.append(HNPolygon(tuple(path + [(r, c1)])))
            if len(out) > cap:
                raise EnumerationCapExceeded(f"more than {cap} polygons below {ceiling}")
        for nx in range(x + 1, r):
            ymax = floor(ceiling(nx))
            ymin = ceil(lo(nx))
            for ny in range(ymax, ymin - 1, -1):
                s = Fraction(ny - y, nx - x)
                if prev_slope is not None and s >= prev_slope:
                    continue
                if Fraction(c1 - ny, r - nx) >= s:
                    # endpoint unreachable with smaller slopes; lowering ny
                    # only makes this worse
                    break
                extend(path + [(nx, ny)], s)

    extend([(0, 0)], None)
    if strict:
        out = [p for p in out if p != ceiling]
    return sorted(out)


def all_concave_polygons(r: int, c1: int, ymin: int, ymax: int) -> list[HNPolygon]:
    """Every canonical concave lattice polygon to ``(r, c1)`` with vertex heights in range.

    Brute force over vertex subsets; used to generate ceilings for exhaustive
    checks and as an independent enumerator in tests.
    """
    from itertools import combinations, product
    res = set()
    interior = range(1, r)
    for k in range(0, r):
        for xs in combinations(interior, k):
            for ys in product(range(ymin, ymax + 1), repeat=k):
                pts = [(0, 0)] + list(zip(xs, ys)) + [(r, c1)]
                slopes = [Fraction(b[1] - a[1], b[0] - a[0]) for a, b in zip(pts, pts[1:])]
                if all(t < s for s, t in zip(slopes, slopes[1:])):
                    res.add(HNPolygon(tuple(pts)))
    return sorted(res)


def polygons_from_text(lines: Iterable[str]) -> list[HNPolygon]:
    return [validate(parse_points(line)) for line in lines if line.strip()]
