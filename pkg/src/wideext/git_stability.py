"""Torus quotients of P(V_1 x ... x V_k x W_1 x ... x W_k).

The torus {(t, t_1, ..., t_k) : t t_1 ... t_k = 1} acts by t_i on V_i and by
t t_i^{-1} on W_i. Only which components vanish matters, so a point is
recorded as a zero/nonzero pattern.

Two classifiers are provided: the combinatorial rule (:func:`classify`) and a
Hilbert-Mumford weight-polytope computation (:func:`hm_oracle`) that decides
0 ∈ conv(weights) and 0 ∈ relint(conv(weights)) by exact vertex enumeration
of {λ >= 0 : Σ λ_j w_j = 0, Σ λ_j = 1}.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import AllZero, ParseError
from .linalg import rank, solve

STABLE = "stable"
SEMISTABLE = "semistable"  # semistable, not stable
UNSTABLE = "unstable"

NATURAL = "natural"
SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class PointPattern:
    v_nonzero: tuple[bool, ...]
    w_nonzero: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "v_nonzero", tuple(bool(b) for b in self.v_nonzero))
        object.__setattr__(self, "w_nonzero", tuple(bool(b) for b in self.w_nonzero))
        if len(self.v_nonzero) != len(self.w_nonzero) or not self.v_nonzero:
            raise ValueError("need k >= 1 pairs (v_i, w_i)")
        if not any(self.v_nonzero) and not any(self.w_nonzero):
            raise AllZero("the zero vector is not a point of projective space")

    @property
    def k(self) -> int:
        return len(self.v_nonzero)

    @classmethod
    def parse(cls, text: str) -> "PointPattern":
        vs, ws = [], []
        for pair in text.split(";"):
            try:
                v, w = (int(x) for x in pair.split(","))
            except ValueError as exc:
                raise ParseError(f"bad pattern entry {pair!r}, expected v,w") from exc
            if v not in (0, 1) or w not in (0, 1):
                raise ParseError(f"pattern entries must be 0 or 1, got {pair!r}")
            vs.append(v)
            ws.append(w)
        return cls(tuple(vs), tuple(ws))

    def permuted(self, perm: Sequence[int]) -> "PointPattern":
        return PointPattern(tuple(self.v_nonzero[i] for i in perm),
                            tuple(self.w_nonzero[i] for i in perm))


def all_patterns(k: int) -> list[PointPattern]:
    """The 4^k - 1 nonzero patterns."""
    out = []
    for bits in product((False, True), repeat=2 * k):
        if any(bits):
            out.append(PointPattern(bits[:k], bits[k:]))
    return out


def classify(p: PointPattern) -> str:
    if all(p.v_nonzero) and all(p.w_nonzero):
        return STABLE
    if all(v == w for v, w in zip(p.v_nonzero, p.w_nonzero)):
        return SEMISTABLE
    return UNSTABLE


def weights(p: PointPattern, linearization: str = SYMMETRIC) -> list[list[Fraction]]:
    """Weights of the nonzero coordinates in Z^{k+1}/Z(1,...,1) ≅ Z^k.

    The quotient is identified with Z^k by e_0 ↦ -(e_1 + ... + e_k).
    ``natural`` uses the characters e_i (on V_i) and e_0 - e_i (on W_i) of
    the linear action. ``symmetric`` twists the linearisation by -e_0/2
    (harmless after passing to O(2)), which makes the weight of W_i the
    negative of the weight of V_i.
    """
    k = p.k

    def vec(coeff0, i_coeff, i):
        v = [Fraction(-coeff0)] * k
        v[i] += i_coeff
        return v

    out = []
    shift = Fraction(1, 2) if linearization == SYMMETRIC else Fraction(0)
    if linearization not in (NATURAL, SYMMETRIC):
        raise ValueError(f"unknown linearization {linearization!r}")
    for i in range(k):
        if p.v_nonzero[i]:
            out.append(vec(-shift, 1, i))           # e_i - shift e_0
        if p.w_nonzero[i]:
            out.append(vec(1 - shift, -1, i))       # (1 - shift) e_0 - e_i
    return out


def _barycentric_vertices(ws: list[list[Fraction]]) -> list[list[Fraction]]:
    """Vertices of {λ >= 0 : Σ λ_j w_j = 0, Σ λ_j = 1}."""
    n = len(ws)
    dim = len(ws[0])
    A = [[ws[j][i] for j in range(n)] for i in range(dim)] + [[Fraction(1)] * n]
    b = [Fraction(0)] * dim + [Fraction(1)]
    rk = rank(A, n)
    verts = []
    for cols in combinations(range(n), rk):
        sub = [[row[c] for c in cols] for row in A]
        if rank(sub, rk) != rk:
            continue
        x = solve(sub, b, rk)
        if x is None or any(v < 0 for v in x):
            continue
        lam = [Fraction(0)] * n
        for c, v in zip(cols, x):
            lam[c] = v
        if lam not in verts:
            verts.append(lam)
    return verts


def hm_oracle(p: PointPattern, linearization: str = SYMMETRIC) -> str:
    """Hilbert-Mumford classification from the weight polytope.

    semistable ⟺ 0 ∈ conv(weights); stable ⟺ 0 ∈ relint(conv(weights)) and
    the weights span the whole character space.
    """
    ws = weights(p, linearization)
    verts = _barycentric_vertices(ws)
    if not verts:
        return UNSTABLE
    # 0 is in the relative interior iff some feasible λ is strictly positive,
    # i.e. every index is positive at some vertex
    relint = all(any(v[j] > 0 for v in verts) for j in range(len(ws)))
    if relint and rank(ws, p.k) == p.k:
        return STABLE
    return SEMISTABLE


def zero_in_relative_interior(p: PointPattern, linearization: str = SYMMETRIC) -> bool:
    """0 ∈ relint(conv(weights)): the orbit is closed in the semistable locus."""
    ws = weights(p, linearization)
    verts = _barycentric_vertices(ws)
    return bool(verts) and all(any(v[j] > 0 for v in verts) for j in range(len(ws)))


@dataclass(frozen=True)
class QuotientDims:
    dimY: int
    rV: tuple[int, ...]
    rW: tuple[int, ...]

    def __post_init__(self):
        if len(self.rV) != len(self.rW) or not self.rV:
            raise ValueError("need k >= 1 bundles on each side")
        if any(x < 1 for x in self.rV + self.rW):
            raise ValueError("bundle ranks must be positive")

    @property
    def k(self) -> int:
        return len(self.rV)


def quotient_dim(q: QuotientDims) -> int:
    dim = q.dimY - q.k - 1 + sum(q.rV) + sum(q.rW)
    if dim < 0:
        warnings.warn(f"negative quotient dimension {dim}", stacklevel=2)
    return dim
