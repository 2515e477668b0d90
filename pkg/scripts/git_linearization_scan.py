"""Search torus linearisations for the best match with the combinatorial rule.

The weights of V_i and W_i are shifted by u ∈ (Z/4)^k; for each shift the
Hilbert-Mumford classification is compared with ``classify`` on all patterns.
"""
from __future__ import annotations

import argparse
from fractions import Fraction
from itertools import product

from wideext.git_stability import (SEMISTABLE, STABLE, UNSTABLE, _barycentric_vertices,
                                   all_patterns, classify)
from wideext.linalg import rank


def hm_with_shift(p, u):
    k = p.k
    ws = []
    for i in range(k):
        base = [Fraction(0)] * k
        base[i] = Fraction(1)
        if p.v_nonzero[i]:
            ws.append([b + s for b, s in zip(base, u)])
        if p.w_nonzero[i]:
            ws.append([-b + s for b, s in zip(base, u)])
    verts = _barycentric_vertices(ws)
    if not verts:
        return UNSTABLE
    relint = all(any(v[j] > 0 for v in verts) for j in range(len(ws)))
    return STABLE if relint and rank(ws, k) == k else SEMISTABLE


def main(k: int, grid: int) -> None:
    pats = all_patterns(k)
    expected = [classify(p) for p in pats]
    best = None
    steps = [Fraction(n, 4) for n in range(-grid, grid + 1)]
    for u in product(steps, repeat=k):
        score = sum(hm_with_shift(p, u) == e for p, e in zip(pats, expected))
        if best is None or score > best[0]:
            best = (score, u)
    print(f"k={k}: best agreement {best[0]}/{len(pats)} at shift {[str(x) for x in best[1]]}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[2])
    ap.add_argument("--grid", type=int, default=4, help="shifts n/4 with |n| <= grid")
    args = ap.parse_args()
    for k in args.k:
        main(k, args.grid)
