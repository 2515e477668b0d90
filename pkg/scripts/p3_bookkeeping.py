"""χ(E, E) and the Ext^2 bookkeeping for the rank-3 family (3, 2n, n^2+2, 2n+2) on P3.

Prints χ by two independent routes (log-invariant polynomial and ch·td) and
the resulting dim Ext^2 = χ - dim End + dim Ext^1 + dim Ext^3.
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from wideext.chern_calculus import PROJECTIVE_3, ChernData, euler_pairing, euler_pairing_direct


def row(n: int) -> str:
    E = ChernData(3, 2 * n, n * n + 2, 2 * n + 2)
    chi = euler_pairing(E, E, PROJECTIVE_3)
    direct = euler_pairing_direct(E, E, PROJECTIVE_3)
    end = Fraction(n * (n + 2) * (n + 4), 3) + 1
    ext2 = chi - end + (2 * n + 14) + Fraction(n * (n - 2) * (n - 4), 3)
    return f"{n}\t{chi}\t{direct}\t{4 * n * n - 3}\t{ext2}\t{2 * n + 10}"


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[5, 6, 7, 8])
    args = ap.parse_args()
    print("# n\tchi\tchi_direct\tchi_quoted\text2\text2_quoted")
    for n in args.n:
        print(row(n))
