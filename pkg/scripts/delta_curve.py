"""Sample the existence threshold δ(μ) on a slope range and dump the catalog used."""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from wideext.dlp_existence import default_catalog, delta_of_mu, rationals_with_denominator_at_most
from wideext.rational import fmt


@dataclass
class CurveConfig:
    lo: Fraction = Fraction(-1)
    hi: Fraction = Fraction(1)
    max_denominator: int = 12
    rank_bound: int = 34
    catalog_out: str | None = None


def main(cfg: CurveConfig) -> None:
    cat = default_catalog(cfg.lo, cfg.hi, rank_bound=cfg.rank_bound)
    if cfg.catalog_out:
        with open(cfg.catalog_out, "w", encoding="utf-8") as fh:
            fh.write(cat.to_text())
    print("# mu\tdelta\texceptional_rank\texceptional_slope")
    for mu in rationals_with_denominator_at_most(cfg.lo, cfg.hi, cfg.max_denominator):
        e = cat.find(mu)
        if e is None:
            print(f"{fmt(mu)}\tuncovered\t-\t-")
        else:
            print(f"{fmt(mu)}\t{fmt(delta_of_mu(cat, mu))}\t{e.rank}\t{fmt(e.slope)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=Fraction, default=Fraction(-1))
    ap.add_argument("--hi", type=Fraction, default=Fraction(1))
    ap.add_argument("--max-denominator", type=int, default=12)
    ap.add_argument("--rank-bound", type=int, default=34)
    ap.add_argument("--catalog-out")
    a = ap.parse_args()
    main(CurveConfig(a.lo, a.hi, a.max_denominator, a.rank_bound, a.catalog_out))
