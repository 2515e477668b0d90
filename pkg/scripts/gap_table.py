"""Energy-gap tables for several wide-extension families, with optional SVGs."""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from wideext.deform_oracle import WideExtParams, build_P0, first_valid_d, gap_series, positivity_threshold
from wideext.rational import fmt
from wideext.svg import render_polygons


@dataclass
class GapConfig:
    ranks: tuple[tuple[int, int], ...] = ((1, 1), (1, 2), (2, 1), (2, 2))
    degrees: tuple[int, ...] = (-1, 0, 1)
    window: int = 10
    svg_dir: Path | None = None


def main(cfg: GapConfig) -> None:
    print("# r0\tr1\ta0\ta1\td0\tthreshold\tgaps")
    for (r0, r1), a0, a1 in product(cfg.ranks, cfg.degrees, cfg.degrees):
        d0 = first_valid_d(r0, r1, a0, a1)
        fam = WideExtParams(d0, r0, r1, a0, a1)
        reps = gap_series(fam, d0, d0 + cfg.window)
        print(f"{r0}\t{r1}\t{a0}\t{a1}\t{d0}\t{positivity_threshold(reps)}\t"
              + ",".join(fmt(r.gap) for r in reps))
        if cfg.svg_dir is not None:
            cfg.svg_dir.mkdir(parents=True, exist_ok=True)
            last = reps[-1]
            render_polygons(last.argmax, build_P0(fam.with_d(last.d)),
                            cfg.svg_dir / f"argmax_{r0}{r1}_{a0}_{a1}_d{last.d}.svg")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--window", type=int, default=10)
    ap.add_argument("--svg-dir", type=Path)
    a = ap.parse_args()
    main(GapConfig(window=a.window, svg_dir=a.svg_dir))
