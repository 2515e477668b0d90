"""``wideext`` command line.

Exit codes: 0 success, 1 domain error (error class name on stderr), 2 usage
error. Every number printed is an exact rational.
"""
from __future__ import annotations

import argparse
import configparser
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from pathlib import Path
from typing import Optional, Sequence

from . import chern_calculus as cc
from . import deform_oracle as do
from . import dlp_existence as dlp
from . import generic_ext_linalg as gel
from . import git_stability as gs
from . import hn_polygon as hn
from .errors import OracleDisagreement, WideExtError
from .rational import fmt, parse_rational
from .svg import render_polygons


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    flags: dict
    geometry: cc.GeometryData = cc.P2
    catalog_path: Optional[Path] = None
    extension_path: Optional[Path] = None
    enum_cap: Optional[int] = None
    outputs: dict = field(default_factory=dict)


def _geometry_from_section(sec) -> cc.GeometryData:
    kind = sec.get("kind", "p2").lower()
    if kind == "p2":
        return cc.P2
    if kind in ("p3", cc.P3):
        return cc.PROJECTIVE_3
    if kind == cc.SURFACE:
        try:
            return cc.GeometryData.surface(int(sec.get("h2", 1)), int(sec.get("kh", -3)),
                                           int(sec.get("chio", 1)))
        except ValueError as exc:
            raise UsageError(f"bad geometry section: {exc}") from exc
    raise UsageError(f"unknown geometry kind {kind!r}")


def load_config(args: argparse.Namespace) -> RunConfig:
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    cfg = RunConfig(args.command, flags)
    if args.config:
        parser = configparser.ConfigParser()
        try:
            with open(args.config, encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        except configparser.Error as exc:
            raise UsageError(f"malformed config: {exc}") from exc
        known = {"geometry", "catalog", "extension", "enumeration"}
        for name in parser.sections():
            if name.lower() not in known:
                raise UsageError(f"unknown config section [{name}]")
        sections = {n.lower(): parser[n] for n in parser.sections()}
        if "geometry" in sections:
            cfg.geometry = _geometry_from_section(sections["geometry"])
        if "catalog" in sections and "path" in sections["catalog"]:
            cfg.catalog_path = Path(sections["catalog"]["path"])
        if "extension" in sections and "path" in sections["extension"]:
            cfg.extension_path = Path(sections["extension"]["path"])
        if "enumeration" in sections and "cap" in sections["enumeration"]:
            try:
                cfg.enum_cap = int(sections["enumeration"]["cap"])
            except ValueError as exc:
                raise UsageError("enumeration cap must be an integer") from exc
    if getattr(args, "geometry", None):
        cfg.geometry = cc.PROJECTIVE_3 if args.geometry == "p3" else cc.P2
    if getattr(args, "catalog", None):
        cfg.catalog_path = Path(args.catalog)
    if getattr(args, "file", None):
        cfg.extension_path = Path(args.file)
    return cfg


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


# -- commands ---------------------------------------------------------------

def cmd_chern(cfg: RunConfig, out) -> None:
    f = cfg.flags
    g = cfg.geometry
    c = cc.ChernData.from_text(f["data"])
    if f["twist"]:
        c = cc.twist(c, f["twist"], g)
        print(f"twisted\t{c.to_text()}", file=out)
    inv = cc.log_invariants(c, g)
    print(f"mu\t{fmt(inv.mu)}", file=out)
    print(f"delta\t{fmt(inv.delta)}", file=out)
    if inv.delta3 is not None:
        print(f"delta3\t{fmt(inv.delta3)}", file=out)
    print(f"chi\t{fmt(cc.euler_char(c, g))}", file=out)
    if f["pair"]:
        other = cc.ChernData.from_text(f["pair"])
        print(f"chi_pair\t{fmt(cc.euler_pairing(c, other, g))}", file=out)


def cmd_hn(cfg: RunConfig, out) -> None:
    f = cfg.flags
    p = hn.validate(hn.parse_points(f["points"]))
    print(f"polygon\t{p.to_text()}", file=out)
    print(f"energy\t{fmt(hn.energy(p))}", file=out)
    if f["compare"]:
        q = hn.validate(hn.parse_points(f["compare"]))
        print(f"leq\t{str(hn.leq(p, q)).lower()}", file=out)
    if f["below"]:
        polys = hn.enumerate_below(p, strict=f["strict"], cap=cfg.enum_cap)
        print("# polygon\tenergy", file=out)
        for q in polys:
            print(f"{q.to_text()}\t{fmt(hn.energy(q))}", file=out)


def cmd_deform_gap(cfg: RunConfig, out) -> None:
    f = cfg.flags
    fam = do.WideExtParams(f["d_min"], f["r0"], f["r1"], f["a0"], f["a1"])
    if f["d_max"] < f["d_min"]:
        raise UsageError("--d-max must be >= --d-min")
    reports = do.gap_series(fam, f["d_min"], f["d_max"], cap=cfg.enum_cap)
    print("# d\tm\tgap\targmax_count", file=out)
    for rep in reports:
        print(f"{rep.d}\t{fmt(rep.m)}\t{fmt(rep.gap)}\t{len(rep.argmax)}", file=out)
    if f["emit_svg"]:
        outdir = Path(f["emit_svg"])
        outdir.mkdir(parents=True, exist_ok=True)
        for rep in reports:
            ceiling = do.build_P0(fam.with_d(rep.d))
            path = render_polygons(rep.argmax, ceiling, outdir / f"gap_d{rep.d}.svg")
            cfg.outputs[rep.d] = path


def _catalog_for(cfg: RunConfig, mu: Fraction) -> dlp.ExceptionalCatalog:
    if cfg.catalog_path is not None:
        return dlp.ExceptionalCatalog.from_text(_read(cfg.catalog_path))
    base = floor(mu)
    return dlp.default_catalog(base - 1, base + 1, rank_bound=cfg.flags["rank_bound"])


def _show(v) -> str:
    if v is dlp.UNCOVERED:
        return "uncovered"
    if isinstance(v, bool):
        return str(v).lower()
    return fmt(v)


def cmd_dlp(cfg: RunConfig, out) -> None:
    f = cfg.flags
    if f["mu"] is not None:
        mu = parse_rational(f["mu"])
        print(_show(dlp.delta_of_mu(_catalog_for(cfg, mu), mu)), file=out)
    elif f["exists"] is not None:
        r, c1, c2 = f["exists"]
        r_i = int(parse_rational(r))
        c1_q, c2_q = parse_rational(c1), parse_rational(c2)
        if r_i < 1:
            raise UsageError("rank must be positive")
        cat = _catalog_for(cfg, c1_q / r_i)
        print(_show(dlp.exists_positive_dim_moduli(r_i, c1_q, c2_q, cat)), file=out)
    elif f["write_catalog"] is not None:
        lo, hi = (parse_rational(x) for x in f["range"])
        seed = dlp.line_bundle_catalog(floor(lo), ceil(hi))
        cat = dlp.extend_catalog(seed, slope_range=(lo, hi), rank_bound=f["rank_bound"])
        out.write(cat.to_text())
    else:
        raise UsageError("dlp needs one of --mu, --exists, --write-catalog")


def cmd_git_check(cfg: RunConfig, out) -> None:
    f = cfg.flags
    p = gs.PointPattern.parse(f["pattern"])
    a = gs.classify(p)
    b = gs.hm_oracle(p, f["linearization"])
    print(f"{a} {b}", file=out)
    if a != b:
        raise OracleDisagreement(f"classify says {a}, Hilbert-Mumford says {b}")


def cmd_ext_calc(cfg: RunConfig, out) -> None:
    f = cfg.flags
    if cfg.extension_path is None:
        raise UsageError("ext-calc needs --file or an [extension] path in the config")
    e, eta, eta2 = gel.parse_extension_file(_read(cfg.extension_path))
    h = gel.HomEvaluationModel.elementary(e)
    op = f["op"]
    if op == "delta":
        sub = gel.delta_image(e)
        print(f"dim\t{sub.dim}", file=out)
        for v in sub.basis:
            print("\t".join(fmt(a) for a in v), file=out)
    elif op == "tangent":
        print(f"codim\t{gel.tangent_codim(e)}", file=out)
        print(f"delta_image_dim\t{gel.delta_image(e).dim}", file=out)
    elif op == "mu":
        vals = gel.mu_pair(eta, eta2, h)
        print("functional\t" + "\t".join(fmt(v) for v in vals), file=out)
        s, _ = gel.supports(eta)
        _, s2 = gel.supports(eta2)
        print(f"disjoint_supports\t{str(not (s & s2)).lower()}", file=out)
        print(f"vanishes\t{str(gel.mu_vanishes(e, eta, eta2, h)).lower()}", file=out)
    elif op == "formal":
        fm = gel.formal_module(e, f["extra_vars"], h)
        print(f"variables\t{fm.n_vars}", file=out)
        print(f"relations\t{len(fm.relations)}", file=out)
        print(f"degree2_dim\t{fm.degree2_dim()}", file=out)
        for a, b in fm.relations:
            print(f"{a}*{b}", file=out)
        print(f"mu_span_matches\t{str(gel.symmetrized_mu_matches_relations(e, h)).lower()}",
              file=out)


COMMANDS = {
    "chern": cmd_chern,
    "hn": cmd_hn,
    "deform-gap": cmd_deform_gap,
    "dlp": cmd_dlp,
    "git-check": cmd_git_check,
    "ext-calc": cmd_ext_calc,
}


class _Parser(argparse.ArgumentParser):
    """Accepts negative rationals such as ``-1/2`` as values, not options."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="wideext", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="INI file with [geometry], [catalog], [extension], [enumeration]")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chern", help="logarithmic invariants and Euler characteristics")
    p.add_argument("--data", required=True, help='"r c1 c2 [c3]"')
    p.add_argument("--geometry", choices=("p2", "p3"))
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--pair", help="second sheaf for χ(E, F)")

    p = sub.add_parser("hn", help="validate, compare, enumerate HN polygons")
    p.add_argument("--points", required=True, help='"0:0 1:2 3:3"')
    p.add_argument("--compare", help="second polygon; prints whether points <= compare")
    p.add_argument("--below", action="store_true", help="enumerate polygons below --points")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("deform-gap", help="energy gap table for a wide-extension family")
    for name in ("--r0", "--r1", "--a0", "--a1", "--d-min", "--d-max"):
        p.add_argument(name, type=int, required=True)
    p.add_argument("--emit-svg", metavar="DIR")

    p = sub.add_parser("dlp", help="existence threshold δ(μ)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mu")
    g.add_argument("--exists", nargs=3, metavar=("R", "C1", "C2"))
    g.add_argument("--write-catalog", action="store_true", default=None)
    p.add_argument("--catalog", help="catalog file")
    p.add_argument("--rank-bound", type=int, default=34)
    p.add_argument("--range", nargs=2, default=("-1", "1"), metavar=("LO", "HI"))

    p = sub.add_parser("git-check", help="compare both GIT classifiers on a pattern")
    p.add_argument("--pattern", required=True, help='"v1,w1;v2,w2;..." with 0/1 entries')
    p.add_argument("--linearization", choices=(gs.SYMMETRIC, gs.NATURAL), default=gs.SYMMETRIC)

    p = sub.add_parser("ext-calc", help="generic wide extension linear algebra")
    p.add_argument("--file")
    p.add_argument("--op", required=True, choices=("delta", "tangent", "mu", "formal"))
    p.add_argument("--extra-vars", type=int, default=0)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args)
        COMMANDS[args.command](cfg, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except WideExtError as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return 1
    except OSError as exc:
        print(f"IoError: {exc}", file=err)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
