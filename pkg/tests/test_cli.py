import io
from fractions import Fraction

import pytest

from wideext.cli import run
from wideext.deform_oracle import WideExtParams, m_sup
from wideext.hn_polygon import validate
from wideext.svg import render_svg


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_deform_gap_example():
    code, out, _ = call("deform-gap", "--r0", "1", "--r1", "1", "--a0", "0", "--a1", "0",
                        "--d-min", "2", "--d-max", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("#")
    assert [ln.split("\t")[2] for ln in lines[1:]] == ["2", "4", "6"]


def test_tsv_round_trip():
    _, out, _ = call("deform-gap", "--r0", "2", "--r1", "1", "--a0", "1", "--a1", "-1",
                     "--d-min", "1", "--d-max", "4")
    for line in out.splitlines()[1:]:
        d, m, gap, _ = line.split("\t")
        rep = m_sup(WideExtParams(int(d), 2, 1, 1, -1))
        assert (Fraction(m), Fraction(gap)) == (rep.m, rep.gap)


def test_dlp_examples():
    assert call("dlp", "--mu", "0")[1] == "1\n"
    assert call("dlp", "--mu", "-1/2")[1] == "5/8\n"
    assert call("dlp", "--exists", "2", "0", "2")[1] == "true\n"
    assert call("dlp", "--exists", "2", "-1", "1")[1] == "false\n"


def test_dlp_catalog_file(tmp_path):
    code, text, _ = call("dlp", "--write-catalog", "--rank-bound", "5")
    assert code == 0
    path = tmp_path / "cat.txt"
    path.write_text(text)
    assert call("dlp", "--mu", "1/3", "--catalog", str(path))[1] == "5/9\n"
    assert call("dlp", "--mu", "5", "--catalog", str(path))[1] == "uncovered\n"


def test_git_check():
    assert call("git-check", "--pattern", "1,1;1,1") == (0, "stable stable\n", "")
    code, out, err = call("git-check", "--pattern", "1,1;1,0")
    assert code == 1 and "OracleDisagreement" in err


def test_chern_and_hn():
    code, out, _ = call("chern", "--data", "2 -1 1")
    assert code == 0 and "delta\t3/8" in out
    code, out, _ = call("chern", "--geometry", "p3", "--data", "3 10 27 12", "--pair", "3 10 27 12")
    assert "chi_pair\t85" in out
    code, out, _ = call("hn", "--points", "0:0 1:1 2:0", "--below", "--strict")
    assert out.splitlines()[-1] == "0:0 2:0\t0"


def test_exit_codes():
    assert call("nope")[0] == 2
    assert call("deform-gap", "--r0", "1")[0] == 2
    code, _, err = call("hn", "--points", "0:0 1:0 2:3")
    assert code == 1 and err.startswith("NotConcave")
    code, _, err = call("dlp", "--mu", "x/y")
    assert code == 1 and err.startswith("ParseError")
    code, _, err = call("deform-gap", "--r0", "1", "--r1", "1", "--a0", "0", "--a1", "0",
                        "--d-min", "0", "--d-max", "1")
    assert code == 1 and err.startswith("NotConcave")
    assert call("ext-calc", "--op", "delta")[0] == 2


def test_enum_cap_from_env(monkeypatch):
    monkeypatch.setenv("WIDE_EXT_ENUM_CAP", "1")
    code, _, err = call("deform-gap", "--r0", "1", "--r1", "1", "--a0", "0", "--a1", "0",
                        "--d-min", "5", "--d-max", "5")
    assert code == 1 and err.startswith("EnumerationCapExceeded")


def test_config_file(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[Geometry]\nKIND = p3\n[enumeration]\nCap = 1\n")
    code, out, _ = call("--config", str(cfg), "chern", "--data", "1 0 0 0")
    assert code == 0 and "chi\t1" in out and "delta3" in out
    code, _, err = call("--config", str(cfg), "hn", "--points", "0:0 1:3 3:0", "--below")
    assert code == 1 and "EnumerationCapExceeded" in err
    bad = tmp_path / "bad.ini"
    bad.write_text("[colours]\nx = 1\n")
    assert call("--config", str(bad), "dlp", "--mu", "0")[0] == 2


def test_ext_calc(tmp_path):
    f = tmp_path / "ext.txt"
    f.write_text("points=2 rF=1 rG=1 g=0\npi: 1\nrho: 1\nphi: 1\npi: 1\nrho: 1\npsi2: 1\n")
    assert call("ext-calc", "--file", str(f), "--op", "tangent")[1].startswith("codim\t2\n")
    assert call("ext-calc", "--file", str(f), "--op", "delta")[1].startswith("dim\t2\n")
    out = call("ext-calc", "--file", str(f), "--op", "mu")[1]
    assert "disjoint_supports\ttrue" in out and "vanishes\ttrue" in out
    out = call("ext-calc", "--file", str(f), "--op", "formal", "--extra-vars", "2")[1]
    assert "variables\t4" in out and "degree2_dim\t8" in out and "mu_span_matches\ttrue" in out
    f.write_text("points=1 rF=1 rG=1 g=1\npi: 1\nrho: 1\n1\n")
    code, _, err = call("ext-calc", "--file", str(f), "--op", "formal")
    assert code == 1 and err.startswith("HypothesesNotMet")


def test_svg_deterministic_and_shaped(tmp_path):
    args = ["deform-gap", "--r0", "1", "--r1", "1", "--a0", "0", "--a1", "0",
            "--d-min", "3", "--d-max", "3", "--emit-svg"]
    call(*args, str(tmp_path / "a"))
    call(*args, str(tmp_path / "b"))
    a = (tmp_path / "a" / "gap_d3.svg").read_bytes()
    assert a == (tmp_path / "b" / "gap_d3.svg").read_bytes()
    assert a.count(b"<polyline") == 2 and b"stroke-dasharray" in a


def test_svg_empty_list():
    ceiling = validate([(0, 0), (1, 2), (3, 1)])
    svg = render_svg([], ceiling)
    assert svg.count("<polyline") == 1 and "<circle" in svg
