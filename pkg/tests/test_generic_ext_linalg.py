from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from wideext.errors import HypothesesNotMet, ParseError, ShapeMismatch
from wideext.generic_ext_linalg import (GenericWideExtension, HomEvaluationModel,
                                        LocalExtClass, act, constraint_matrix,
                                        delta_image, formal_module, ker_omega2_dim,
                                        mu_pair, mu_vanishes, parse_extension_file,
                                        span_dims, supports, supports_disjoint,
                                        symmetrized_mu_matches_relations,
                                        tangent_codim)

coord = st.integers(-2, 2)


def nonzero(n):
    return st.lists(coord, min_size=n, max_size=n).filter(any)


@st.composite
def extensions(draw, max_points=3, max_rank=2, max_g=0):
    k = draw(st.integers(1, max_points))
    rF = draw(st.integers(1, max_rank))
    rG = draw(st.integers(1, max_rank))
    g = draw(st.integers(0, max_g))
    pi = [draw(nonzero(rF)) for _ in range(k)]
    rho = [draw(nonzero(rG)) for _ in range(k)]
    secs = [draw(st.lists(coord, min_size=k, max_size=k)) for _ in range(g)]
    return GenericWideExtension(tuple(f"x{i}" for i in range(k)), rF, rG, pi, rho, secs)


@st.composite
def ext_and_classes(draw, **kw):
    e = draw(extensions(**kw))

    def cls():
        return LocalExtClass(
            [draw(st.lists(coord, min_size=e.rG, max_size=e.rG)) for _ in e.points],
            [draw(st.lists(coord, min_size=e.rF, max_size=e.rF)) for _ in e.points])
    return e, cls(), cls()


def one_point(rF=1, rG=1, pi=(1,), rho=(1,), secs=()):
    return GenericWideExtension(("x",), rF, rG, (pi,), (rho,), secs)


# -- worked examples ----------------------------------------------------------

def test_delta_image_examples():
    assert delta_image(one_point()).dim == 1
    e = GenericWideExtension(("x", "y"), 2, 2, ((1, 0), (1, 1)), ((0, 1), (2, -1)))
    assert delta_image(e).dim == 6
    assert delta_image(one_point(secs=((1,),))).dim == 0


def test_tangent_codim_examples():
    assert tangent_codim(one_point()) == 1
    for k in range(1, 5):
        e = GenericWideExtension(tuple(range(k)), 1, 1, ((1,),) * k, ((1,),) * k)
        assert tangent_codim(e) == k


def test_formal_module_examples():
    fm = formal_module(one_point(), extra_vars=2)
    assert fm.n_vars == 3 and len(fm.relations) == 1 and fm.degree2_dim() == 5
    fm = formal_module(GenericWideExtension(("x", "y"), 2, 1, ((1, 0), (0, 1)), ((1,), (1,))))
    assert len(fm.relations) == 4
    assert formal_module(one_point()).degree2_dim() == 0
    with pytest.raises(HypothesesNotMet):
        formal_module(one_point(secs=((1,),)))


def test_mu_pair_examples():
    e = one_point()
    h = HomEvaluationModel.elementary(e)
    one = LocalExtClass(((1,),), ((1,),))
    assert mu_pair(one, one, h) == (1,)
    zero_phi = LocalExtClass(((0,),), ((1,),))
    assert mu_pair(zero_phi, one, h) == (0,)


def test_non_surjective_model_is_flagged():
    e = one_point()
    h = HomEvaluationModel(1, 1, 1, ((((0,),),),))
    one = LocalExtClass(((1,),), ((1,),))
    assert not h.surjective
    assert mu_pair(one, one, h) == (0,)  # vanishes despite overlapping supports
    with pytest.raises(HypothesesNotMet):
        mu_vanishes(e, one, one, h)
    with pytest.raises(HypothesesNotMet):
        symmetrized_mu_matches_relations(e, h)


def test_ker_omega2_examples():
    e = GenericWideExtension(("x", "y"), 2, 1, ((1, 0), (0, 1)), ((1,), (1,)))
    assert ker_omega2_dim(e, HomEvaluationModel.elementary(e)) == 0
    assert ker_omega2_dim(e, HomEvaluationModel.elementary(e, extra=3)) == 3
    assert ker_omega2_dim(e, HomEvaluationModel(1, 2, 2, ())) == 0


def test_supports_and_shapes():
    c = LocalExtClass(((1,), (0,)), ((0,), (0,)))
    assert supports(c) == (frozenset({0}), frozenset())
    with pytest.raises(ShapeMismatch):
        GenericWideExtension(("x",), 1, 1, ((0,),), ((1,),))
    with pytest.raises(ShapeMismatch):
        GenericWideExtension((), 1, 1, (), ())
    with pytest.raises(ShapeMismatch):
        LocalExtClass(((1,),), ())


def test_act_examples():
    e = GenericWideExtension(("x", "y"), 2, 2, ((1, 0), (1, 1)), ((0, 1), (2, -1)))
    zero_lam = [[[0, 0], [0, 0]]] * 2
    eta = LocalExtClass(((1, 2), (0, 1)), ((1, 1), (2, 0)))
    left, right = act(e, zero_lam, eta)
    assert not any(left) and not any(right)
    lam = [[[1, 2], [0, 1]], [[1, -1], [2, 0]]]
    left, right = act(e, lam, LocalExtClass.zero(e))
    assert not any(left) and not any(right)


# -- properties ---------------------------------------------------------------

@given(extensions(max_points=3, max_rank=3, max_g=2))
def test_delta_dim_is_ambient_minus_constraint_rank(e):
    rows = constraint_matrix(e)
    oracle = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows]).rank()
    assert delta_image(e).dim == e.ambient_dim - oracle
    assert tangent_codim(e) == oracle
    sub = delta_image(e)
    for v in sub.basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@given(extensions(max_g=0))
def test_codim_is_number_of_points_without_sections(e):
    assert tangent_codim(e) == e.n_points
    assert delta_image(e).dim == e.n_points * (e.rF + e.rG - 1)


@given(ext_and_classes(), st.integers(-2, 2), st.integers(-2, 2))
def test_mu_pair_bilinear(data, s, t):
    e, a, b = data
    h = HomEvaluationModel.elementary(e)
    comb = LocalExtClass.from_ambient(e, [s * x + t * y for x, y in zip(a.to_ambient(), b.to_ambient())])
    lhs = mu_pair(comb, b, h)
    assert lhs == tuple(s * x + t * y for x, y in zip(mu_pair(a, b, h), mu_pair(b, b, h)))
    lhs = mu_pair(a, comb, h)
    assert lhs == tuple(s * x + t * y for x, y in zip(mu_pair(a, a, h), mu_pair(a, b, h)))


@given(ext_and_classes())
def test_mu_vanishes_iff_disjoint_supports(data):
    e, a, b = data
    h = HomEvaluationModel.elementary(e, extra=1)
    assert mu_vanishes(e, a, b, h) == supports_disjoint(a, b)


@given(extensions())
def test_symmetrized_mu_matches(e):
    h = HomEvaluationModel.elementary(e)
    assert symmetrized_mu_matches_relations(e, h)
    rel, mus = span_dims(e, h)
    assert rel == mus == e.n_points * e.rF * e.rG


@given(extensions())
def test_formal_module_counts(e):
    fm = formal_module(e, extra_vars=1)
    V = 1 + e.n_points * (e.rF + e.rG - 1)
    assert fm.n_vars == V
    assert len(fm.relations) == e.n_points * e.rF * e.rG
    assert fm.degree2_dim() == V * (V + 1) // 2 - e.n_points * e.rF * e.rG
    for idx in range(e.n_points):
        assert fm.rho_basis[idx][0] == e.rho[idx]
        assert fm.pi_basis[idx][0] == e.pi[idx]


@given(ext_and_classes(), st.data())
def test_act_depends_only_on_local_data(data, draw):
    e, a, _ = data
    lam = [[[draw.draw(coord) for _ in range(e.rF)] for _ in range(e.rG)] for _ in e.points]
    b = LocalExtClass.from_ambient(e, a.to_ambient())
    assert act(e, lam, a) == act(e, lam, b)


@given(extensions(max_g=2), st.lists(st.sampled_from([-2, -1, 1, 2, 3]), min_size=3, max_size=3))
def test_dimensions_invariant_under_rescaling_trivialisations(e, factors):
    f = e.rescaled(factors[:e.n_points])
    assert delta_image(f).dim == delta_image(e).dim
    assert tangent_codim(f) == tangent_codim(e)


# -- file format ----------------------------------------------------------------

SAMPLE = """points=2 rF=2 rG=1 g=1
pi: 1 0
rho: 1
phi: 1
psi: 0 1
pi: 0 1
rho: 2
psi2: 1 1
1 1/2
"""


def test_parse_extension_file():
    e, eta, eta2 = parse_extension_file(SAMPLE)
    assert (e.n_points, e.rF, e.rG, e.g) == (2, 2, 1, 1)
    assert e.omega_sections == ((1, Fraction(1, 2)),)
    assert eta.phi == ((1,), (0,)) and eta2.psi == ((0, 0), (1, 1))
    assert delta_image(e).dim == 6 - 2 - 1  # two pairings and one section


@pytest.mark.parametrize("text", [
    "", "points=1 rF=1 rG=1\npi: 1\nrho: 1\n", "points=1 rF=1 rG=1 g=0\nrho: 1\n",
    "points=1 rF=1 rG=1 g=0\npi: 1\nrho: 1\nfoo: 1\n", "points=1 rF=1 rG=1 g=1\npi: 1\nrho: 1\n",
    "points=1 rF=1 rG=1 g=0\npi: x\nrho: 1\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_extension_file(text)
