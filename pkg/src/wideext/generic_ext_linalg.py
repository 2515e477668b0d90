"""Local linear algebra of generic wide extensions on a surface.

A generic wide extension has singular quotient ``T = ⊕_{x∈Z} C_x``. All the
data needed here lives at the finitely many points of Z:

* covectors ``π_x`` (length rF) and ``ρ_x`` (length rG), both nonzero;
* values ``s_j(x)`` of a basis of H^0(ω_X) at Z (after fixing ω_{X,x} ≅ C);
* local components of an Ext^1 class, ``φ_x`` (length rG) and ``ψ_x``
  (length rF);
* a finite-dimensional model of Hom(F** ⊗ ω^{-1}, G*) given by evaluation
  matrices (rG x rF) at each point.

Ambient coordinates of ``⊕_x (G_x** ⊕ F_x**)`` are ordered point by point,
``φ_x`` first and then ``ψ_x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import HypothesesNotMet, ParseError, ShapeMismatch
from .linalg import (complete_basis, dot, nullspace, rank, reduce_mod_line,
                     span_equal)

Vector = tuple[Fraction, ...]


def _vec(v) -> Vector:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class GenericWideExtension:
    points: tuple[str, ...]
    rF: int
    rG: int
    pi: tuple[Vector, ...]
    rho: tuple[Vector, ...]
    # omega_sections[j][i] = s_j(points[i])
    omega_sections: tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "pi", tuple(_vec(v) for v in self.pi))
        object.__setattr__(self, "rho", tuple(_vec(v) for v in self.rho))
        object.__setattr__(self, "omega_sections", tuple(_vec(v) for v in self.omega_sections))
        n = len(self.points)
        if n < 1:
            raise ShapeMismatch("Z must contain at least one point")
        if len(set(self.points)) != n:
            raise ShapeMismatch("points of Z must be distinct")
        if len(self.pi) != n or len(self.rho) != n:
            raise ShapeMismatch("one π_x and one ρ_x per point")
        if any(len(v) != self.rF for v in self.pi) or any(len(v) != self.rG for v in self.rho):
            raise ShapeMismatch("π_x has length rF and ρ_x has length rG")
        if any(not any(v) for v in self.pi) or any(not any(v) for v in self.rho):
            raise ShapeMismatch("π_x and ρ_x must be nonzero")
        if any(len(s) != n for s in self.omega_sections):
            raise ShapeMismatch("each section needs one value per point")

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def g(self) -> int:
        return len(self.omega_sections)

    @property
    def block(self) -> int:
        return self.rF + self.rG

    @property
    def ambient_dim(self) -> int:
        return self.n_points * self.block

    def phi_slice(self, i: int) -> slice:
        return slice(i * self.block, i * self.block + self.rG)

    def psi_slice(self, i: int) -> slice:
        return slice(i * self.block + self.rG, (i + 1) * self.block)

    def rescaled(self, factors: Sequence) -> "GenericWideExtension":
        """Change the trivialisations ω_{X,x} ≅ C by nonzero factors c_x.

        ρ_x becomes c_x ρ_x and s(x) becomes s(x)/c_x.
        """
        fs = [Fraction(c) for c in factors]
        if len(fs) != self.n_points or any(c == 0 for c in fs):
            raise ShapeMismatch("one nonzero factor per point")
        rho = tuple(tuple(c * a for a in r) for c, r in zip(fs, self.rho))
        secs = tuple(tuple(v / c for v, c in zip(s, fs)) for s in self.omega_sections)
        return GenericWideExtension(self.points, self.rF, self.rG, self.pi, rho, secs)


@dataclass(frozen=True)
class LocalExtClass:
    phi: tuple[Vector, ...]
    psi: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(_vec(v) for v in self.phi))
        object.__setattr__(self, "psi", tuple(_vec(v) for v in self.psi))
        if len(self.phi) != len(self.psi):
            raise ShapeMismatch("φ and ψ need the same number of points")

    @classmethod
    def zero(cls, e: GenericWideExtension) -> "LocalExtClass":
        return cls(tuple((0,) * e.rG for _ in e.points), tuple((0,) * e.rF for _ in e.points))

    @classmethod
    def from_ambient(cls, e: GenericWideExtension, v: Sequence) -> "LocalExtClass":
        v = _vec(v)
        return cls(tuple(v[e.phi_slice(i)] for i in range(e.n_points)),
                   tuple(v[e.psi_slice(i)] for i in range(e.n_points)))

    def to_ambient(self) -> Vector:
        out: list[Fraction] = []
        for f, s in zip(self.phi, self.psi):
            out.extend(f)
            out.extend(s)
        return tuple(out)

    def check_shape(self, e: GenericWideExtension):
        if (len(self.phi) != e.n_points or any(len(f) != e.rG for f in self.phi)
                or any(len(s) != e.rF for s in self.psi)):
            raise ShapeMismatch("class does not match the extension's shape")


@dataclass(frozen=True)
class HomEvaluationModel:
    """Basis of global homomorphisms, each given by rG x rF matrices at Z."""
    rG: int
    rF: int
    n_points: int
    basis: tuple[tuple[tuple[Vector, ...], ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        fixed = []
        for elem in self.basis:
            if len(elem) != self.n_points:
                raise ShapeMismatch("each basis element needs a matrix per point")
            mats = []
            for m in elem:
                if len(m) != self.rG or any(len(row) != self.rF for row in m):
                    raise ShapeMismatch("evaluation matrices are rG x rF")
                mats.append(tuple(_vec(row) for row in m))
            fixed.append(tuple(mats))
        object.__setattr__(self, "basis", tuple(fixed))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def evaluation_rows(self) -> list[list[Fraction]]:
        """One row per basis element: all matrix entries at all points."""
        return [[a for m in elem for row in m for a in row] for elem in self.basis]

    @property
    def target_dim(self) -> int:
        return self.n_points * self.rG * self.rF

    @property
    def surjective(self) -> bool:
        """Joint evaluation at Z is onto ⊕_x Hom(F_x, G*_x)."""
        return rank(self.evaluation_rows(), self.target_dim) == self.target_dim

    @classmethod
    def elementary(cls, e: GenericWideExtension, extra: int = 0) -> "HomEvaluationModel":
        """Elementary matrices at each point (surjective), plus ``extra``
        homomorphisms vanishing on Z."""
        basis = []
        zero = tuple(tuple(Fraction(0) for _ in range(e.rF)) for _ in range(e.rG))
        for i in range(e.n_points):
            for a in range(e.rG):
                for b in range(e.rF):
                    m = tuple(tuple(Fraction(int(r == a and c == b)) for c in range(e.rF))
                              for r in range(e.rG))
                    basis.append(tuple(m if j == i else zero for j in range(e.n_points)))
        for _ in range(extra):
            basis.append(tuple(zero for _ in range(e.n_points)))
        return cls(e.rG, e.rF, e.n_points, tuple(basis))


def _check_model(e: GenericWideExtension, h: HomEvaluationModel):
    if (h.rG, h.rF, h.n_points) != (e.rG, e.rF, e.n_points):
        raise ShapeMismatch("Hom model does not match the extension's shape")


def constraint_matrix(e: GenericWideExtension) -> list[list[Fraction]]:
    """Rows: ⟨φ_x, ρ_x⟩ + ⟨ψ_x, π_x⟩ for each x, then Σ_x ⟨φ_x, ρ_x⟩ s_j(x) per section."""
    rows = []
    for i in range(e.n_points):
        row = [Fraction(0)] * e.ambient_dim
        row[e.phi_slice(i)] = e.rho[i]
        row[e.psi_slice(i)] = e.pi[i]
        rows.append(row)
    for s in e.omega_sections:
        row = [Fraction(0)] * e.ambient_dim
        for i in range(e.n_points):
            row[e.phi_slice(i)] = [s[i] * a for a in e.rho[i]]
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return rank(list(self.basis) + [list(v)], self.ambient_dim) == self.dim


def delta_image(e: GenericWideExtension) -> Subspace:
    """The image W(π, ρ) of Δ inside ⊕_x (G_x** ⊕ F_x**)."""
    basis = nullspace(constraint_matrix(e), e.ambient_dim)
    return Subspace(e.ambient_dim, tuple(tuple(v) for v in basis))


def tangent_codim(e: GenericWideExtension) -> int:
    """Number of independent conditions cutting W(π, ρ) out of ⊕_x (G_x** ⊕ F_x**).

    This is |Z| plus the rank contributed by the sections of ω. The dimension
    of W itself (the codimension of ker Δ in Ext^1) is ``delta_image(e).dim``.
    """
    return rank(constraint_matrix(e), e.ambient_dim)


def supports(c: LocalExtClass) -> tuple[frozenset[int], frozenset[int]]:
    """Indices of points where φ_x ≠ 0, resp. ψ_x ≠ 0."""
    s = frozenset(i for i, f in enumerate(c.phi) if any(f))
    s_star = frozenset(i for i, p in enumerate(c.psi) if any(p))
    return s, s_star


def _bilinear(phi: Sequence[Vector], psi: Sequence[Vector], h: HomEvaluationModel) -> tuple[Fraction, ...]:
    vals = []
    for elem in h.basis:
        total = Fraction(0)
        for m, f, p in zip(elem, phi, psi):
            # ⟨α(x) ψ_x, φ_x⟩
            for a in range(h.rG):
                if f[a]:
                    total += f[a] * dot(m[a], p)
        vals.append(total)
    return tuple(vals)


def mu_pair(eta: LocalExtClass, eta2: LocalExtClass, h: HomEvaluationModel) -> tuple[Fraction, ...]:
    """Values of μ(η, η') on the basis of the Hom model: α ↦ Σ_x ⟨α(x) ψ'_x, φ_x⟩."""
    if len(eta.phi) != h.n_points or len(eta2.psi) != h.n_points:
        raise ShapeMismatch("classes and Hom model disagree on |Z|")
    if any(len(f) != h.rG for f in eta.phi) or any(len(p) != h.rF for p in eta2.psi):
        raise ShapeMismatch("classes and Hom model disagree on ranks")
    return _bilinear(eta.phi, eta2.psi, h)


def _require_hypotheses(e: GenericWideExtension, h: HomEvaluationModel):
    if e.g != 0:
        raise HypothesesNotMet("H^0(ω_X) must vanish (g = 0)")
    if not h.surjective:
        raise HypothesesNotMet("evaluation of the Hom model at Z is not surjective")


def mu_vanishes(e: GenericWideExtension, eta: LocalExtClass, eta2: LocalExtClass,
                h: HomEvaluationModel) -> bool:
    _check_model(e, h)
    eta.check_shape(e)
    eta2.check_shape(e)
    _require_hypotheses(e, h)
    return not any(mu_pair(eta, eta2, h))


def supports_disjoint(eta: LocalExtClass, eta2: LocalExtClass) -> bool:
    return not (supports(eta)[0] & supports(eta2)[1])


def ker_omega2_dim(e: GenericWideExtension, h: HomEvaluationModel) -> int:
    """dim of {α in the model : α(x) = 0 for all x ∈ Z}."""
    _check_model(e, h)
    return h.dim - rank(h.evaluation_rows(), h.target_dim)


@dataclass(frozen=True)
class FormalModulePresentation:
    """Degree <= 2 presentation of the formal module, R/J with J ⊇ m_R^3.

    Variables per point x: ``rho[x][0..s]`` and ``pi[x][1..r]``; ``pi_{x,0}``
    is not a variable, it equals ``-rho_{x,0}``. Relations are monomials
    given as pairs of variable names (generators of J up to sign).
    """
    variables: tuple[str, ...]
    relations: tuple[tuple[str, str], ...]
    rho_basis: tuple[tuple[Vector, ...], ...]
    pi_basis: tuple[tuple[Vector, ...], ...]

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    def degree2_dim(self) -> int:
        v = self.n_vars
        return v * (v + 1) // 2 - len(set(frozenset(r) if r[0] != r[1] else (r[0],) for r in self.relations))


def _rho_name(x: str, i: int) -> str:
    return f"rho[{x},{i}]"


def _pi_name(x: str, j: int) -> str:
    return f"pi[{x},{j}]"


def formal_module(e: GenericWideExtension, extra_vars: int = 0,
                  h: Optional[HomEvaluationModel] = None) -> FormalModulePresentation:
    """Variables and quadratic relations of A/m_A^3.

    When a Hom model is supplied the hypotheses (g = 0, surjective
    evaluation) are checked; without one only g = 0 is checked.
    """
    if e.g != 0:
        raise HypothesesNotMet("H^0(ω_X) must vanish (g = 0)")
    if h is not None:
        _check_model(e, h)
        _require_hypotheses(e, h)
    names = [f"u{k + 1}" for k in range(extra_vars)]
    relations = []
    rho_bases, pi_bases = [], []
    for idx, x in enumerate(e.points):
        rb = complete_basis(e.rho[idx])
        pb = complete_basis(e.pi[idx])
        rho_bases.append(tuple(tuple(v) for v in rb))
        pi_bases.append(tuple(tuple(v) for v in pb))
        names += [_rho_name(x, i) for i in range(e.rG)]
        names += [_pi_name(x, j) for j in range(1, e.rF)]
        for i in range(e.rG):
            for j in range(e.rF):
                if j == 0:
                    # π_{x,0} = -ρ_{x,0}
                    relations.append((_rho_name(x, i), _rho_name(x, 0)))
                else:
                    relations.append((_rho_name(x, i), _pi_name(x, j)))
    return FormalModulePresentation(tuple(names), tuple(relations),
                                    tuple(rho_bases), tuple(pi_bases))


def _sym_form(n: int, l1: Sequence[Fraction], l2: Sequence[Fraction]) -> list[list[Fraction]]:
    """Symmetric matrix of the quadratic form v ↦ l1(v) l2(v)."""
    return [[(l1[a] * l2[b] + l2[a] * l1[b]) / 2 for b in range(n)] for a in range(n)]


def _restrict(form: list[list[Fraction]], basis: Sequence[Vector]) -> list[Fraction]:
    """Upper triangle of Bᵗ Q B, as a flat vector."""
    m = len(basis)
    qb = [[sum((form[a][c] * basis[j][c] for c in range(len(form)) if basis[j][c]), Fraction(0))
           for j in range(m)] for a in range(len(form))]
    out = []
    for i in range(m):
        for j in range(i, m):
            out.append(sum((basis[i][a] * qb[a][j] for a in range(len(form)) if basis[i][a]),
                           Fraction(0)))
    return out


def relation_forms(e: GenericWideExtension, fm: FormalModulePresentation) -> list[list[list[Fraction]]]:
    """The relations of ``fm`` as quadratic forms on the ambient local space."""
    n = e.ambient_dim
    forms = []
    for idx in range(e.n_points):
        rho_fun = []
        for vec in fm.rho_basis[idx]:
            lf = [Fraction(0)] * n
            lf[e.phi_slice(idx)] = vec
            rho_fun.append(lf)
        pi_fun = []
        for vec in fm.pi_basis[idx]:
            lf = [Fraction(0)] * n
            lf[e.psi_slice(idx)] = vec
            pi_fun.append(lf)
        for i in range(e.rG):
            for j in range(e.rF):
                forms.append(_sym_form(n, rho_fun[i], pi_fun[j]))
    return forms


def mu_forms(e: GenericWideExtension, h: HomEvaluationModel) -> list[list[list[Fraction]]]:
    """Symmetrised μ for each basis α: v ↦ Σ_x ⟨α(x) ψ_x, φ_x⟩ as a quadratic form."""
    n = e.ambient_dim
    forms = []
    for elem in h.basis:
        q = [[Fraction(0)] * n for _ in range(n)]
        for i, m in enumerate(elem):
            ph, ps = e.phi_slice(i), e.psi_slice(i)
            for a in range(e.rG):
                for b in range(e.rF):
                    if m[a][b]:
                        r, c = ph.start + a, ps.start + b
                        q[r][c] += m[a][b] / 2
                        q[c][r] += m[a][b] / 2
        forms.append(q)
    return forms


def symmetrized_mu_matches_relations(e: GenericWideExtension, h: HomEvaluationModel) -> bool:
    """Do the relations of the formal module and the symmetrised μ forms
    span the same space of quadratic forms on W(π, ρ)?"""
    _check_model(e, h)
    _require_hypotheses(e, h)
    fm = formal_module(e)
    W = delta_image(e).basis
    rel = [_restrict(q, W) for q in relation_forms(e, fm)]
    mus = [_restrict(q, W) for q in mu_forms(e, h)]
    m = len(W)
    return span_equal(rel, mus, m * (m + 1) // 2)


def span_dims(e: GenericWideExtension, h: HomEvaluationModel) -> tuple[int, int]:
    """(dim of relation span, dim of symmetrised-μ span) on W."""
    fm = formal_module(e)
    W = delta_image(e).basis
    m = len(W)
    ncols = m * (m + 1) // 2
    rel = [_restrict(q, W) for q in relation_forms(e, fm)]
    mus = [_restrict(q, W) for q in mu_forms(e, h)]
    return rank(rel, ncols), rank(mus, ncols)


def act(e: GenericWideExtension, lam: Sequence[Sequence[Sequence]], eta: LocalExtClass
        ) -> tuple[Vector, Vector]:
    """Action of λ ∈ Hom(F**, G*) on η, in the two quotients.

    ``lam[i]`` is the rG x rF matrix λ_x. Returns canonical representatives of
    (φ_x ∘ λ_x)_x modulo ⟨(π_x)⟩ and (λ_x ψ_x)_x modulo ⟨(ρ_x)⟩.
    """
    eta.check_shape(e)
    if len(lam) != e.n_points or any(len(m) != e.rG or any(len(r) != e.rF for r in m) for m in lam):
        raise ShapeMismatch("λ needs an rG x rF matrix per point")
    left: list[Fraction] = []
    right: list[Fraction] = []
    for i, m in enumerate(lam):
        f, p = eta.phi[i], eta.psi[i]
        left.extend(sum((f[a] * Fraction(m[a][b]) for a in range(e.rG)), Fraction(0))
                    for b in range(e.rF))
        right.extend(dot(m[a], p) for a in range(e.rG))
    pi_all = [a for v in e.pi for a in v]
    rho_all = [a for v in e.rho for a in v]
    return tuple(reduce_mod_line(left, pi_all)), tuple(reduce_mod_line(right, rho_all))


# -- file format ------------------------------------------------------------

def parse_extension_file(text: str) -> tuple[GenericWideExtension, LocalExtClass, LocalExtClass]:
    """Parse ``points=k rF=.. rG=.. g=..`` followed by per-point blocks.

    Each point block has ``pi:`` and ``rho:`` lines, optionally ``phi:``,
    ``psi:``, ``phi2:``, ``psi2:`` for two Ext^1 classes (zero when absent).
    A new block starts at each ``pi:`` line. After the blocks come g lines
    of section values, one value per point.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty extension file")
    header = {}
    for tok in lines[0].split():
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}")
        k, v = tok.split("=", 1)
        header[k] = v
    try:
        k, rF, rG, g = (int(header[key]) for key in ("points", "rF", "rG", "g"))
    except (KeyError, ValueError) as exc:
        raise ParseError("header needs integer points=, rF=, rG=, g=") from exc
    blocks: list[dict[str, Vector]] = []
    rest = lines[1:]
    pos = 0
    while pos < len(rest) and len(blocks) <= k:
        line = rest[pos]
        if ":" not in line:
            break
        key, vals = line.split(":", 1)
        key = key.strip()
        try:
            vec = tuple(Fraction(v) for v in vals.split())
        except ValueError as exc:
            raise ParseError(f"bad numbers in {line!r}") from exc
        if key == "pi":
            blocks.append({})
        elif not blocks:
            raise ParseError("each point block must start with 'pi:'")
        if key not in ("pi", "rho", "phi", "psi", "phi2", "psi2"):
            raise ParseError(f"unknown key {key!r}")
        blocks[-1][key] = vec
        pos += 1
    if len(blocks) != k:
        raise ParseError(f"expected {k} point blocks, found {len(blocks)}")
    sections = []
    for line in rest[pos:]:
        try:
            sections.append(tuple(Fraction(v) for v in line.split()))
        except ValueError as exc:
            raise ParseError(f"bad section line {line!r}") from exc
    if len(sections) != g:
        raise ParseError(f"expected {g} section lines, found {len(sections)}")
    for b in blocks:
        if "rho" not in b:
            raise ParseError("each point block needs a 'rho:' line")
    points = tuple(f"x{i + 1}" for i in range(k))
    e = GenericWideExtension(points, rF, rG, tuple(b["pi"] for b in blocks),
                             tuple(b["rho"] for b in blocks), tuple(sections))

    def cls(kphi, kpsi):
        return LocalExtClass(tuple(b.get(kphi, (0,) * rG) for b in blocks),
                             tuple(b.get(kpsi, (0,) * rF) for b in blocks))

    eta, eta2 = cls("phi", "psi"), cls("phi2", "psi2")
    eta.check_shape(e)
    eta2.check_shape(e)
    return e, eta, eta2
