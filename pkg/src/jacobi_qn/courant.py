"""Courant-Jacobi doubles ``A ⊕ A*``, generalized complex structures and their deformations.

A :class:`CjStructure` is a bracket, an anchor into first-order operators and
a pairing on ``A ⊕ A*``, all given as evaluators on :class:`GenSection`.
Nothing is assumed about them: :func:`verify_courant_jacobi` checks the
axioms on frame sections, frame sections with monomial coefficients and
random polynomial sections.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, List, Optional, Tuple

from .algebroid import FirstOrderOp, JacobiAlgebroid, LieAlgebroid, derivation_defect
from .nijenhuis import (
    QuadrupleCandidate,
    bracket_n,
    bracket_pi,
    deformed_algebroid,
    dual_algebroid,
    flat,
    musical_defect,
    sharp,
    verify_jacobi_bivector,
    verify_quadruple,
)
from .report import FAIL, PASS, Check, Report, Violation
from .sampling import monomials, random_poly
from .symalg import EndoTensor, KVector, PolyFn, contract, insert, poly_sum
from .symalg.matrix import det

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GenSection:
    """``X + ξ``: a host section and a host coform."""

    vec: KVector
    form: KVector

    def __post_init__(self):
        if self.vec.degree != 1 or self.form.degree != 1:
            raise ValueError("generalized sections have degree-1 components")
        if self.vec.rank != self.form.rank or self.vec.vars != self.form.vars:
            raise ValueError("component ranks do not match")
        if self.vec.variance == self.form.variance:
            raise ValueError("components must have opposite variances")

    def __add__(self, other: "GenSection") -> "GenSection":
        return GenSection(self.vec + other.vec, self.form + other.form)

    def __sub__(self, other: "GenSection") -> "GenSection":
        return GenSection(self.vec - other.vec, self.form - other.form)

    def __neg__(self) -> "GenSection":
        return GenSection(-self.vec, -self.form)

    def scale(self, f) -> "GenSection":
        return GenSection(self.vec.scale(f), self.form.scale(f))

    def is_zero(self) -> bool:
        return not self.vec and not self.form

    def __bool__(self) -> bool:
        return not self.is_zero()

    def format(self, labels=None, form_labels=None) -> str:
        parts = [p for p in (self.vec.format(labels) if self.vec else "",
                             self.form.format(form_labels) if self.form else "") if p]
        return " + ".join(parts) if parts else "0"

    __str__ = format


def gen(host, vec: Optional[KVector] = None, form: Optional[KVector] = None) -> GenSection:
    A = host.algebroid if isinstance(host, JacobiAlgebroid) else host
    return GenSection(vec if vec is not None else A.zero(1),
                      form if form is not None else A.zero(1, A.form_variance))


def canonical_pairing(u: GenSection, v: GenSection) -> PolyFn:
    """``⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))``."""
    return (contract(u.vec, v.form).as_function() + contract(v.vec, u.form).as_function()) * HALF


class CjStructure:
    """Pairing, bracket and anchor on ``A ⊕ A*`` over a host Jacobi algebroid."""

    def __init__(self, host: JacobiAlgebroid, bracket: Callable, anchor: Callable,
                 pairing: Callable = canonical_pairing, name: str = "double"):
        self.host = host
        self._bracket = bracket
        self._anchor = anchor
        self._pairing = pairing
        self.name = name

    def bracket(self, u: GenSection, v: GenSection) -> GenSection:
        return self._bracket(u, v)

    def anchor(self, u: GenSection) -> FirstOrderOp:
        return self._anchor(u)

    def pairing(self, u: GenSection, v: GenSection) -> PolyFn:
        return self._pairing(u, v)

    def frame(self) -> List[Tuple[str, GenSection]]:
        A = self.host.algebroid
        out = [(A.labels[i], gen(A, vec=A.frame(i))) for i in range(A.rank)]
        out += [(A.form_labels[i], gen(A, form=A.coframe(i))) for i in range(A.rank)]
        return out

    def fmt(self, u: GenSection) -> str:
        A = self.host.algebroid
        return u.format(A.labels, A.form_labels)

    def with_bracket(self, bracket: Callable, name: str) -> "CjStructure":
        return CjStructure(self.host, bracket, self._anchor, self._pairing, name)

    def with_pairing(self, pairing: Callable, name: str) -> "CjStructure":
        return CjStructure(self.host, self._bracket, self._anchor, pairing, name)


def canonical_double(J: JacobiAlgebroid, check: bool = False) -> CjStructure:
    """``⟦X+ξ,Y+η⟧ = [X,Y] + ℒ_Xη - ℒ_Yξ + d^{φ0}(ξ(Y))`` with anchor ``ρ(X)``."""
    if check:
        from .algebroid import verify_cocycle, verify_lie_algebroid
        if not (verify_lie_algebroid(J.algebroid).passed and verify_cocycle(J).passed):
            raise ValueError("host is not a valid Jacobi algebroid")

    def bracket(u: GenSection, v: GenSection) -> GenSection:
        vec = J.bracket(u.vec, v.vec)
        form = (J.lie_derivative(u.vec, v.form) - J.lie_derivative(v.vec, u.form)
                + J.differential(contract(v.vec, u.form)))
        return GenSection(vec, form)

    def anchor(u: GenSection) -> FirstOrderOp:
        return J.rho(u.vec)

    return CjStructure(J, bracket, anchor, canonical_pairing, "canonical double")


# -- test sections ---------------------------------------------------------

@dataclass
class SectionSampler:
    """Deterministic supply of test sections for identity checks."""

    degree: int = 2
    samples: int = 3
    seed: int = 0
    budget: int = 600

    def frame_tuples(self, S: CjStructure, arity: int) -> List[Tuple[Tuple[str, ...], Tuple[GenSection, ...]]]:
        frame = S.frame()
        rng = random.Random(self.seed)
        tuples = list(product(range(len(frame)), repeat=arity))
        if len(tuples) > self.budget:
            tuples = sorted(rng.sample(tuples, self.budget))
        out = [(tuple(frame[i][0] for i in t), tuple(frame[i][1] for i in t)) for t in tuples]
        monos = [mu for mu in monomials(S.host.vars, self.degree) if not mu.is_constant()]
        if monos:
            extra = []
            for t in product(range(len(frame)), repeat=arity):
                for slot in range(arity):
                    extra.append((t, slot))
            take = min(len(extra), self.budget)
            for t, slot in sorted(rng.sample(extra, take)):
                mu = monos[rng.randrange(len(monos))]
                labels = [frame[i][0] for i in t]
                secs = [frame[i][1] for i in t]
                labels[slot] = f"({mu})*{labels[slot]}"
                secs[slot] = secs[slot].scale(mu)
                out.append((tuple(labels), tuple(secs)))
        for k in range(self.samples):
            secs = tuple(random_gen_section(rng, S.host, min(self.degree, 2)) for _ in range(arity))
            out.append((tuple(f"random[{k}].{s}" for s in range(arity)), secs))
        return out

    def detail(self) -> str:
        return f"frame sections, monomial coefficients up to degree {self.degree}, {self.samples} random tuples"


def random_gen_section(rng: random.Random, host: JacobiAlgebroid, degree: int = 2) -> GenSection:
    A = host.algebroid
    vec = A.section([random_poly(rng, A.vars, degree, 2) if rng.random() < 0.7 else 0 for _ in range(A.rank)])
    form = KVector.from_components(A.vars, A.rank, A.form_variance,
                                   [random_poly(rng, A.vars, degree, 2) if rng.random() < 0.7 else 0
                                    for _ in range(A.rank)])
    return GenSection(vec, form)


# -- axioms ------------------------------------------------------------------

def verify_courant_jacobi(S: CjStructure, sampler: Optional[SectionSampler] = None) -> Report:
    sampler = sampler or SectionSampler()
    rep = Report(f"Courant-Jacobi axioms ({S.name})")
    frame = S.frame()
    n = len(frame)

    gram = [[S.pairing(frame[i][1], frame[j][1]) for j in range(n)] for i in range(n)]
    bad = [Violation((frame[i][0], frame[j][0]), str(gram[i][j] - gram[j][i]))
           for i in range(n) for j in range(i + 1, n) if gram[i][j] != gram[j][i]]
    rep.add("pairing symmetric", bad)
    g = det(gram)
    rep.add("pairing nondegenerate", [] if g else [Violation(("det",), str(g), g)],
            detail=f"det of the Gram matrix = {g}")

    triples = sampler.frame_tuples(S, 3)
    pairs = sampler.frame_tuples(S, 2)
    br = S.bracket
    pr = S.pairing

    bad = []
    for labels, (u, v, w) in triples:
        res = br(u, br(v, w)) - br(br(u, v), w) - br(v, br(u, w))
        if res:
            bad.append(Violation(labels, S.fmt(res), res))
    rep.add("Leibniz identity", bad, detail=f"{len(triples)} triples: {sampler.detail()}")

    bad = []
    for labels, (v, u1, u2) in triples:
        # polarization of <v o u, u> = <v, u o u>
        res = (pr(br(v, u1), u2) + pr(br(v, u2), u1) - pr(v, br(u1, u2)) - pr(v, br(u2, u1)))
        if res:
            bad.append(Violation(labels, str(res), res))
    rep.add("(a) <v o u, u> = <v, u o u>", bad, detail="polarized")

    bad = []
    for labels, (x, y1, y2) in triples:
        res = S.anchor(x)(pr(y1, y2) * 2) - (pr(br(x, y1), y2) + pr(br(x, y2), y1)) * 2
        if res:
            bad.append(Violation(labels, str(res), res))
    rep.add("(b) kappa(x)<y, y> = 2<x o y, y>", bad, detail="polarized")

    bad = []
    for labels, (u, v) in pairs:
        res = S.anchor(br(u, v)) - S.anchor(u).commutator(S.anchor(v))
        if not res.is_zero():
            bad.append(Violation(labels, res.format(), res))
    rep.add("kappa homomorphism", bad, detail="vector and scalar parts")
    return rep


# -- generalized complex structures -------------------------------------------

@dataclass
class GcsMap:
    """``𝒥 = [[N, π^♯], [σ_♭, -N*]]`` acting by ``X+ξ ↦ (NX + π^♯ξ) + (σ_♭X - N*ξ)``."""

    N: EndoTensor
    pi: KVector
    sigma: KVector

    def __call__(self, u: GenSection) -> GenSection:
        return GenSection(self.N(u.vec) + sharp(self.pi, u.form),
                          flat(self.sigma, u.vec) - self.N.transpose()(u.form))

    def block_defects(self) -> dict:
        """Frame entries of the three block conditions that fail."""
        N, pi, sigma = self.N, self.pi, self.sigma
        r = N.rank
        vars = N.vars
        out = {}
        md = musical_defect(pi, N)
        if md:
            out["N pi# = pi# N*"] = md
        sq = {}
        for j in range(r):
            e = KVector.basis(vars, r, (j,), N.variance)
            img = N(N(e)) + sharp(pi, flat(sigma, e)) + e
            for (i,), c in img.terms.items():
                sq[(i, j)] = c
        if sq:
            out["N^2 + pi# sigma_flat = -Id"] = sq
        ns = {}
        Ns = N.transpose()
        for j in range(r):
            e = KVector.basis(vars, r, (j,), N.variance)
            img = Ns(flat(sigma, e)) - flat(sigma, N(e))
            for (i,), c in img.terms.items():
                ns[(i, j)] = c
        if ns:
            out["N* sigma_flat = sigma_flat N"] = ns
        return out


def verify_gcs(S: CjStructure, Jm: GcsMap, sampler: Optional[SectionSampler] = None,
               induced_check: bool = True) -> Report:
    """Algebraic conditions and integrability of ``𝒥``; assumes ``S`` passed :func:`verify_courant_jacobi`."""
    sampler = sampler or SectionSampler()
    rep = Report("generalized complex structure")
    frame = S.frame()
    bad = []
    for label, u in frame:
        res = Jm(Jm(u)) + u
        if res:
            bad.append(Violation((label,), S.fmt(res), res))
    rep.add("J^2 = -Id", bad)
    bad = []
    for a in range(len(frame)):
        for b in range(a, len(frame)):
            (la, u), (lb, v) = frame[a], frame[b]
            res = S.pairing(Jm(u), Jm(v)) - S.pairing(u, v)
            if res:
                bad.append(Violation((la, lb), str(res), res))
    rep.add("<Ju, Jv> = <u, v>", bad)
    bad = []
    br = S.bracket
    pairs = sampler.frame_tuples(S, 2)
    for labels, (u, v) in pairs:
        Ju, Jv = Jm(u), Jm(v)
        res = br(Ju, Jv) - br(u, v) - Jm(br(Ju, v) + br(u, Jv))
        if res:
            bad.append(Violation(labels, S.fmt(res), res))
    rep.add("integrability", bad, detail=f"{len(pairs)} pairs: {sampler.detail()}")
    if induced_check:
        if rep.passed:
            sub = verify_jacobi_bivector(S.host, Jm.pi)
            rep.add("induced pi is a Jacobi bivector", children=[sub])
        else:
            rep.skip("induced pi is a Jacobi bivector", "J is not a generalized complex structure")
    return rep


# -- deformation ----------------------------------------------------------------

@dataclass
class Deformed:
    structure: CjStructure
    J: GcsMap
    base: CjStructure

    def component_formulas(self, u: GenSection, v: GenSection) -> GenSection:
        """The four closed-form components of ``⟦u,v⟧_𝒥``, evaluated independently."""
        host = self.base.host
        N, pi, sigma = self.J.N, self.J.pi, self.J.sigma
        Ns = N.transpose()
        L = host.lie_derivative
        X, xi, Y, eta = u.vec, u.form, v.vec, v.form
        vec = bracket_n(host, N, X, Y)
        form = insert(host.differential(sigma), X, Y)
        form = form + bracket_pi(host, pi, xi, eta)
        # [X, eta]_J
        vec = vec + host.bracket(X, sharp(pi, eta)) - sharp(pi, L(X, eta))
        form = form + L(N(X), eta) - L(X, Ns(eta)) + Ns(L(X, eta))
        # [xi, Y]_J = -[Y, xi]_J - J d(xi(Y))
        vec = vec - (host.bracket(Y, sharp(pi, xi)) - sharp(pi, L(Y, xi)))
        form = form - (L(N(Y), xi) - L(Y, Ns(xi)) + Ns(L(Y, xi)))
        corr = self.J(gen(host, form=host.differential(contract(Y, xi))))
        return GenSection(vec, form) - corr


def deform(S: CjStructure, Jm: GcsMap, strict: bool = True) -> Deformed:
    """``⟨u,v⟩_𝒥 = ⟨𝒥u,𝒥v⟩``, ``⟦u,v⟧_𝒥 = ⟦𝒥u,v⟧ + ⟦u,𝒥v⟧ - 𝒥⟦u,v⟧``, ``κ_𝒥 = κ∘𝒥``."""
    if strict:
        defects = Jm.block_defects()
        if defects:
            raise ValueError("J fails the algebraic block conditions: " + ", ".join(defects))

    def bracket(u, v):
        return S.bracket(Jm(u), v) + S.bracket(u, Jm(v)) - Jm(S.bracket(u, v))

    def anchor(u):
        return S.anchor(Jm(u))

    def pairing(u, v):
        return S.pairing(Jm(u), Jm(v))

    return Deformed(CjStructure(S.host, bracket, anchor, pairing, f"J-deformation of {S.name}"), Jm, S)


def verify_deformation_formulas(D: Deformed, sampler: Optional[SectionSampler] = None) -> Report:
    sampler = sampler or SectionSampler()
    S = D.structure
    rep = Report("J-deformed bracket components")
    bad = []
    pairs = sampler.frame_tuples(S, 2)
    for labels, (u, v) in pairs:
        res = S.bracket(u, v) - D.component_formulas(u, v)
        if res:
            bad.append(Violation(labels, S.fmt(res), res))
    rep.add("direct deformation = component formulas", bad, detail=f"{len(pairs)} pairs")
    return rep


# -- quasi-Jacobi bialgebroids ----------------------------------------------------

@dataclass
class DualStructure:
    """``((A,ρ), δ, φ)``: ``δ`` is the differential of ``(A*, [·,·]_*, ρ_*)``.

    ``dual`` is a Lie algebroid (not required to satisfy Jacobi) whose
    sections are the host's coforms; ``dual_scalar[i]`` is the scalar part
    of ``ρ_*(e^i)``.  ``phi`` is a host 3-vector.
    """

    host: JacobiAlgebroid
    dual: LieAlgebroid
    dual_scalar: Tuple[PolyFn, ...]
    phi: KVector

    def __post_init__(self):
        A = self.host.algebroid
        if self.dual.variance != A.form_variance or self.dual.rank != A.rank or self.dual.vars != A.vars:
            raise ValueError("dual algebroid must live on the host's dual bundle")
        self.dual_scalar = tuple(self.dual_scalar)
        A._check_section(self.phi, 3)

    @classmethod
    def trivial(cls, J: JacobiAlgebroid) -> "DualStructure":
        A = J.algebroid
        D = LieAlgebroid.abelian(A.vars, A.rank, A.form_variance)
        D.labels, D.form_labels = A.form_labels, A.labels
        return cls(J, D, tuple(PolyFn.zero(A.vars) for _ in range(A.rank)), A.zero(3))

    @classmethod
    def from_jacobi_bivector(cls, J: JacobiAlgebroid, pi: KVector, phi: Optional[KVector] = None) -> "DualStructure":
        """``(A*, ⟦·,·⟧_π, ρ∘π^♯)`` as the dual side."""
        D = dual_algebroid(J, pi)
        return cls(J, D.algebroid, tuple(D.cocycle.components()), phi if phi is not None else J.zero(3))

    @classmethod
    def from_derivation(cls, J: JacobiAlgebroid, delta: Callable[[KVector], KVector], phi: KVector) -> "DualStructure":
        """Recover ``ρ_*`` and ``[·,·]_*`` from ``δ`` on functions and sections.

        ``ρ_*(ξ)f = ξ(δf)``, and
        ``[ξ,η]_*(X) = ρ_*(ξ)(η(X)) - ρ_*(η)(ξ(X)) - δ(X)(ξ,η)``.
        """
        A = J.algebroid
        r, vars = A.rank, A.vars
        mv = A.variance
        one = KVector.function(PolyFn.const(vars, 1), r, mv)
        d1 = delta(one)
        scalar = tuple(d1[(i,)] for i in range(r))
        xs = [KVector.function(PolyFn.var(vars, v), r, mv) for v in vars]
        dx = [delta(x) for x in xs]
        anchor = [[dx[l][(i,)] - scalar[i] * PolyFn.var(vars, l) for l in range(len(vars))] for i in range(r)]
        dframe = [delta(A.frame(k)) for k in range(r)]
        structure = [[[-dframe[k][(i, j)] for k in range(r)] for j in range(r)] for i in range(r)]
        D = LieAlgebroid(vars, anchor, structure, A.form_variance, A.form_labels, A.labels)
        return cls(J, D, scalar, phi)

    def delta(self, P: KVector) -> KVector:
        return self.dual.differential(P, self.dual_scalar)

    def rho_star(self, xi: KVector) -> FirstOrderOp:
        vec = self.dual.anchor_vector(xi)
        scalar = poly_sum((c * self.dual_scalar[i] for (i,), c in xi.terms.items()), self.host.vars)
        return FirstOrderOp(self.host.vars, vec, scalar)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualStructure):
            return NotImplemented
        a, b = self.host.algebroid, other.host.algebroid
        return (a.anchor == b.anchor and a.structure == b.structure and a.variance == b.variance
                and self.host.cocycle == other.host.cocycle
                and self.dual.anchor == other.dual.anchor and self.dual.structure == other.dual.structure
                and self.dual_scalar == other.dual_scalar and self.phi == other.phi)

    def differences(self, other: "DualStructure") -> List[str]:
        out = []
        a, b = self.host.algebroid, other.host.algebroid
        for name, x, y in [("host anchor", a.anchor, b.anchor), ("host structure", a.structure, b.structure),
                           ("host cocycle", self.host.cocycle, other.host.cocycle),
                           ("dual anchor", self.dual.anchor, other.dual.anchor),
                           ("dual structure", self.dual.structure, other.dual.structure),
                           ("dual scalar", self.dual_scalar, other.dual_scalar), ("phi", self.phi, other.phi)]:
            if x != y:
                out.append(name)
        return out


READINGS = ("host", "plain")


def build_double(D: DualStructure, reading: str = "host") -> CjStructure:
    """The double of a quasi-Jacobi bialgebroid.

    ``reading`` selects the differential in the ``i_X d ξ`` term of the mixed
    bracket: ``"host"`` uses ``d^{φ0}``, ``"plain"`` the undeformed Lie
    algebroid differential.
    """
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    J = D.host
    A = J.algebroid
    d_mixed = J.differential if reading == "host" else J.lie_differential
    dual = D.dual

    def mixed(X: KVector, xi: KVector) -> GenSection:
        # [[X, xi]] = i_X d xi - i_xi delta(X) + d(xi(X))
        f = contract(X, xi).as_function()
        form = contract(X, d_mixed(xi)) + J.differential(J.function(f))
        vec = -contract(xi, D.delta(X))
        return GenSection(vec, form)

    def mixed_rev(xi: KVector, X: KVector) -> GenSection:
        # [[xi, X]] = -i_X d xi + i_xi delta(X) + delta(xi(X))
        f = contract(X, xi).as_function()
        form = -contract(X, d_mixed(xi))
        vec = contract(xi, D.delta(X)) + D.delta(KVector.function(f, A.rank, A.variance))
        return GenSection(vec, form)

    def bracket(u: GenSection, v: GenSection) -> GenSection:
        out = GenSection(A.bracket(u.vec, v.vec), dual.bracket(u.form, v.form))
        out = out + GenSection(insert(D.phi, u.form, v.form), A.zero(1, A.form_variance))
        if u.vec and v.form:
            out = out + mixed(u.vec, v.form)
        if u.form and v.vec:
            out = out + mixed_rev(u.form, v.vec)
        return out

    def anchor(u: GenSection) -> FirstOrderOp:
        return J.rho(u.vec) + D.rho_star(u.form)

    return CjStructure(J, bracket, anchor, canonical_pairing, f"double ({reading} reading)")


def verify_dirac(S: CjStructure, summand: str = "first") -> Report:
    """``⟨A,A⟩ = 0`` and ``⟦Γ(A),Γ(A)⟧ ⊆ Γ(A)`` for one summand of the splitting."""
    rep = Report(f"Dirac structure ({summand} summand)")
    frame = S.frame()
    r = S.host.rank
    part = frame[:r] if summand == "first" else frame[r:]
    bad = [Violation((la, lb), str(S.pairing(u, v))) for la, u in part for lb, v in part if S.pairing(u, v)]
    rep.add("isotropic", bad)
    bad = []
    for la, u in part:
        for lb, v in part:
            w = S.bracket(u, v)
            leak = w.form if summand == "first" else w.vec
            if leak:
                bad.append(Violation((la, lb), leak.format(), leak))
    rep.add("closed under the bracket", bad, detail="frame pairs")
    return rep


def extract_bialgebroid(S: CjStructure, dirac: str = "first") -> DualStructure:
    """Read off ``((A,ρ), δ, φ)`` from a double with Dirac summand ``dirac``.

    ``"first"`` takes ``A`` and complement ``A*``; ``"second"`` takes ``A*``
    as the Dirac structure and ``A`` as its complement.
    """
    if dirac not in ("first", "second"):
        raise ValueError("dirac must be 'first' or 'second'")
    H = S.host.algebroid
    r, vars = H.rank, H.vars
    first = dirac == "first"
    frame = S.frame()
    a_secs = [u for _, u in (frame[:r] if first else frame[r:])]
    b_secs = [u for _, u in (frame[r:] if first else frame[:r])]
    a_var = H.variance if first else H.form_variance
    b_var = H.form_variance if first else H.variance
    a_labels = H.labels if first else H.form_labels
    b_labels = H.form_labels if first else H.labels

    def a_part(u: GenSection) -> KVector:
        return u.vec if first else u.form

    def b_part(u: GenSection) -> KVector:
        return u.form if first else u.vec

    for i in range(r):
        for j in range(r):
            if S.pairing(b_secs[i], b_secs[j]):
                raise ValueError("complement is not isotropic")
    gram = [[S.pairing(a_secs[i], b_secs[j]) * 2 for j in range(r)] for i in range(r)]
    if any(gram[i][j] != (1 if i == j else 0) for i in range(r) for j in range(r)):
        raise ValueError("complement is not dual to the Dirac summand under the pairing")

    ops_a = [S.anchor(u) for u in a_secs]
    anchor_a = [list(op.vector) for op in ops_a]
    structure_a = [[a_part(S.bracket(a_secs[i], a_secs[j])).components() for j in range(r)] for i in range(r)]
    A = LieAlgebroid(vars, anchor_a, structure_a, a_var, a_labels, b_labels)
    cocycle = KVector.from_components(vars, r, b_var, [op.scalar for op in ops_a])
    host = JacobiAlgebroid(A, cocycle)

    ops_b = [S.anchor(u) for u in b_secs]
    brackets_b = [[S.bracket(b_secs[i], b_secs[j]) for j in range(r)] for i in range(r)]
    structure_b = [[b_part(brackets_b[i][j]).components() for j in range(r)] for i in range(r)]
    dual = LieAlgebroid(vars, [list(op.vector) for op in ops_b], structure_b, b_var, b_labels, a_labels)
    scalar = tuple(op.scalar for op in ops_b)
    terms = {}
    for i in range(r):
        for j in range(i + 1, r):
            a_comp = a_part(brackets_b[i][j])
            for k in range(j + 1, r):
                c = a_comp[(k,)]
                if c:
                    terms[(i, j, k)] = c
    phi = KVector(vars, r, 3, a_var, terms)
    return DualStructure(host, dual, scalar, phi)


def verify_quasi_bialgebroid(D: DualStructure, sampler: Optional[SectionSampler] = None) -> Report:
    """``δ`` a derivation of ``⟦·,·⟧``, ``δ² = ⟦φ,·⟧`` and ``δφ = 0``."""
    sampler = sampler or SectionSampler()
    J = D.host
    A = J.algebroid
    vars = A.vars
    rep = Report("quasi-Jacobi bialgebroid")
    br = J.schouten_jacobi
    rng = random.Random(sampler.seed)
    monos = monomials(vars, sampler.degree)
    funcs = [(str(mu), KVector.function(mu, A.rank, A.variance)) for mu in monos]
    secs = [(A.labels[i], A.frame(i)) for i in range(A.rank)]
    secs += [(f"({mu})*{A.labels[i]}", A.frame(i, mu)) for i in range(A.rank) for mu in monos
             if not mu.is_constant()][:sampler.budget]
    for k in range(sampler.samples):
        secs.append((f"random[{k}]", A.section([random_poly(rng, vars, min(sampler.degree, 2), 2)
                                                for _ in range(A.rank)])))

    bad = []
    pairs = [(f, s) for f in funcs[:6] for s in secs[:3 * A.rank]]
    pairs += [(s, f) for f in funcs[:6] for s in secs[:3 * A.rank]]
    pairs += [(s, t) for s in secs[:2 * A.rank] for t in secs[:2 * A.rank]]
    for (lp, P), (lq, Q) in pairs:
        res = derivation_defect(J, D.delta, P, Q)
        if res:
            bad.append(Violation((lp, lq), A.fmt(res), res))
    rep.add("delta derivation of [[.,.]]", bad, detail=f"{len(pairs)} pairs of degrees (0,1), (1,0), (1,1)")

    bad = []
    for label, P in funcs + secs:
        res = D.delta(D.delta(P)) - br(D.phi, P)
        if res:
            bad.append(Violation((label,), A.fmt(res), res))
    rep.add("delta^2 = [[phi, .]]", bad, detail="functions and sections")

    res = D.delta(D.phi)
    rep.add("delta phi = 0", [Violation(("phi",), A.fmt(res), res)] if res else [])
    return rep


# -- correspondence -----------------------------------------------------------------

def quasi_bialgebroid_of(J: JacobiAlgebroid, pi: KVector, N, phi: KVector) -> DualStructure:
    """``((A*, ρ∘π^♯), d_N, φ)``: host ``A*_π``, dual side ``(A, [·,·]_N, ρ∘N)``."""
    host = dual_algebroid(J, pi)
    B, scalar = deformed_algebroid(J, N)
    B.labels, B.form_labels = J.algebroid.labels, J.algebroid.form_labels
    return DualStructure(host, B, tuple(scalar), phi)


def correspondence_suite(Q: QuadrupleCandidate, sigma: KVector,
                         sampler: Optional[SectionSampler] = None) -> Report:
    """Quadruple, quasi-Jacobi bialgebroid and ``𝒥``-deformed double, with a coherence verdict."""
    sampler = sampler or SectionSampler(degree=1, samples=2, budget=150)
    J, pi, N, phi = Q.J, Q.pi, Q.N, Q.phi
    A = J.algebroid
    rep = Report("correspondence")

    quad = verify_quadruple(Q)

    bia = Report("quasi-Jacobi bialgebroid leg")
    Dst = quasi_bialgebroid_of(J, pi, N, phi)
    qb = verify_quasi_bialgebroid(Dst, sampler)
    host_ok = verify_jacobi_bivector(J, pi)
    bia.add("(A*, rho pi#) is a Jacobi algebroid", children=[host_ok])
    bia.add("quasi-Jacobi bialgebroid", children=[qb])
    dphi = J.differential(phi)
    bia.add("d phi = 0", [Violation(("phi",), A.fmt(dphi), dphi)] if dphi else [])

    dbl = Report("deformed double leg")
    res = phi - J.differential(sigma)
    dbl.add("phi = d sigma", [Violation(("phi",), A.fmt(res), res)] if res else [])
    Jm = GcsMap(N, pi, sigma)
    defects = Jm.block_defects()
    dbl.add("J has block form", [Violation((k,), f"{len(v)} nonzero entries") for k, v in defects.items()])
    if defects:
        dbl.skip("deformed double is Courant-Jacobi", "J is not of the block form")
    else:
        deformed = deform(canonical_double(J), Jm)
        dbl.add("deformed double is Courant-Jacobi", children=[verify_courant_jacobi(deformed.structure, sampler)])

    legs = [("Jacobi quasi-Nijenhuis", quad), ("quasi-Jacobi bialgebroid", bia), ("deformed double", dbl)]
    for name, leg in legs:
        rep.add(name, children=[leg])
    verdicts = {leg.passed for _, leg in legs}
    coherent = len(verdicts) == 1
    summary = "all legs pass" if verdicts == {True} else "all legs fail" if verdicts == {False} else "legs disagree"
    rep.coherent = coherent
    rep.all_pass = verdicts == {True}
    rep.checks.append(Check("coherence", PASS if coherent else FAIL, summary))
    return rep


__all__ = [
    "GenSection", "gen", "canonical_pairing", "CjStructure", "canonical_double", "SectionSampler",
    "random_gen_section", "verify_courant_jacobi", "GcsMap", "verify_gcs", "Deformed", "deform",
    "verify_deformation_formulas", "DualStructure", "build_double", "verify_dirac", "extract_bialgebroid",
    "verify_quasi_bialgebroid", "quasi_bialgebroid_of", "correspondence_suite", "READINGS",
]
