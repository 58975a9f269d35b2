"""Tangent-bundle Jacobi structures, the jet algebroid ``E¹(M)`` and contact-type verifiers.

``E¹(M) = (TM ⊕ R) ⊕ (T*M ⊕ R)`` is the canonical double of the Jacobi
algebroid ``TM ⊕ R`` with bracket ``[X+f, Y+g] = [X,Y] + Xg - Yf``, anchor
``X + f ↦ X`` and cocycle ``φ0 = (0, 1)``.  The extra frame element is
labelled ``d/dt`` and its dual ``dt``; coefficients never depend on ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebroid import JacobiAlgebroid, LieAlgebroid, coordinate_labels
from .courant import (
    CjStructure,
    GcsMap,
    GenSection,
    SectionSampler,
    canonical_double,
    verify_gcs,
)
from .nijenhuis import bracket_pi, flat, musical_defect, sharp, torsion
from .report import Report, Violation
from .symalg import FORM, MV, EndoTensor, KVector, PolyFn, contract, evaluate, wedge, wedge_all
from .symalg.matrix import constant_inverse, det

HALF = Fraction(1, 2)


def coordinates(m: int) -> Tuple[str, ...]:
    if m <= 3:
        return ("x", "y", "z")[:m]
    return tuple(f"x{i + 1}" for i in range(m))


def _vars(m_or_vars) -> Tuple[str, ...]:
    if isinstance(m_or_vars, int):
        return coordinates(m_or_vars)
    return tuple(m_or_vars)


def build_tangent(m_or_vars, phi0=None) -> JacobiAlgebroid:
    """``(TM, ρ)`` with ``ρ(X) = X + φ0(X)``; raises if ``φ0`` is not closed."""
    vars = _vars(m_or_vars)
    J = JacobiAlgebroid.tangent(vars, phi0)
    if J.algebroid.differential(J.cocycle):
        raise ValueError("phi0 is not closed")
    return J


def build_e1(m_or_vars) -> JacobiAlgebroid:
    """``TM ⊕ R`` over ``R^m`` with representation the identity inclusion."""
    vars = _vars(m_or_vars)
    m = len(vars)
    r = m + 1
    anchor = [[1 if i == l else 0 for l in range(m)] for i in range(m)] + [[0] * m]
    zero = [[[0] * r for _ in range(r)] for _ in range(r)]
    labels = coordinate_labels(vars, MV) + ["d/dt"]
    form_labels = coordinate_labels(vars, FORM) + ["dt"]
    A = LieAlgebroid(vars, anchor, zero, MV, labels, form_labels)
    return JacobiAlgebroid(A, A.coframe(m))


def lift_e1(E: JacobiAlgebroid, w: KVector) -> KVector:
    """A multivector or form on ``M`` viewed on ``TM ⊕ R`` (no ``t`` components)."""
    if w.rank != E.rank - 1:
        raise ValueError("rank mismatch for the TM + R lift")
    return KVector(w.vars, E.rank, w.degree, w.variance, dict(w.terms))


def _split_e1(w: KVector) -> Tuple[KVector, KVector]:
    """``w = a + dt∧b`` (or ``∂t∧b``) with ``a``, ``b`` free of the last index."""
    r = w.rank
    m = r - 1
    a, b = {}, {}
    for idx, c in w.terms.items():
        if m in idx:
            # idx is sorted, so the last slot is m; moving it to the front costs (-1)^(k-1)
            b[idx[:-1]] = c if (len(idx) - 1) % 2 == 0 else -c
        else:
            a[idx] = c
    return (KVector(w.vars, m, w.degree, w.variance, a),
            KVector(w.vars, m, w.degree - 1, w.variance, b))


# -- explicit bracket evaluators --------------------------------------------------

def tangent_bracket_explicit(T: JacobiAlgebroid, u: GenSection, v: GenSection) -> GenSection:
    """``[X,Y] + L_Xη - L_Yξ + d(ξ(Y)) + (i_Xφ0)η - i_Y(φ0∧ξ)`` with undeformed calculus."""
    A = T.algebroid
    phi0 = T.cocycle
    X, xi, Y, eta = u.vec, u.form, v.vec, v.form
    form = (A.lie_derivative(X, eta) - A.lie_derivative(Y, xi)
            + A.differential(A.function(contract(Y, xi).as_function()))
            + eta.scale(contract(X, phi0).as_function()) - contract(Y, wedge(phi0, xi)))
    return GenSection(A.bracket(X, Y), form)


class _E1Calculus:
    """``TM ⊕ R`` calculus in split components ``(ω, η) ↔ ω + dt∧η``, built on ``TM`` only.

    Functions are ``(h, None)``.
    """

    def __init__(self, vars: Sequence[str]):
        self.M = LieAlgebroid.tangent(vars)

    def d(self, w):
        # d(ω + dt∧η) = dω + dt∧(ω - dη); d h = dh + h dt
        om, et = w
        if et is None:
            return self.M.differential(om), om
        return self.M.differential(om), om - self.M.differential(et)

    def i(self, X: KVector, f: PolyFn, w):
        # i_{X+f∂t}(ω + dt∧η) = i_Xω + fη - dt∧i_Xη
        om, et = w
        if et.degree == 0:
            return contract(X, om) + et.scale(f), None
        return contract(X, om) + et.scale(f), -contract(X, et)

    def lie(self, X, f, w):
        a = self.i(X, f, self.d(w))
        b = self.d(self.i(X, f, w))
        return a[0] + b[0], a[1] + b[1]


def e1_bracket_explicit(E: JacobiAlgebroid, u: GenSection, v: GenSection) -> GenSection:
    """``([X1,X2], X1f2 - X2f1) + L̃_{(X1,f1)}(α2,g2) - i_{(X2,f2)} d̃(α1,g1)``."""
    cal = _E1Calculus(E.vars)
    M = cal.M
    (X1, f1), (X2, f2) = [_split_e1(s.vec) for s in (u, v)]
    mu1, mu2 = [_split_e1(s.form) for s in (u, v)]
    f1, f2 = f1.as_function(), f2.as_function()
    vec = M.bracket(X1, X2)
    fpart = M.anchor_apply(X1, f2) - M.anchor_apply(X2, f1)
    lie = cal.lie(X1, f1, mu2)
    ins = cal.i(X2, f2, cal.d(mu1))
    alpha = lie[0] - ins[0]
    g = (lie[1] - ins[1]).as_function()
    return GenSection(lift_e1(E, vec) + E.frame(E.rank - 1, fpart),
                      lift_e1(E, alpha) + E.coframe(E.rank - 1, g))


def e1_pairing(u: GenSection, v: GenSection) -> PolyFn:
    """``½(α2(X1) + α1(X2) + f1g2 + f2g1)`` in split components."""
    (X1, f1), (X2, f2) = [_split_e1(s.vec) for s in (u, v)]
    (a1, g1), (a2, g2) = [_split_e1(s.form) for s in (u, v)]
    f1, f2, g1, g2 = (k.as_function() for k in (f1, f2, g1, g2))
    return (contract(X1, a2).as_function() + contract(X2, a1).as_function() + f1 * g2 + f2 * g1) * HALF


def compare_brackets(S: CjStructure, explicit, sampler: Optional[SectionSampler] = None,
                     title: str = "bracket agreement") -> Report:
    sampler = sampler or SectionSampler(degree=1, samples=2)
    rep = Report(title)
    bad = []
    pairs = sampler.frame_tuples(S, 2)
    for labels, (u, v) in pairs:
        res = S.bracket(u, v) - explicit(S.host, u, v)
        if res:
            bad.append(Violation(labels, S.fmt(res), res))
    rep.add("canonical double = explicit formula", bad, detail=f"{len(pairs)} pairs")
    return rep


# -- nondegeneracy helpers ---------------------------------------------------------

def _points(sample_points, vars) -> List[Tuple[Fraction, ...]]:
    if sample_points is None:
        return [tuple(Fraction(0) for _ in vars)]
    pts = [tuple(Fraction(c) for c in p) for p in sample_points]
    if not pts:
        raise ValueError("empty sample set")
    for p in pts:
        if len(p) != len(vars):
            raise ValueError(f"sample point {p} does not match {len(vars)} coordinates")
    return pts


def flat_matrix(sigma: KVector) -> List[List[PolyFn]]:
    """``W[i][j]`` = ``i``-th component of ``σ_♭(e_j)``."""
    r = sigma.rank
    cols = [flat(sigma, KVector.basis(sigma.vars, r, (j,), MV if sigma.variance == FORM else FORM))
            for j in range(r)]
    return [[cols[j][(i,)] for j in range(r)] for i in range(r)]


def inverse_bivector(sigma: KVector) -> Optional[KVector]:
    """``π`` with ``π^♯ = -σ_♭^{-1}``, when ``det σ_♭`` is a nonzero constant."""
    W = flat_matrix(sigma)
    Winv = constant_inverse(W)
    if Winv is None:
        return None
    r = sigma.rank
    variance = MV if sigma.variance == FORM else FORM
    terms = {}
    for i in range(r):
        for j in range(i + 1, r):
            # π(e^i, e^j) = j-th component of π^♯(e^i) = -Winv[j][i]
            c = -Winv[j][i]
            if c:
                terms[(i, j)] = c
    return KVector(sigma.vars, r, 2, variance, terms)


def _nondegeneracy(rep: Report, name: str, value: PolyFn, points, vars):
    bad = [Violation(p, "0") for p in points if value.eval(p) == 0]
    where = "; ".join("(" + ", ".join(str(c) for c in p) + ")" for p in points)
    rep.add(name, bad, detail=f"value {value}, checked at {where}")


# -- conformal symplectic and the tangent-bundle cases ---------------------------------

def verify_conformal_symplectic(T: JacobiAlgebroid, omega: KVector, sample_points=None,
                                sampler: Optional[SectionSampler] = None) -> Report:
    """``d^{φ0}ω = dω + φ0∧ω = 0`` and ``ω`` nondegenerate, cross-checked against ``[[0,-ω⁻¹],[ω,0]]``."""
    A = T.algebroid
    if A.rank % 2:
        raise ValueError("conformal symplectic structures need even dimension")
    A._check_section(omega, 2, A.form_variance)
    pts = _points(sample_points, A.vars)
    rep = Report("conformal symplectic structure")
    res = T.differential(omega)
    rep.add("d omega + phi0^omega = 0", [Violation(("omega",), A.fmt(res), res)] if res else [])
    W = flat_matrix(omega)
    _nondegeneracy(rep, "omega nondegenerate", det(W), pts, A.vars)
    pi = inverse_bivector(omega)
    if pi is None:
        rep.skip("generalized complex structure agrees", "skipped: non-constant determinant")
        return rep
    Jm = GcsMap(EndoTensor.zero(A.vars, A.rank), pi, omega)
    sub = verify_gcs(canonical_double(T), Jm, sampler, induced_check=False)
    ok = sub.passed == rep.passed
    rep.add("generalized complex structure agrees",
            [] if ok else [Violation(("J",), f"GCS {sub.passed}, conditions {rep.passed}")],
            detail=f"[[0, -omega^-1], [omega, 0]] is {'' if sub.passed else 'not '}a GCS", children=[])
    rep.checks[-1].children.append(sub)
    return rep


def case2_residuals(T: JacobiAlgebroid, omega: KVector) -> Tuple[KVector, KVector]:
    """Intrinsic ``d^{φ0}ω`` and the explicit ``dω + φ0∧ω``."""
    A = T.algebroid
    return T.differential(omega), A.differential(omega) + wedge(T.cocycle, omega)


def case1_residuals(T: JacobiAlgebroid, N: EndoTensor, i: int, j: int) -> Tuple[KVector, KVector]:
    """``T(N)(e_i, e_j)`` from the algebroid bracket and from the coordinate formula.

    Explicitly ``T^k = N^l_i d_l N^k_j - N^l_j d_l N^k_i - N^k_l (d_i N^l_j - d_j N^l_i)``;
    the cocycle does not enter.
    """
    A = T.algebroid
    vars, r = A.vars, A.rank
    n = N.matrix
    d = [[[n[k][c].partial(v) for v in vars] for c in range(r)] for k in range(r)]
    comps = []
    for k in range(r):
        c = PolyFn.zero(vars)
        for l in range(r):
            c = c + n[l][i] * d[k][j][l] - n[l][j] * d[k][i][l] - n[k][l] * (d[l][j][i] - d[l][i][j])
        comps.append(c)
    return torsion(A, N)(A.frame(i), A.frame(j)), A.section(comps)


def _coform_samples(A, degree: int = 1):
    out = [(A.form_labels[i], A.coframe(i)) for i in range(A.rank)]
    for i in range(A.rank):
        for v in A.vars[:degree and len(A.vars)]:
            out.append((f"({v})*{A.form_labels[i]}", A.coframe(i, PolyFn.var(A.vars, v))))
    return out


def case3_residuals(T: JacobiAlgebroid, N: EndoTensor, pi: KVector, xi: KVector, eta: KVector,
                    explicit: bool = False) -> Tuple[KVector, KVector]:
    """Residuals of the second and third conditions for ``[[N, π], [0, -N*]]``.

    ``explicit=False`` gives the intrinsic forms built on ``⟦·,·⟧_π``, ``ℒ`` and
    ``d^{φ0}``; ``explicit=True`` expands them through ``φ0`` with undeformed
    calculus and ``[ξ,η]_π = L_{π♯ξ}η - L_{π♯η}ξ - dπ(ξ,η)``.
    """
    A = T.algebroid
    phi0 = T.cocycle
    Ns = N.transpose()
    ps, pe = sharp(pi, xi), sharp(pi, eta)
    nxi, neta = Ns(xi), Ns(eta)
    if not explicit:
        r2 = A.bracket(ps, pe) - sharp(pi, bracket_pi(T, pi, xi, eta))
        r3 = (Ns(bracket_pi(T, pi, xi, eta)) - T.lie_derivative(ps, neta) + T.lie_derivative(pe, nxi)
              + T.differential(T.function(evaluate(pi, nxi, eta))))
        return r2, r3
    L = A.lie_derivative
    d = A.differential
    plain = L(ps, eta) - L(pe, xi) - d(A.function(evaluate(pi, xi, eta)))
    pipi = contract(phi0, wedge(pi, pi))
    r2 = A.bracket(ps, pe) - sharp(pi, plain) + contract(eta, contract(xi, pipi)).scale(HALF)
    r3 = (Ns(plain + phi0.scale(evaluate(pi, eta, xi))) - L(ps, neta) + L(pe, nxi)
          + d(A.function(evaluate(pi, nxi, eta))) - phi0.scale(evaluate(pi, eta, nxi)))
    return r2, r3


def verify_tangent_case(T: JacobiAlgebroid, N: Optional[EndoTensor] = None, pi: Optional[KVector] = None,
                        omega: Optional[KVector] = None, sampler: Optional[SectionSampler] = None) -> Report:
    """The three block types on ``TM ⊕ T*M``: intrinsic and explicit conditions versus :func:`verify_gcs`.

    Case 1: ``N`` only.  Case 2: ``ω`` only.  Case 3: ``N`` and ``π``.
    """
    A = T.algebroid
    vars, r = A.vars, A.rank
    zero_pi = A.zero(2)
    zero_sigma = A.zero(2, A.form_variance)
    rep = Report("generalized complex structure on TM")
    if omega is not None:
        if N is not None or pi is not None:
            raise ValueError("case 2 takes omega alone")
        a, b = case2_residuals(T, omega)
        rep.add("d omega + phi0^omega = 0", [Violation(("omega",), A.fmt(a), a)] if a else [])
        rep.add("explicit form has the same residual", [] if a == b else [Violation(("omega",), A.fmt(a - b))])
        pi = inverse_bivector(omega)
        if pi is None:
            rep.skip("generalized complex structure agrees", "skipped: non-constant determinant")
            return rep
        Jm = GcsMap(EndoTensor.zero(vars, r), pi, omega)
    else:
        if N is None:
            raise ValueError("case 1 and case 3 need N")
        sq = N.compose(N) + EndoTensor.identity(vars, r)
        rep.add("N^2 = -Id", [Violation(("N",), repr(sq))] if not sq.is_zero() else [])
        pi = pi if pi is not None else zero_pi
        if not pi:
            bad, mism = [], []
            for i in range(r):
                for j in range(i + 1, r):
                    v, e = case1_residuals(T, N, i, j)
                    if v:
                        bad.append(Violation((A.labels[i], A.labels[j]), A.fmt(v), v))
                    if v != e:
                        mism.append(Violation((A.labels[i], A.labels[j]), A.fmt(v - e)))
            rep.add("T(N) = 0", bad)
            rep.add("explicit form has the same residual", mism)
        else:
            md = musical_defect(pi, N)
            rep.add("N pi# = pi# N*", [Violation(k, str(v)) for k, v in md.items()])
            bad2, bad3, mism = [], [], []
            samples = _coform_samples(A)
            for la, xi in samples:
                for lb, eta in samples[:r]:
                    r2, r3 = case3_residuals(T, N, pi, xi, eta)
                    e2, e3 = case3_residuals(T, N, pi, xi, eta, explicit=True)
                    if r2:
                        bad2.append(Violation((la, lb), A.fmt(r2), r2))
                    if r3:
                        bad3.append(Violation((la, lb), A.fmt(r3), r3))
                    if r2 != e2 or r3 != e3:
                        mism.append(Violation((la, lb), A.fmt(r2 - e2) + " ; " + A.fmt(r3 - e3)))
            rep.add("[pi# xi, pi# eta] = pi# [[xi, eta]]_pi", bad2)
            rep.add("N*[[xi, eta]]_pi = L_{pi# xi} N* eta - L_{pi# eta} N* xi - d pi(N* xi, eta)", bad3)
            rep.add("explicit forms have the same residuals", mism)
        Jm = GcsMap(N, pi, zero_sigma)
    sub = verify_gcs(canonical_double(T), Jm, sampler, induced_check=False)
    conditions = all(c.status != "fail" for c in rep.checks if not c.name.startswith("explicit"))
    ok = sub.passed == conditions
    c = rep.add("generalized complex structure agrees",
                [] if ok else [Violation(("J",), f"GCS {sub.passed}, conditions {conditions}")],
                detail=f"J is {'' if sub.passed else 'not '}a GCS")
    c.children.append(sub)
    return rep


# -- Jacobi pairs ---------------------------------------------------------------------

def embed_jacobi_pair(E: JacobiAlgebroid, Lam: KVector, X: KVector) -> KVector:
    """``π = Λ + X∧∂t`` on ``TM ⊕ R``."""
    return lift_e1(E, Lam) + wedge(lift_e1(E, X), E.frame(E.rank - 1))


def verify_jacobi_pair(m_or_vars, Lam: KVector, X: KVector) -> Report:
    """``[Λ,Λ] = 2X∧Λ`` and ``[X,Λ] = 0``, cross-checked as ``⟦π,π⟧ = 0`` on ``TM ⊕ R``."""
    vars = _vars(m_or_vars)
    M = LieAlgebroid.tangent(vars)
    M._check_section(Lam, 2)
    M._check_section(X, 1)
    rep = Report("Jacobi pair")
    r1 = M.schouten(Lam, Lam) - wedge(X, Lam).scale(2)
    rep.add("[L, L] = 2 X^L", [Violation(("L",), M.fmt(r1), r1)] if r1 else [])
    r2 = M.schouten(X, Lam)
    rep.add("[X, L] = 0", [Violation(("X", "L"), M.fmt(r2), r2)] if r2 else [])
    E = build_e1(vars)
    pi = embed_jacobi_pair(E, Lam, X)
    res = E.schouten_jacobi(pi, pi)
    ok = (not res) == rep.passed
    rep.add("embedded pi = L + X^d/dt agrees",
            [] if ok else [Violation(("pi",), E.fmt(res), res)],
            detail=f"[[pi, pi]] = {E.fmt(res) if res else '0'}")
    return rep


# -- almost and normal contact --------------------------------------------------------------

@dataclass
class ContactTriple:
    phi: EndoTensor
    Y: KVector
    eta: KVector

    def __post_init__(self):
        r = self.phi.rank
        if self.Y.degree != 1 or self.Y.variance != MV or self.Y.rank != r:
            raise ValueError("Y must be a vector field of matching rank")
        if self.eta.degree != 1 or self.eta.variance != FORM or self.eta.rank != r:
            raise ValueError("eta must be a 1-form of matching rank")

    @property
    def vars(self):
        return self.phi.vars

    def lifted_endo(self) -> EndoTensor:
        """``N = [[φ, -Y], [η, 0]]`` on ``TM ⊕ R``."""
        r = self.phi.rank
        rows = [list(self.phi.matrix[i]) + [-self.Y[(i,)]] for i in range(r)]
        rows.append([self.eta[(j,)] for j in range(r)] + [PolyFn.zero(self.vars)])
        return EndoTensor(self.vars, rows)


def _tangent_of(C: ContactTriple) -> LieAlgebroid:
    return LieAlgebroid.tangent(C.vars)


def verify_almost_contact(C: ContactTriple) -> Report:
    M = _tangent_of(C)
    rep = Report("almost contact structure")
    eY = contract(C.Y, C.eta).as_function()
    rep.add("eta(Y) = 1", [] if eY == 1 else [Violation(("Y",), str(eY - 1), eY - 1)])
    bad = []
    for j in range(M.rank):
        e = M.frame(j)
        res = C.phi(C.phi(e)) + e - C.Y.scale(contract(e, C.eta).as_function())
        if res:
            bad.append(Violation((M.labels[j],), M.fmt(res), res))
    rep.add("phi^2 = -Id + eta (x) Y", bad)
    phiY = C.phi(C.Y)
    etaphi = C.phi.transpose()(C.eta)
    if rep.passed:
        bad = []
        if phiY:
            bad.append(Violation(("phi(Y)",), M.fmt(phiY), phiY))
        if etaphi:
            bad.append(Violation(("eta o phi",), M.fmt(etaphi), etaphi))
        rep.add("phi(Y) = 0 and eta o phi = 0 follow", bad,
                detail="a failure here is an engine defect, not a property of the data")
    else:
        rep.skip("phi(Y) = 0 and eta o phi = 0 follow", "the defining conditions fail")
    return rep


def normal_residual(C: ContactTriple, X1: KVector, X2: KVector) -> KVector:
    """``T(φ)(X1,X2) + dη(X1,X2) Y``."""
    M = _tangent_of(C)
    T = torsion(M, C.phi)
    deta = M.differential(C.eta)
    return T(X1, X2) + C.Y.scale(evaluate(deta, X1, X2))


def verify_normal_contact(C: ContactTriple, sampler: Optional[SectionSampler] = None) -> Report:
    M = _tangent_of(C)
    vars = M.vars
    rep = Report("normal contact structure")
    bad = []
    for i in range(M.rank):
        for j in range(i + 1, M.rank):
            res = normal_residual(C, M.frame(i), M.frame(j))
            if res:
                bad.append(Violation((M.labels[i], M.labels[j]), M.fmt(res), res))
    rep.add("T(phi) + d eta (x) Y = 0", bad, detail="frame pairs")
    bad = []
    for i in range(M.rank):
        for j in range(M.rank):
            for v in vars:
                f = PolyFn.var(vars, v)
                res = normal_residual(C, M.frame(i, f), M.frame(j)) - normal_residual(C, M.frame(i), M.frame(j)).scale(f)
                if res:
                    bad.append(Violation((f"({v})*{M.labels[i]}", M.labels[j]), M.fmt(res), res))
    rep.add("residual is function-linear", bad, detail="obligation for the frame-pair reduction")
    almost = verify_almost_contact(C)
    if not almost.passed:
        rep.skip("T(N) = 0 on TM + R agrees", "not almost contact")
        rep.skip("block-diagonal J on E1 agrees", "not almost contact")
        return rep
    E = build_e1(vars)
    N = C.lifted_endo()
    TN = torsion(E.algebroid, N)
    tn_zero = TN.is_zero()
    normal = rep.passed
    rep.add("T(N) = 0 on TM + R agrees",
            [] if tn_zero == normal else [Violation(("N",), f"T(N) zero: {tn_zero}")])
    Jm = GcsMap(N, E.zero(2), E.zero(2, E.algebroid.form_variance))
    sub = verify_gcs(canonical_double(E), Jm, sampler, induced_check=False)
    c = rep.add("block-diagonal J on E1 agrees",
                [] if sub.passed == normal else [Violation(("J",), f"GCS {sub.passed}")],
                detail=f"diag(N, -N*) is {'' if sub.passed else 'not '}a generalized contact structure")
    c.children.append(sub)
    return rep


# -- contact forms --------------------------------------------------------------------------

def theta_form(E: JacobiAlgebroid, eta: KVector, omega: KVector) -> KVector:
    """``Θ = ω + dt∧η`` on ``TM ⊕ R``."""
    return lift_e1(E, omega) + wedge(E.coframe(E.rank - 1), lift_e1(E, eta))


def theta_identity(E: JacobiAlgebroid, eta: KVector, omega: KVector) -> Tuple[KVector, KVector]:
    """``d^{φ0}Θ`` and ``dω + dt∧(ω - dη)``, computed independently."""
    M = LieAlgebroid.tangent(E.vars)
    lhs = E.differential(theta_form(E, eta, omega))
    rhs = (lift_e1(E, M.differential(omega))
           + wedge(E.coframe(E.rank - 1), lift_e1(E, omega - M.differential(eta))))
    return lhs, rhs


def verify_contact_form(m_or_vars, eta: KVector, omega: KVector, sample_points=None,
                        sampler: Optional[SectionSampler] = None) -> Report:
    vars = _vars(m_or_vars)
    m = len(vars)
    if m % 2 == 0:
        raise ValueError("contact forms need odd dimension")
    pts = _points(sample_points, vars)
    n = (m - 1) // 2
    M = LieAlgebroid.tangent(vars)
    M._check_section(eta, 1, FORM)
    M._check_section(omega, 2, FORM)
    E = build_e1(vars)
    rep = Report("contact form")
    lhs, rhs = theta_identity(E, eta, omega)
    rep.add("d Theta = d omega + dt^(omega - d eta)",
            [] if lhs == rhs else [Violation(("Theta",), E.fmt(lhs - rhs))],
            detail="identity, computed two ways")
    rep.add("d Theta = 0", [Violation(("Theta",), E.fmt(lhs), lhs)] if lhs else [])
    top = wedge_all([eta] + [omega] * n)
    _nondegeneracy(rep, "eta ^ omega^n != 0", top[tuple(range(m))], pts, vars)
    Theta = theta_form(E, eta, omega)
    pi = inverse_bivector(Theta)
    if pi is None:
        rep.skip("generalized contact structure agrees", "skipped: non-constant determinant")
        return rep
    Jm = GcsMap(EndoTensor.zero(vars, E.rank), pi, Theta)
    sub = verify_gcs(canonical_double(E), Jm, sampler, induced_check=False)
    verdict = rep.passed
    c = rep.add("generalized contact structure agrees",
                [] if sub.passed == verdict else [Violation(("J",), f"GCS {sub.passed}")],
                detail=f"[[0, -Theta^-1], [Theta, 0]] is {'' if sub.passed else 'not '}a GCS on E1")
    c.children.append(sub)
    return rep


__all__ = [
    "coordinates", "build_tangent", "build_e1", "lift_e1", "tangent_bracket_explicit",
    "e1_bracket_explicit", "e1_pairing", "compare_brackets", "flat_matrix", "inverse_bivector",
    "verify_conformal_symplectic", "case1_residuals", "case2_residuals", "case3_residuals", "verify_tangent_case",
    "embed_jacobi_pair", "verify_jacobi_pair", "ContactTriple", "verify_almost_contact",
    "normal_residual", "verify_normal_contact", "theta_form", "theta_identity", "verify_contact_form",
]
