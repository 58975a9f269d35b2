"""Nijenhuis torsion, deformed brackets and Jacobi quasi-Nijenhuis quadruples.

Conventions: ``π^♯ξ = i_ξ π`` (so ``π^♯ξ(η) = π(ξ,η)``), ``σ_♭X = i_X σ``,
``i_{X∧Y}φ = φ(X,Y,·)`` and a trivector ``Ψ`` is evaluated on two
coforms as ``Ψ(ξ,η) = Ψ(ξ,η,·)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .algebroid import JacobiAlgebroid, LieAlgebroid
from .algebroid import derivation_defect as _derivation_defect
from .report import Report, Violation
from .symalg import (
    EndoTensor,
    KVector,
    PolyFn,
    contract,
    evaluate,
    insert,
    insert_endo,
    poly_sum,
    wedge,
)

Bivector = KVector
TwoForm = KVector


def _lie(J):
    return J.algebroid if isinstance(J, JacobiAlgebroid) else J


def _jacobi(J) -> JacobiAlgebroid:
    return J if isinstance(J, JacobiAlgebroid) else JacobiAlgebroid(J)


# -- torsion and the deformed bracket ----------------------------------

def bracket_n(A, N: EndoTensor, X: KVector, Y: KVector) -> KVector:
    """``[X,Y]_N = [NX,Y] + [X,NY] - N[X,Y]``."""
    A = _lie(A)
    return A.bracket(N(X), Y) + A.bracket(X, N(Y)) - N(A.bracket(X, Y))


class Torsion:
    """``T(N)(X,Y) = [NX,NY] - N[X,Y]_N``; callable and tabulated on frame pairs."""

    def __init__(self, A, N: EndoTensor):
        self.A = _lie(A)
        if N.rank != self.A.rank or N.vars != self.A.vars:
            raise ValueError("dimension mismatch between tensor and algebroid")
        self.N = N
        self._table: Optional[Dict[Tuple[int, int], KVector]] = None

    def __call__(self, X: KVector, Y: KVector) -> KVector:
        A, N = self.A, self.N
        return A.bracket(N(X), N(Y)) - N(bracket_n(A, N, X, Y))

    @property
    def table(self) -> Dict[Tuple[int, int], KVector]:
        if self._table is None:
            A = self.A
            self._table = {(i, j): self(A.frame(i), A.frame(j)) for i, j in combinations(range(A.rank), 2)}
        return self._table

    def components(self) -> Dict[Tuple[int, int, int], PolyFn]:
        """``(i, j, k) ↦`` k-th component of ``T(e_i, e_j)``, nonzero entries only."""
        out = {}
        for (i, j), v in self.table.items():
            for (k,), c in v.terms.items():
                out[(i, j, k)] = c
        return out

    def is_zero(self) -> bool:
        return not any(self.table.values())


def torsion(A, N: EndoTensor) -> Torsion:
    return Torsion(A, N)


# -- musical maps --------------------------------------------------------

def sharp(pi: KVector, xi: KVector) -> KVector:
    return contract(xi, pi)


def flat(sigma: KVector, X: KVector) -> KVector:
    return contract(X, sigma)


def sharp_matrix(pi: KVector) -> List[List[PolyFn]]:
    """``M[i][j]`` = i-th component of ``π^♯ e^j``."""
    r = pi.rank
    return [[pi[(j, i)] for j in range(r)] for i in range(r)]


def sharp_endo(pi: KVector) -> EndoTensor:
    """``π^♯`` as a matrix (acting from the dual frame to the frame)."""
    return EndoTensor(pi.vars, sharp_matrix(pi), pi.variance)


def musical_defect(pi: KVector, N: EndoTensor) -> Dict[Tuple[int, int], PolyFn]:
    """Nonzero entries of ``N∘π^♯ - π^♯∘N*`` in the frame: ``(a, b) ↦ e^b((Nπ^♯ - π^♯N*) e^a)``."""
    r = pi.rank
    out = {}
    for a in range(r):
        for b in range(r):
            lhs = poly_sum((N.matrix[b][c] * pi[(a, c)] for c in range(r)), pi.vars)
            rhs = poly_sum((N.matrix[a][c] * pi[(c, b)] for c in range(r)), pi.vars)
            d = lhs - rhs
            if d:
                out[(a, b)] = d
    return out


def pi_n(pi: KVector, N: EndoTensor) -> KVector:
    """``π_N(ξ,η) = η(Nπ^♯ξ)``; requires ``N∘π^♯ = π^♯∘N*``."""
    defect = musical_defect(pi, N)
    if defect:
        shown = ", ".join(f"({a + 1},{b + 1}): {c}" for (a, b), c in sorted(defect.items())[:4])
        raise ValueError(f"N and pi do not commute (N pi# - pi# N* has entries {shown}); pi_N is not skew")
    r = pi.rank
    terms = {}
    for a, b in combinations(range(r), 2):
        c = poly_sum((N.matrix[b][k] * pi[(a, k)] for k in range(r)), pi.vars)
        if c:
            terms[(a, b)] = c
    return KVector(pi.vars, r, 2, pi.variance, terms)


# -- brackets on the dual ----------------------------------------------

def bracket_pi(J, pi: KVector, xi: KVector, eta: KVector) -> KVector:
    """``⟦ξ,η⟧_π = -d^{φ0}(π(ξ,η)) + ℒ_{π^♯ξ}η - ℒ_{π^♯η}ξ``."""
    J = _jacobi(J)
    pxe = J.function(evaluate(pi, xi, eta))
    return (-J.differential(pxe) + J.lie_derivative(sharp(pi, xi), eta)
            - J.lie_derivative(sharp(pi, eta), xi))


def dual_algebroid(J, pi: KVector) -> JacobiAlgebroid:
    """``(A*, ⟦·,·⟧_π, a∘π^♯)`` with representation ``ρ∘π^♯``.

    Structure functions are read off ``⟦e^i, e^j⟧_π``; whether the result is
    a Lie algebroid is for :func:`verify_jacobi_bivector` to decide.
    """
    J = _jacobi(J)
    A = J.algebroid
    r = A.rank
    cof = [A.coframe(i) for i in range(r)]
    images = [sharp(pi, c) for c in cof]
    anchor = [A.anchor_vector(v) for v in images]
    structure = [[bracket_pi(J, pi, cof[i], cof[j]).components() for j in range(r)] for i in range(r)]
    D = LieAlgebroid(A.vars, anchor, structure, A.form_variance, A.form_labels, A.labels)
    cocycle = KVector.from_components(A.vars, r, A.variance,
                                      [contract(v, J.cocycle).as_function() for v in images])
    return JacobiAlgebroid(D, cocycle)


def trivector_pair(Psi: KVector, xi: KVector, eta: KVector) -> KVector:
    """``Ψ(ξ,η,·)``."""
    return insert(Psi, xi, eta)


def fundamental_identity_defect(J, pi: KVector, xi: KVector, eta: KVector) -> KVector:
    """``π^♯⟦ξ,η⟧_π - [π^♯ξ,π^♯η] - ½⟦π,π⟧(ξ,η)``, identically zero."""
    J = _jacobi(J)
    lhs = sharp(pi, bracket_pi(J, pi, xi, eta)) - J.bracket(sharp(pi, xi), sharp(pi, eta))
    half = trivector_pair(J.schouten_jacobi(pi, pi), xi, eta).scale(Fraction(1, 2))
    return lhs - half


def concomitant(J, pi: KVector, N: EndoTensor, xi: KVector, eta: KVector) -> KVector:
    """``C(π,N)(ξ,η) = ⟦ξ,η⟧_{π_N} - ⟦N*ξ,η⟧_π - ⟦ξ,N*η⟧_π + N*⟦ξ,η⟧_π``."""
    J = _jacobi(J)
    piN = pi_n(pi, N)
    Ns = N.transpose()
    return (bracket_pi(J, piN, xi, eta) - bracket_pi(J, pi, Ns(xi), eta)
            - bracket_pi(J, pi, xi, Ns(eta)) + Ns(bracket_pi(J, pi, xi, eta)))


# -- differentials -------------------------------------------------------

def d_n(J, N: EndoTensor, w: KVector) -> KVector:
    """``d_N = i_N∘d^{φ0} - d^{φ0}∘i_N``."""
    J = _jacobi(J)
    return insert_endo(N, J.differential(w)) - J.differential(insert_endo(N, w))


def d_n_split(J, N: EndoTensor, w: KVector) -> KVector:
    """The same operator as ``d̃_N w + (i_N d^{φ0}𝟙)∧w`` with the undeformed ``d̃_N``."""
    J = _jacobi(J)
    A = J.algebroid
    plain = insert_endo(N, A.differential(w)) - A.differential(insert_endo(N, w))
    return plain + wedge(insert_endo(N, J.differential(J.one())), w)


def deformed_algebroid(J, N: EndoTensor) -> Tuple[LieAlgebroid, List[PolyFn]]:
    """``(A, [·,·]_N, a∘N)`` and the scalar part ``φ0∘N`` of ``ρ∘N``; its differential is ``d_N``."""
    J = _jacobi(J)
    A = J.algebroid
    r = A.rank
    frames = [A.frame(i) for i in range(r)]
    images = [N(f) for f in frames]
    anchor = [A.anchor_vector(v) for v in images]
    structure = [[bracket_n(A, N, frames[i], frames[j]).components() for j in range(r)] for i in range(r)]
    B = LieAlgebroid(A.vars, anchor, structure, A.variance, A.labels, A.form_labels)
    scalar = [contract(v, J.cocycle).as_function() for v in images]
    return B, scalar


def dphi_flat(J, phi: KVector, X: KVector, Y: KVector, Z: KVector) -> KVector:
    """``i_{X∧Y∧Z} d^{φ0}φ``."""
    J = _jacobi(J)
    return insert(J.differential(phi), X, Y, Z)


# -- verifiers -----------------------------------------------------------

def _frame_pairs(A):
    return list(combinations(range(A.rank), 2))


def verify_jacobi_bivector(J, pi: KVector) -> Report:
    J = _jacobi(J)
    A = J.algebroid
    rep = Report("Jacobi bivector")
    Psi = J.schouten_jacobi(pi, pi)
    rep.add("[[pi, pi]] = 0", [Violation(("pi", "pi"), A.fmt(Psi), Psi)] if Psi else [])
    if Psi:
        rep.skip("dual bracket Jacobi identity", "pi is not a Jacobi bivector")
        rep.skip("d_* 1 = -pi#(d 1)", "pi is not a Jacobi bivector")
        return rep
    D = dual_algebroid(J, pi)
    from .algebroid import verify_lie_algebroid, verify_cocycle
    lie = verify_lie_algebroid(D.algebroid)
    bad = [v for c in lie.checks for v in c.violations]
    rep.add("dual bracket Jacobi identity", bad, detail="antisymmetry, anchor and frame-triple Jacobi on A*_pi")
    rep.add("dual cocycle closed", verify_cocycle(D).violations())
    d_star_one = D.differential(D.one())
    expected = -sharp(pi, J.differential(J.one()))
    res = d_star_one - expected
    rep.add("d_* 1 = -pi#(d 1)", [Violation(("1",), A.fmt(res), res)] if res else [])
    return rep


@dataclass
class QuadrupleCandidate:
    J: JacobiAlgebroid
    pi: KVector
    N: EndoTensor
    phi: KVector


def verify_quadruple(Q: QuadrupleCandidate) -> Report:
    J, pi, N, phi = _jacobi(Q.J), Q.pi, Q.N, Q.phi
    A = J.algebroid
    lab, flab = A.labels, A.form_labels
    rep = Report("Jacobi quasi-Nijenhuis quadruple")

    Psi = J.schouten_jacobi(pi, pi)
    rep.add("[[pi, pi]] = 0", [Violation(("pi", "pi"), A.fmt(Psi), Psi)] if Psi else [])

    defect = musical_defect(pi, N)
    rep.add("N pi# = pi# N*", [Violation((flab[a], flab[b]), str(c), c) for (a, b), c in sorted(defect.items())])

    if defect:
        rep.skip("C(pi, N) = 0", "pi_N undefined: musical maps do not commute")
    else:
        bad = []
        for i, j in _frame_pairs(A):
            c = concomitant(J, pi, N, A.coframe(i), A.coframe(j))
            if c:
                bad.append(Violation((flab[i], flab[j]), A.fmt(c), c))
        rep.add("C(pi, N) = 0", bad, detail="frame pairs; C is tensorial")

    dphi = J.differential(phi)
    rep.add("d phi = 0", [Violation(("phi",), A.fmt(dphi), dphi)] if dphi else [])
    dinp = J.differential(insert_endo(N, phi))
    rep.add("d(i_N phi) = 0", [Violation(("i_N phi",), A.fmt(dinp), dinp)] if dinp else [])

    T = torsion(A, N)
    bad = []
    for (i, j), t in T.table.items():
        res = t - sharp(pi, insert(phi, A.frame(i), A.frame(j)))
        if res:
            bad.append(Violation((lab[i], lab[j]), A.fmt(res), res))
    rep.add("T(N)(X,Y) = pi#(i_{X^Y} phi)", bad, detail="frame pairs; both sides tensorial")

    if not rep.passed:
        rep.skip("[[pi, pi_N]] = 0", "quadruple conditions fail")
        rep.skip("[[pi_N, pi_N]](xi,eta) = -2 pi#(i_{pi#xi ^ pi#eta} phi)", "quadruple conditions fail")
        return rep
    piN = pi_n(pi, N)
    mixed = J.schouten_jacobi(pi, piN)
    rep.add("[[pi, pi_N]] = 0", [Violation(("pi", "pi_N"), A.fmt(mixed), mixed)] if mixed else [])
    PsiN = J.schouten_jacobi(piN, piN)
    bad = []
    for i, j in _frame_pairs(A):
        xi, eta = A.coframe(i), A.coframe(j)
        rhs = sharp(pi, insert(phi, sharp(pi, xi), sharp(pi, eta))).scale(-2)
        res = trivector_pair(PsiN, xi, eta) - rhs
        if res:
            bad.append(Violation((flab[i], flab[j]), A.fmt(res), res))
    rep.add("[[pi_N, pi_N]](xi,eta) = -2 pi#(i_{pi#xi ^ pi#eta} phi)", bad)
    return rep


def derivation_defect(J, pi: KVector, N: EndoTensor, P: KVector, Q: KVector) -> KVector:
    """``d_N⟦P,Q⟧_π + ⟦d_N P,Q⟧_π - (-1)^{p+1}⟦P,d_N Q⟧_π`` for forms ``P``, ``Q``."""
    J = _jacobi(J)
    return _derivation_defect(dual_algebroid(J, pi), lambda w: d_n(J, N, w), P, Q)


def verify_derivation(J, pi: KVector, N: EndoTensor, samples: Sequence[Tuple[KVector, KVector]]) -> Report:
    """``d_N`` as a derivation of ``⟦·,·⟧_π`` on sampled pairs of degrees (0,1), (1,0) and (1,1)."""
    J = _jacobi(J)
    A = J.algebroid
    rep = Report("d_N derivation of [[.,.]]_pi")
    bad = []
    for k, (P, Q) in enumerate(samples):
        res = derivation_defect(J, pi, N, P, Q)
        if res:
            bad.append(Violation((f"sample {k}", f"degrees ({P.degree},{Q.degree})"), A.fmt(res), res))
    rep.add("d_N [[P,Q]] = -[[d_N P,Q]] + (-1)^(p+1) [[P,d_N Q]]", bad)
    return rep


__all__ = [
    "Bivector", "TwoForm", "QuadrupleCandidate", "Torsion", "torsion", "bracket_n", "sharp", "flat",
    "sharp_matrix", "sharp_endo", "musical_defect", "pi_n", "bracket_pi", "dual_algebroid",
    "trivector_pair", "fundamental_identity_defect", "concomitant", "d_n", "d_n_split",
    "deformed_algebroid", "dphi_flat", "verify_jacobi_bivector", "verify_quadruple",
    "derivation_defect", "verify_derivation",
]
