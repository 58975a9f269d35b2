"""Small hand-computed cases for every operation."""

from fractions import Fraction

import pytest

from jacobi_qn.algebroid import GlValuedForm, JacobiAlgebroid, LieAlgebroid, check_maurer_cartan, verify_cocycle, \
    verify_lie_algebroid
from jacobi_qn.contact import (
    ContactTriple, build_e1, build_tangent, tangent_bracket_explicit, verify_almost_contact,
    verify_conformal_symplectic, verify_contact_form, verify_jacobi_pair, verify_normal_contact,
)
from jacobi_qn.courant import (
    DualStructure, GcsMap, SectionSampler, build_double, canonical_double, correspondence_suite, deform,
    extract_bialgebroid, gen, verify_courant_jacobi, verify_quasi_bialgebroid,
)
from jacobi_qn.nijenhuis import (
    QuadrupleCandidate, bracket_n, bracket_pi, concomitant, d_n, dphi_flat, flat, fundamental_identity_defect,
    musical_defect, pi_n, sharp, torsion, verify_jacobi_bivector, verify_quadruple,
)
from jacobi_qn.symalg import FORM, MV, EndoTensor, KVector, PolyFn, contract, insert, insert_endo, wedge

QUICK = SectionSampler(degree=1, samples=1, budget=120)
XY, XYZ = ("x", "y"), ("x", "y", "z")


def setup(vars, phi0=None):
    J = JacobiAlgebroid.tangent(vars, phi0)
    A = J.algebroid
    fns = [PolyFn.var(vars, v) for v in vars]
    return J, A, [A.frame(i) for i in range(A.rank)], [A.coframe(i) for i in range(A.rank)], fns


CPLX = [[0, -1], [1, 0]]


# -- exterior algebra

def test_wedge_examples():
    J, A, e, _, (x, y, z) = setup(XYZ)
    assert wedge(e[0], e[1]) == KVector.basis(XYZ, 3, (0, 1), MV)
    assert not wedge(e[0], e[0])
    assert wedge(e[0].scale(x), e[1].scale(y) + e[0]) == wedge(e[0], e[1]).scale(x * y)


def test_contraction_examples():
    J, A, e, c, (x, y, z) = setup(XYZ)
    P = wedge(e[0], e[1])
    assert contract(c[0], P) == e[1]
    assert not contract(c[2], P)
    assert contract(c[0].scale(x) + c[1], P) == e[1].scale(x) - e[0]


def test_endo_insertion_examples():
    J, A, e, c, _ = setup(XY)
    w = wedge(c[0], c[1])
    assert insert_endo(EndoTensor.identity(XY, 2), w) == w.scale(2)
    assert not insert_endo(EndoTensor.zero(XY, 2), w)
    assert insert_endo(EndoTensor(XY, CPLX), c[0]) == -c[1]


def test_polynomial_examples():
    x, y, z = (PolyFn.var(XYZ, v) for v in XYZ)
    assert (x * x * y).partial("x") == x * y * 2
    assert not (x * x * y).partial("z")
    J, A, e, _, (x2, y2) = setup(XY)
    from jacobi_qn.symalg import eval_at
    assert eval_at(e[0].scale(x2 + y2), (1, 2)) == e[0].scale(3)


# -- algebroid calculus

def test_bracket_examples():
    J, A, e, _, (x, y) = setup(XY)
    assert not A.bracket(e[0], e[1])
    assert A.bracket(e[1].scale(x), e[0]) == -e[1]
    B = LieAlgebroid.abelian(XY, 2)
    assert not B.bracket(B.frame(0, x * y), B.frame(1, y))


def test_schouten_examples():
    J, A, e, _, (x, y) = setup(XY)
    P = wedge(e[0], e[1])
    assert not A.schouten(P, P)
    assert A.schouten(e[0], P.scale(x)) == P
    f, g = A.function(x, MV), A.function(y, MV)
    assert not A.schouten(f, g)


def test_differential_examples():
    J, A, e, c, (x, y) = setup(XY)
    assert A.differential(A.function(x, FORM)) == c[0]
    J1 = JacobiAlgebroid.tangent(XY, [1, 0])
    assert J1.differential(A.one()) == c[0]
    assert J1.differential(c[1]) == wedge(c[0], c[1])


def test_lie_derivative_examples():
    J, A, e, c, (x, y) = setup(XY)
    assert J.lie_derivative(e[0], c[1].scale(x)) == c[1]
    J1 = JacobiAlgebroid.tangent(XY, [1, 0])
    f = x * x * y + y
    assert J1.lie_derivative(e[0], A.function(f, FORM)).as_function() == f.partial("x") + f
    X = e[0].scale(y) + e[1]
    assert J1.lie_derivative(X, A.one()) == A.function(y, FORM)


def test_schouten_jacobi_examples():
    J1, A, e, _, (x, y) = setup(XY, [1, 0])
    X, Y = e[0].scale(y), e[1].scale(x)
    assert J1.schouten_jacobi(X, Y) == A.bracket(X, Y)
    J0 = JacobiAlgebroid.tangent(XY)
    P = wedge(e[0], e[1]).scale(x)
    assert J0.schouten_jacobi(P, P) == A.schouten(P, P)
    # on R^2 a trivector vanishes, so go to R^4 with phi0 = dx and pi = d/dx^d/dy + d/dz^d/dw:
    # [pi,pi] = 0 and the correction is -2 pi ^ i_phi0 pi = -2 (d/dz^d/dw) ^ d/dy
    V = ("x", "y", "z", "w")
    J4 = JacobiAlgebroid.tangent(V, [1, 0, 0, 0])
    B = J4.algebroid
    f = [B.frame(i) for i in range(4)]
    pi = wedge(f[0], f[1]) + wedge(f[2], f[3])
    assert J4.schouten_jacobi(pi, pi) == wedge(f[1], wedge(f[2], f[3])).scale(-2)


def test_verify_algebroid_examples():
    assert verify_lie_algebroid(LieAlgebroid.tangent(XYZ)).passed
    # c^1_12 = c^1_21 = 1 through the raw constructor; from_brackets would antisymmetrize
    bad = LieAlgebroid(XY, [[0, 0], [0, 0]], [[[0, 0], [1, 0]], [[1, 0], [0, 0]]])
    rep = verify_lie_algebroid(bad)
    assert not rep.passed
    assert any("antisymmetry" in c.name and c.status == "fail" for c in rep.checks)
    y = PolyFn.var(XY, "y")
    rep = verify_cocycle(JacobiAlgebroid.tangent(XY, [y, 0]))
    A = LieAlgebroid.tangent(XY)
    assert rep.violations()[0].value == -wedge(A.coframe(0), A.coframe(1))


def test_maurer_cartan_examples():
    A = LieAlgebroid.tangent(XY)
    y = PolyFn.var(XY, "y")
    assert check_maurer_cartan(A, GlValuedForm(XY, [[[1]], [[0]]])).passed
    assert not check_maurer_cartan(A, GlValuedForm(XY, [[[y]], [[0]]])).passed
    assert check_maurer_cartan(A, GlValuedForm(XY, [[[0]], [[0]]])).passed


# -- Nijenhuis calculus

def test_torsion_examples():
    J, A, e, _, (x, y) = setup(XY)
    assert torsion(A, EndoTensor.identity(XY, 2)).is_zero()
    assert torsion(A, EndoTensor(XY, CPLX)).is_zero()
    N = EndoTensor(XY, [[x, 0], [0, 1]])
    X, Y = e[0], e[1]
    brute = (A.bracket(N(X), N(Y)) - N(A.bracket(N(X), Y)) - N(A.bracket(X, N(Y)))
             + N(N(A.bracket(X, Y))))
    assert torsion(A, N)(X, Y) == brute


def test_deformed_bracket_examples():
    J, A, e, _, (x, y) = setup(XY)
    X, Y = e[0].scale(x), e[1].scale(y)
    assert bracket_n(A, EndoTensor.identity(XY, 2), X, Y) == A.bracket(X, Y)
    assert not bracket_n(A, EndoTensor.zero(XY, 2), X, Y)
    # [N x d/dx, d/dy] + [x d/dx, N d/dy] - N[x d/dx, d/dy] = [x d/dy, d/dy] + [x d/dx, -d/dx] = d/dx
    assert bracket_n(A, EndoTensor(XY, CPLX), e[0].scale(x), e[1]) == e[0]


def test_musical_examples():
    J, A, e, c, _ = setup(XY)
    pi = wedge(e[0], e[1])
    assert sharp(pi, c[0]) == e[1] and sharp(pi, c[1]) == -e[0]
    assert flat(wedge(c[0], c[1]), e[0]) == c[1]
    assert pi_n(pi, EndoTensor.identity(XY, 2)) == pi


def test_bracket_pi_examples():
    J, A, e, c, _ = setup(XY)
    pi = wedge(e[0], e[1])
    assert not bracket_pi(J, A.zero(2), c[0], c[1])
    assert not bracket_pi(J, pi, c[0], c[1])
    # phi0 = dx: L_{d/dy} dy - L_{-d/dx} dx - d^phi0 1 = 0 - (-dx) - dx = 0
    J1 = JacobiAlgebroid.tangent(XY, [1, 0])
    assert not bracket_pi(J1, pi, c[0], c[1])


def test_fundamental_identity_examples():
    J, A, e, c, (x, y, z) = setup(XYZ)
    assert not fundamental_identity_defect(J, A.zero(2), c[0], c[1])
    J2, B, f, d, _ = setup(XY)
    pi2 = wedge(f[0], f[1])
    assert not fundamental_identity_defect(J2, pi2, d[0], d[1])
    assert not sharp(pi2, bracket_pi(J2, pi2, d[0], d[1])) - J2.bracket(sharp(pi2, d[0]), sharp(pi2, d[1]))
    # a genuinely non-Poisson bivector: both sides nonzero and equal
    pi = wedge(e[0], e[1]) + wedge(e[1], e[2]).scale(y)
    xi, eta = c[0], c[2]
    lhs = sharp(pi, bracket_pi(J, pi, xi, eta)) - J.bracket(sharp(pi, xi), sharp(pi, eta))
    rhs = insert(J.schouten_jacobi(pi, pi), xi, eta).scale(Fraction(1, 2))
    assert lhs and lhs == rhs
    assert not fundamental_identity_defect(J, pi, xi, eta)


def test_concomitant_examples():
    J, A, e, c, (x, y) = setup(XY)
    pi = wedge(e[0], e[1]).scale(x)
    for N in (EndoTensor.identity(XY, 2), EndoTensor.identity(XY, 2).scale(3)):
        for xi in c:
            for eta in c:
                assert not concomitant(J, pi, N, xi, eta)
    # the complex structure and the area bivector do not commute, so pi_N is not even skew
    with pytest.raises(ValueError, match="do not commute"):
        concomitant(J, wedge(e[0], e[1]), EndoTensor(XY, CPLX), c[0], c[1])
    # on R^2 only scalars commute with the area bivector; the holomorphic pair on R^4 is compatible
    from jacobi_qn.structure import load_structure
    sf = load_structure("holomorphic-poisson-r4")
    pi4, N4 = sf.objects["pi"], sf.objects["N"]
    assert not musical_defect(pi4, N4)
    B = sf.J.algebroid
    for i in range(B.rank):
        for j in range(B.rank):
            assert not concomitant(sf.J, pi4, N4, B.coframe(i), B.coframe(j))


def test_d_n_examples():
    J1, A, e, c, (x, y) = setup(XY, [1, 0])
    f = A.function(x * y, FORM)
    assert d_n(J1, EndoTensor.identity(XY, 2), f) == J1.differential(f)
    assert not d_n(J1, EndoTensor.zero(XY, 2), f)
    assert not d_n(J1, EndoTensor.zero(XY, 2), c[0].scale(y))
    # N* dy = dx and N* dx = -dy, so N*(dy + y dx) = dx - y dy
    assert d_n(J1, EndoTensor(XY, CPLX), A.function(y, FORM)) == c[0] - c[1].scale(y)


def test_dphi_flat_examples():
    J, A, e, c, _ = setup(XYZ)
    assert not dphi_flat(J, wedge(c[0], wedge(c[1], c[2])), e[0], e[1], e[2])
    V = ("x1", "x2", "x3", "x4")
    J4, B, f, d, (x1, *_) = setup(V)
    phi = wedge(d[1], wedge(d[2], d[3])).scale(x1)
    # d phi = dx1^e2^e3^e4, so inserting e1, e2, e3 leaves e4
    assert dphi_flat(J4, phi, f[0], f[1], f[2]) == d[3]
    closed = wedge(d[1], wedge(d[2], d[3]))
    assert not dphi_flat(J4, closed, f[0], f[1], f[2])


def test_jacobi_bivector_examples():
    J, A, e, _, (x, y, z) = setup(XYZ)
    J2, B, f, _, _ = setup(XY)
    assert verify_jacobi_bivector(J2, wedge(f[0], f[1])).passed
    assert verify_jacobi_bivector(J, A.zero(2)).passed
    # x d/dy^d/dz is still Poisson on R^3; the y coefficient is not
    assert verify_jacobi_bivector(J, wedge(e[0], e[1]) + wedge(e[1], e[2]).scale(x)).passed
    rep = verify_jacobi_bivector(J, wedge(e[0], e[1]) + wedge(e[1], e[2]).scale(y))
    assert not rep.passed and rep.violations()[0].value


def test_quadruple_examples():
    J, A, e, c, (x, y) = setup(XY)
    pi = wedge(e[0], e[1]).scale(x)
    assert verify_quadruple(QuadrupleCandidate(J, pi, EndoTensor.identity(XY, 2), A.zero(3, FORM))).passed
    # the complex structure does not commute with pi# for the area bivector
    assert musical_defect(wedge(e[0], e[1]), EndoTensor(XY, CPLX))
    J3, B, f, d, _ = setup(XYZ)
    Q = QuadrupleCandidate(J3, wedge(f[0], f[1]), EndoTensor.identity(XYZ, 3), wedge(d[0], wedge(d[1], d[2])))
    rep = verify_quadruple(Q)
    assert rep.status_of("T(N)(X,Y) = pi#(i_{X^Y} phi)") == "fail"
    # pi#(i_{d/dx ^ d/dz} phi) = pi#(-dy) = d/dx
    assert sharp(Q.pi, insert(Q.phi, f[0], f[2])) == f[0]


# -- Courant-Jacobi

def test_canonical_bracket_examples():
    J, A, e, c, (x, y) = setup(XY)
    S = canonical_double(J)
    u = S.bracket(gen(J, e[0], A.zero(1, FORM)), gen(J, A.zero(1), c[1]))
    assert u.is_zero()
    u = S.bracket(gen(J, e[0], c[1].scale(x)), gen(J, e[1], A.zero(1, FORM)))
    assert not u.vec and u.form == c[0]
    J1 = JacobiAlgebroid.tangent(XY, [1, 0])
    S1 = canonical_double(J1)
    assert S1.bracket(gen(J1, A.zero(1), c[0]), gen(J1, e[0], A.zero(1, FORM))).is_zero()


def test_tangent_bracket_matches_explicit_formula():
    T = build_tangent(2, [1, 0])
    A = T.algebroid
    y = PolyFn.var(A.vars, "y")
    S = canonical_double(T)
    u = gen(T, A.frame(0, y), A.coframe(1))
    v = gen(T, A.frame(1), A.coframe(0, y))
    w1, w2 = S.bracket(u, v), tangent_bracket_explicit(T, u, v)
    assert w1.vec == w2.vec and w1.form == w2.form


def test_deformed_bracket_example():
    J, A, e, c, _ = setup(XY)
    Jm = GcsMap(EndoTensor(XY, CPLX), A.zero(2), A.zero(2, FORM))
    D = deform(canonical_double(J), Jm)
    assert D.structure.bracket(gen(J, e[0], A.zero(1, FORM)), gen(J, e[1], A.zero(1, FORM))).is_zero()
    u = gen(J, e[0].scale(PolyFn.var(XY, "x")), c[1])
    lhs = D.structure.bracket(u, u)
    S = canonical_double(J)
    # the canonical bracket is not skew, so both orderings appear
    rhs = S.bracket(Jm(u), u) + S.bracket(u, Jm(u)) - Jm(S.bracket(u, u))
    assert lhs.vec == rhs.vec and lhs.form == rhs.form


def test_double_examples():
    J, A, e, c, _ = setup(XY)
    D0 = DualStructure.trivial(J)
    S0, C = build_double(D0), canonical_double(J)
    for (_, u) in C.frame():
        for (_, v) in C.frame():
            a, b = S0.bracket(u, v), C.bracket(u, v)
            assert a.vec == b.vec and a.form == b.form
    assert not DualStructure.trivial(J).differences(extract_bialgebroid(C))
    Dpi = DualStructure.from_jacobi_bivector(J, wedge(e[0], e[1]))
    assert verify_courant_jacobi(build_double(Dpi), QUICK).passed
    assert verify_quasi_bialgebroid(D0, QUICK).passed


def test_perturbed_dual_structure_fails():
    J, A, e, c, (x, y) = setup(XY)
    D = DualStructure.from_jacobi_bivector(J, wedge(e[0], e[1]).scale(x))
    dual = D.dual
    structure = [[list(row) for row in m] for m in dual.structure]
    structure[0][1][0] = structure[0][1][0] + PolyFn.const(XY, 1)
    structure[1][0][0] = structure[1][0][0] - PolyFn.const(XY, 1)
    broken = LieAlgebroid(XY, dual.anchor, structure, dual.variance, dual.labels, dual.form_labels)
    rep = verify_quasi_bialgebroid(DualStructure(J, broken, D.dual_scalar, D.phi), QUICK)
    assert not rep.passed and rep.violations


def test_correspondence_with_zero_bivector_is_coherent():
    J, A, e, c, _ = setup(XY)
    Q = QuadrupleCandidate(J, A.zero(2), EndoTensor(XY, CPLX), A.zero(3, FORM))
    rep = correspondence_suite(Q, A.zero(2, FORM), QUICK)
    assert rep.coherent


# -- tangent and contact

def test_e1_unit():
    E = build_e1(3)
    assert E.differential(E.algebroid.one()) == E.coframe(3)


def test_conformal_symplectic_examples():
    T = build_tangent(2, [1, 0])
    A = T.algebroid
    assert verify_conformal_symplectic(T, wedge(A.coframe(0), A.coframe(1)), [(0, 0)], QUICK).passed
    V = ("x1", "y1", "x2", "y2")
    for phi0, ok in ((None, True), ([1, 0, 0, 0], False)):
        T4 = build_tangent(V, phi0)
        B = T4.algebroid
        d = [B.coframe(i) for i in range(4)]
        omega = wedge(d[0], d[1]) + wedge(d[2], d[3])
        rep = verify_conformal_symplectic(T4, omega, [(0, 0, 0, 0)], QUICK)
        assert rep.passed == ok
        if not ok:
            assert T4.differential(omega) == wedge(d[0], wedge(d[2], d[3]))


def test_jacobi_pair_examples():
    M2 = LieAlgebroid.tangent(XY)
    assert verify_jacobi_pair(XY, wedge(M2.frame(0), M2.frame(1)), M2.zero(1)).passed
    assert verify_jacobi_pair(XY, M2.zero(2), M2.frame(0)).passed
    M3 = LieAlgebroid.tangent(XYZ)
    rep = verify_jacobi_pair(XYZ, wedge(M3.frame(0), M3.frame(1)), M3.frame(2))
    assert not rep.passed


def test_almost_contact_examples():
    J, A, e, c, (x, y, z) = setup(XYZ)
    std = ContactTriple(EndoTensor(XYZ, [[0, -1, 0], [1, 0, 0], [0, -y, 0]]), e[2], c[2] - c[0].scale(y))
    assert verify_almost_contact(std).passed
    const = ContactTriple(EndoTensor(XYZ, [[0, -1, 0], [1, 0, 0], [0, 0, 0]]), e[2], c[2])
    assert verify_almost_contact(const).passed
    assert verify_normal_contact(const, QUICK).passed
    rep = verify_almost_contact(ContactTriple(const.phi, e[0], c[2]))
    assert rep.status_of("eta(Y) = 1") == "fail"


def test_contact_form_examples():
    J, A, e, c, (x, y, z) = setup(XYZ)
    eta = c[2] - c[0].scale(y)
    assert verify_contact_form(XYZ, eta, wedge(c[0], c[1]), [(0, 0, 0)], QUICK).passed
    rep = verify_contact_form(XYZ, eta, wedge(c[0], c[1]).scale(2), [(0, 0, 0)], QUICK)
    assert rep.status_of("d Theta = 0") == "fail"
    E = build_e1(XYZ)
    res = rep.checks[1].violations[0].value
    from jacobi_qn.contact import lift_e1
    assert res == wedge(E.coframe(3), lift_e1(E, wedge(c[0], c[1])))
    line = LieAlgebroid.tangent(("z",))
    assert verify_contact_form(("z",), line.coframe(0), line.zero(2, FORM), [(0,)], QUICK).passed
