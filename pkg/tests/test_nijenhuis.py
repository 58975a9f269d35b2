import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobi_qn.algebroid import JacobiAlgebroid, LieAlgebroid
from jacobi_qn.nijenhuis import (
    QuadrupleCandidate, bracket_pi, d_n, d_n_split, dual_algebroid, flat, fundamental_identity_defect, musical_defect,
    pi_n, sharp, torsion, verify_jacobi_bivector, verify_quadruple,
)
from jacobi_qn.sampling import default_vars, random_form, random_jacobi_algebroid, random_section
from jacobi_qn.structure import load_structure
from jacobi_qn.symalg import FORM, EndoTensor, PolyFn, wedge

XYZ = ("x", "y", "z")
x, y, z = (PolyFn.var(XYZ, v) for v in XYZ)


def quad(name):
    sf = load_structure(name)
    o = sf.objects
    return sf, QuadrupleCandidate(sf.J, o["pi"], o["N"], o.get("phi", sf.J.algebroid.zero(3, FORM)))


def test_sharp_and_flat_conventions():
    A = LieAlgebroid.tangent(XYZ)
    pi = wedge(A.frame(0), A.frame(1))
    assert sharp(pi, A.coframe(0)) == A.frame(1)
    assert sharp(pi, A.coframe(1)) == -A.frame(0)
    sigma = wedge(A.coframe(0), A.coframe(2))
    assert flat(sigma, A.frame(0)) == A.coframe(2)


def test_constant_complex_structure_has_no_torsion():
    A = LieAlgebroid.tangent(("x", "y"))
    N = EndoTensor(A.vars, [[0, -1], [1, 0]])
    assert torsion(A, N).is_zero()


def test_torsion_of_a_non_integrable_endomorphism():
    # N = diag(y, 0): T(d/dx, d/dy) = -N[y d/dx, d/dy] = y d/dx
    A = LieAlgebroid.tangent(("x", "y"))
    Y = PolyFn.var(A.vars, "y")
    N = EndoTensor(A.vars, [[Y, 0], [0, 0]])
    T = torsion(A, N)
    assert not T.is_zero()
    assert T.table[(0, 1)] == A.frame(0, Y)


def test_linear_poisson_on_so3_dual():
    J = JacobiAlgebroid.tangent(XYZ)
    A = J.algebroid
    e = [A.frame(i) for i in range(3)]
    pi = wedge(e[0], e[1]).scale(z) + wedge(e[1], e[2]).scale(x) + wedge(e[2], e[0]).scale(y)
    assert verify_jacobi_bivector(J, pi).passed


def test_non_poisson_bivector_fails_with_residual():
    J = JacobiAlgebroid.tangent(XYZ)
    A = J.algebroid
    pi = wedge(A.frame(0), A.frame(1)) + wedge(A.frame(1), A.frame(2)).scale(y)
    rep = verify_jacobi_bivector(J, pi)
    assert not rep.passed
    assert J.schouten_jacobi(pi, pi)


def test_dual_algebroid_of_a_jacobi_bivector_is_lie():
    from jacobi_qn.algebroid import verify_cocycle, verify_lie_algebroid
    J = JacobiAlgebroid.tangent(XYZ)
    A = J.algebroid
    pi = wedge(A.frame(0), A.frame(1)).scale(z)
    D = dual_algebroid(J, pi)
    assert verify_lie_algebroid(D.algebroid).passed
    assert verify_cocycle(D).passed


@given(st.integers(0, 10_000))
def test_fundamental_identity_holds_for_any_bivector(seed):
    rng = random.Random(seed)
    J = random_jacobi_algebroid(rng, default_vars(2), 4)
    A = J.algebroid
    if A.rank < 2:
        return
    pi = random_section(rng, A, 2, 1)
    xi, eta = random_form(rng, A, 1, 1), random_form(rng, A, 1, 1)
    assert not fundamental_identity_defect(J, pi, xi, eta)


@given(st.integers(0, 10_000))
def test_bracket_pi_is_antisymmetric(seed):
    rng = random.Random(seed)
    J = random_jacobi_algebroid(rng, default_vars(2), 3)
    A = J.algebroid
    if A.rank < 2:
        return
    pi = random_section(rng, A, 2, 1)
    xi, eta = random_form(rng, A, 1, 1), random_form(rng, A, 1, 1)
    assert bracket_pi(J, pi, xi, eta) == -bracket_pi(J, pi, eta, xi)


@given(st.integers(0, 10_000))
def test_d_n_agrees_with_its_split_form(seed):
    rng = random.Random(seed)
    J = random_jacobi_algebroid(rng, default_vars(2), 3)
    A = J.algebroid
    N = EndoTensor(A.vars, [[random_form(rng, A, 0, 1).as_function() for _ in range(A.rank)]
                            for _ in range(A.rank)])
    for p in range(min(2, A.rank) + 1):
        w = random_form(rng, A, p, 1)
        assert d_n(J, N, w) == d_n_split(J, N, w)


@pytest.mark.parametrize("name", ["pn-r4-btransform", "gcs-complex-b-dt", "lcs-b-dt"])
def test_genuine_quadruples(name):
    sf, Q = quad(name)
    rep = verify_quadruple(Q)
    assert rep.passed, rep.format()
    assert not musical_defect(Q.pi, Q.N)
    assert not Q.J.schouten_jacobi(Q.pi, pi_n(Q.pi, Q.N))


@pytest.mark.parametrize("name", ["non-closed-phi", "torsion-mismatch", "broken-musical"])
def test_broken_quadruples(name):
    sf, Q = quad(name)
    rep = verify_quadruple(Q)
    assert not rep.passed
    assert rep.violations
