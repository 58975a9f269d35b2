from fractions import Fraction

import pytest
from hypothesis import given

from jacobi_qn.parse import ParseError, basis_symbols, parse_kvector, parse_point, parse_points, parse_poly
from jacobi_qn.symalg import FORM, MV, KVector, PolyFn, wedge

from conftest import XYZ, kvectors, polys

x, y, z = (PolyFn.var(XYZ, v) for v in XYZ)
MVL = ["d/dx", "d/dy", "d/dz"]
FL = ["dx", "dy", "dz"]
BASIS = basis_symbols(XYZ, MVL, FL)


def test_polynomial_grammar():
    assert parse_poly("x^2*y - 3/2*z + 1", XYZ) == x * x * y - z * Fraction(3, 2) + PolyFn.const(XYZ, 1)
    assert parse_poly("(x + y)^2", XYZ) == (x + y) * (x + y)
    assert parse_poly("-(x - y)/4", XYZ) == (y - x) * Fraction(1, 4)
    assert parse_poly("0", XYZ) == PolyFn.zero(XYZ)


def test_kvector_grammar():
    E = [KVector.basis(XYZ, 3, (i,), MV) for i in range(3)]
    got = parse_kvector("y*d/dx^d/dz - d/dy^d/dx", XYZ, 3, 2, MV, BASIS)
    assert got == wedge(E[0], E[2]).scale(y) + wedge(E[0], E[1])
    # star between positive-degree elements is also a wedge
    assert parse_kvector("d/dx*d/dz", XYZ, 3, 2, MV, BASIS) == wedge(E[0], E[2])
    # frame names e1..en are accepted
    assert parse_kvector("e1^e3", XYZ, 3, 2, MV, BASIS) == wedge(E[0], E[2])
    e = [KVector.basis(XYZ, 3, (i,), FORM) for i in range(3)]
    assert parse_kvector("dz - y*dx", XYZ, 3, 1, FORM, BASIS) == e[2] - e[0].scale(y)


@pytest.mark.parametrize("text, message, col", [
    ("x^-1", "exponents must be nonnegative integer literals", 3),
    ("x/y", "division is only by an integer literal", 3),
    ("w + 1", "unknown coordinate", 1),
    ("(x + y", "expected ')'", 7),
    ("x $ y", "unexpected character", 3),
])
def test_poly_errors_are_located(text, message, col):
    with pytest.raises(ParseError) as info:
        parse_poly(text, XYZ)
    err = info.value
    assert message in err.message
    assert err.pos + 1 == col
    assert err.render().splitlines()[-1].index("^") == 2 + err.pos


def test_kvector_errors():
    with pytest.raises(ParseError, match="unknown basis symbol"):
        parse_kvector("d/dw", XYZ, 3, 1, MV, BASIS)
    with pytest.raises(ParseError, match="cannot add terms of degree"):
        parse_kvector("d/dx + d/dx^d/dy", XYZ, 3, 2, MV, BASIS)
    with pytest.raises(ParseError, match="expected degree 2"):
        parse_kvector("d/dx", XYZ, 3, 2, MV, BASIS)


def test_located_error_reports_line_and_column():
    try:
        parse_poly("x^-1", XYZ)
    except ParseError as e:
        loc = e.located(8, 7)
    assert str(loc).startswith("line 8, column 9: exponents")


def test_points():
    assert parse_point("(1, 1/2, -3)", 3) == (1, Fraction(1, 2), -3)
    assert parse_points("(0,0,0);(1,2,3)", 3) == [(0, 0, 0), (1, 2, 3)]
    with pytest.raises(ParseError, match="expected 3"):
        parse_point("(1,2)", 3)
    with pytest.raises(ParseError, match="not a rational"):
        parse_point("(1,a,2)", 3)


@given(polys(degree=3))
def test_poly_print_parse_round_trip(f):
    assert parse_poly(str(f), XYZ) == f


@given(kvectors(degree=2, variance=MV))
def test_bivector_print_parse_round_trip(P):
    assert parse_kvector(P.format(MVL), XYZ, 3, 2, MV, BASIS) == P


@given(kvectors(degree=1, variance=FORM))
def test_form_print_parse_round_trip(a):
    assert parse_kvector(a.format(FL), XYZ, 3, 1, FORM, BASIS) == a
