import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from jacobi_qn.symalg import FORM, MV, KVector, PolyFn

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("default")

XY = ("x", "y")
XYZ = ("x", "y", "z")

coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def polys(draw, vars=XYZ, degree=2, max_terms=4):
    n = len(vars)
    exps = st.tuples(*[st.integers(0, degree) for _ in range(n)]).filter(lambda e: sum(e) <= degree)
    terms = draw(st.dictionaries(exps, coeffs, max_size=max_terms))
    return PolyFn(vars, terms)


@st.composite
def kvectors(draw, vars=XYZ, rank=3, degree=1, variance=MV, poly_degree=1):
    from itertools import combinations
    idxs = list(combinations(range(rank), degree))
    chosen = draw(st.lists(st.sampled_from(idxs), unique=True, max_size=len(idxs))) if idxs else []
    terms = {i: draw(polys(vars, poly_degree, 3)) for i in chosen}
    return KVector(vars, rank, degree, variance, terms)


@pytest.fixture
def rng():
    return random.Random(20240917)


def random_almost_contact(rng: random.Random, vars=XYZ, steps: int = 3):
    """The standard triple conjugated by a random unimodular polynomial frame change."""
    from jacobi_qn.contact import ContactTriple
    from jacobi_qn.sampling import random_unimodular
    from jacobi_qn.symalg import EndoTensor, constant_inverse, matmul

    n = len(vars)
    g = random_unimodular(rng, vars, n, steps, 1)
    ginv = constant_inverse(g)
    zero, one = PolyFn.zero(vars), PolyFn.const(vars, 1)
    phi0 = [[zero] * n for _ in range(n)]
    for k in range(0, n - 1, 2):
        phi0[k][k + 1], phi0[k + 1][k] = -one, one
    phi = matmul(matmul(g, phi0), ginv)
    Y = KVector.from_components(vars, n, MV, [g[i][n - 1] for i in range(n)])
    eta = KVector.from_components(vars, n, FORM, [ginv[n - 1][j] for j in range(n)])
    return ContactTriple(EndoTensor(vars, phi), Y, eta)
