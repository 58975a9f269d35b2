"""Seeded generators of random polynomials, sections and valid algebroids."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Sequence

from .algebroid import JacobiAlgebroid, LieAlgebroid
from .symalg import FORM, MV, KVector, PolyFn, constant_inverse, poly_sum
from .symalg.matrix import identity, matmul

COEFFS = [Fraction(n, d) for n in range(-3, 4) for d in (1, 2) if n]


def random_poly(rng: random.Random, vars: Sequence[str], degree: int = 2, nterms: int = 3) -> PolyFn:
    vars = tuple(vars)
    exps = [e for e in product(range(degree + 1), repeat=len(vars)) if sum(e) <= degree]
    terms = {}
    for _ in range(nterms):
        terms[rng.choice(exps)] = rng.choice(COEFFS)
    return PolyFn(vars, terms)


def random_kvector(rng: random.Random, vars: Sequence[str], rank: int, degree: int, variance: str,
                   poly_degree: int = 2, density: float = 0.6) -> KVector:
    terms = {}
    for idx in combinations(range(rank), degree):
        if rng.random() < density:
            terms[idx] = random_poly(rng, vars, poly_degree, 2)
    return KVector(vars, rank, degree, variance, terms)


def random_unimodular(rng: random.Random, vars: Sequence[str], n: int, steps: int = 3,
                      poly_degree: int = 1) -> List[List[PolyFn]]:
    """Product of elementary matrices ``I + p·E_ab``: polynomial with polynomial inverse."""
    g = identity(vars, n)
    for _ in range(steps if n > 1 else 0):
        a, b = rng.sample(range(n), 2)
        e = identity(vars, n)
        e[a][b] = random_poly(rng, vars, poly_degree, 2)
        g = matmul(g, e)
    return g


def change_frame(J, g: Sequence[Sequence[PolyFn]]):
    """Rewrite an algebroid (or Jacobi algebroid) in the frame ``f_i = Σ_j g[j][i] e_j``."""
    A = J.algebroid if isinstance(J, JacobiAlgebroid) else J
    ginv = constant_inverse(g)
    if ginv is None:
        raise ValueError("frame change must have constant nonzero determinant")
    r, vars = A.rank, A.vars
    cols = [A.section([g[j][i] for j in range(r)]) for i in range(r)]
    anchor = [A.anchor_vector(c) for c in cols]
    structure = []
    for i in range(r):
        row = []
        for k in range(r):
            old = A.bracket(cols[i], cols[k]).components()
            row.append([poly_sum((ginv[a][b] * old[b] for b in range(r)), vars) for a in range(r)])
        structure.append(row)
    B = LieAlgebroid(vars, anchor, structure, A.variance)
    if isinstance(J, JacobiAlgebroid):
        phi = J.cocycle.components()
        new = [poly_sum((g[j][i] * phi[j] for j in range(r)), vars) for i in range(r)]
        return JacobiAlgebroid(B, KVector.from_components(vars, r, B.form_variance, new))
    return B


# Lie algebras with their structure constants: name -> (dim, {(i, j): {k: c}})
LIE_ALGEBRAS = {
    "abelian1": (1, {}),
    "abelian2": (2, {}),
    "aff1": (2, {(0, 1): {1: 1}}),
    "heisenberg": (3, {(0, 1): {2: 1}}),
    "sl2": (3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}),
    "so3": (3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}),
}


def _structure_from(vars, n, offset, total, consts):
    st = [[[PolyFn.zero(vars)] * total for _ in range(total)] for _ in range(total)]
    for (i, j), out in consts.items():
        for k, c in out.items():
            st[offset + i][offset + j][offset + k] = PolyFn.const(vars, c)
            st[offset + j][offset + i][offset + k] = PolyFn.const(vars, -c)
    return st


def tangent_plus(vars: Sequence[str], algebra: str) -> LieAlgebroid:
    """``TM ⊕ (M × h)`` with ``h`` acting trivially."""
    vars = tuple(vars)
    m = len(vars)
    n, consts = LIE_ALGEBRAS[algebra]
    r = m + n
    anchor = [[1 if i == l else 0 for l in range(m)] for i in range(m)] + [[0] * m for _ in range(n)]
    return LieAlgebroid(vars, anchor, _structure_from(vars, n, m, r, consts))


# linear actions x ↦ -E x of matrix Lie algebras on R^m, as lists of matrices
def _action_algebra(m: int, name: str):
    def E(a, b):
        return [[1 if (i, j) == (a, b) else 0 for j in range(m)] for i in range(m)]

    if name == "diag":
        return [E(a, a) for a in range(m)]
    if name == "upper" and m >= 2:
        return [E(0, 0), E(0, 1), E(1, 1)]
    if name == "sl2" and m >= 2:
        h = [[1 if i == j == 0 else (-1 if i == j == 1 else 0) for j in range(m)] for i in range(m)]
        return [h, E(0, 1), E(1, 0)]
    if name == "so3" and m >= 3:
        def rot(a, b):
            return [[(1 if (i, j) == (a, b) else -1 if (i, j) == (b, a) else 0) for j in range(m)]
                    for i in range(m)]
        return [rot(0, 1), rot(1, 2), rot(2, 0)]
    return None


def action_algebroid(vars: Sequence[str], name: str) -> Optional[LieAlgebroid]:
    vars = tuple(vars)
    m = len(vars)
    mats = _action_algebra(m, name)
    if mats is None:
        return None
    n = len(mats)
    x = [PolyFn.var(vars, v) for v in vars]
    anchor = [[poly_sum((x[j] * (-M[l][j]) for j in range(m) if M[l][j]), vars) for l in range(m)]
              for M in mats]
    # structure constants by solving [M_i, M_j] = Σ c_k M_k over the flattened entries
    flat = [[Fraction(M[a][b]) for a in range(m) for b in range(m)] for M in mats]
    st = [[[PolyFn.zero(vars)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            Mi, Mj = mats[i], mats[j]
            com = [Fraction(sum(Mi[a][t] * Mj[t][b] - Mj[a][t] * Mi[t][b] for t in range(m)))
                   for a in range(m) for b in range(m)]
            coeffs = _solve_span(flat, com)
            st[i][j] = [PolyFn.const(vars, c) for c in coeffs]
    return LieAlgebroid(vars, anchor, st)


def _solve_span(basis: List[List[Fraction]], target: List[Fraction]) -> List[Fraction]:
    # least-effort exact solve: Gaussian elimination on the (entries × basis) system
    n = len(basis)
    rows = [[basis[k][e] for k in range(n)] + [target[e]] for e in range(len(target))]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] for row in rows[r:]):
        raise ValueError("commutator leaves the span: not a subalgebra")
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][-1]
    return sol


def random_lie_algebroid(rng: random.Random, vars: Sequence[str], max_rank: int = 5,
                         frame_change: bool = True) -> LieAlgebroid:
    vars = tuple(vars)
    m = len(vars)
    options = [LieAlgebroid.tangent(vars)]
    for name in ("abelian1", "abelian2", "aff1", "heisenberg", "sl2", "so3"):
        if m + LIE_ALGEBRAS[name][0] <= max_rank:
            options.append(tangent_plus(vars, name))
    for name in ("diag", "upper", "sl2", "so3"):
        A = action_algebroid(vars, name)
        if A is not None and A.rank <= max_rank:
            options.append(A)
    A = rng.choice(options)
    if frame_change:
        A = change_frame(A, random_unimodular(rng, vars, A.rank))
    return A


def random_cocycle(rng: random.Random, A: LieAlgebroid, poly_degree: int = 2) -> KVector:
    """``d g`` for a random function ``g`` plus closed constant coframe elements."""
    out = A.differential(A.function(random_poly(rng, A.vars, poly_degree, 2)))
    for k in range(A.rank):
        w = A.coframe(k)
        if rng.random() < 0.5 and not A.differential(w):
            out = out + w.scale(rng.choice(COEFFS))
    return out


def random_jacobi_algebroid(rng: random.Random, vars: Sequence[str], max_rank: int = 5) -> JacobiAlgebroid:
    """Valid Jacobi algebroid; the frame change happens after choosing a closed ``φ0``."""
    A = random_lie_algebroid(rng, vars, max_rank, frame_change=False)
    J = JacobiAlgebroid(A, random_cocycle(rng, A))
    return change_frame(J, random_unimodular(rng, vars, A.rank))


def random_section(rng, A, degree: int = 1, poly_degree: int = 2, variance: Optional[str] = None) -> KVector:
    return random_kvector(rng, A.vars, A.rank, degree, variance or A.variance, poly_degree)


def random_form(rng, A, degree: int, poly_degree: int = 2) -> KVector:
    return random_kvector(rng, A.vars, A.rank, degree, A.form_variance, poly_degree)


def monomials(vars: Sequence[str], degree: int) -> List[PolyFn]:
    vars = tuple(vars)
    return [PolyFn.monomial(vars, e) for e in product(range(degree + 1), repeat=len(vars)) if sum(e) <= degree]


def default_vars(m: int) -> tuple:
    return tuple(f"x{i + 1}" for i in range(m))


__all__ = [
    "random_poly", "random_kvector", "random_unimodular", "change_frame", "tangent_plus",
    "action_algebroid", "random_lie_algebroid", "random_cocycle", "random_jacobi_algebroid",
    "random_section", "random_form", "monomials", "default_vars", "MV", "FORM",
]
