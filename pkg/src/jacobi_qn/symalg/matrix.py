"""Square matrices of polynomials: determinant, adjugate, exact inverse."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .poly import PolyFn, poly_sum

Matrix = List[List[PolyFn]]


def det(m: Sequence[Sequence[PolyFn]]) -> PolyFn:
    """Determinant by cofactor expansion along the sparsest row (sizes here are ≤ 6)."""
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    vars = m[0][0].vars
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    row = min(range(n), key=lambda i: sum(1 for c in m[i] if c))
    terms = []
    for j in range(n):
        c = m[row][j]
        if not c:
            continue
        minor = [[m[i][k] for k in range(n) if k != j] for i in range(n) if i != row]
        t = c * det(minor)
        terms.append(t if (row + j) % 2 == 0 else -t)
    return poly_sum(terms, vars)


def adjugate(m: Sequence[Sequence[PolyFn]]) -> Matrix:
    n = len(m)
    vars = m[0][0].vars
    if n == 1:
        return [[PolyFn.const(vars, 1)]]
    adj = [[PolyFn.zero(vars)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[a][b] for b in range(n) if b != j] for a in range(n) if a != i]
            c = det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def constant_inverse(m: Sequence[Sequence[PolyFn]]) -> Optional[Matrix]:
    """Polynomial inverse when ``det m`` is a nonzero constant, else ``None``."""
    d = det(m)
    if not d.is_constant() or d.is_zero():
        return None
    inv = Fraction(1) / d.constant_value()
    return [[c * inv for c in row] for row in adjugate(m)]


def matmul(a: Sequence[Sequence[PolyFn]], b: Sequence[Sequence[PolyFn]]) -> Matrix:
    vars = a[0][0].vars
    n, k, p = len(a), len(b), len(b[0])
    return [[poly_sum((a[i][t] * b[t][j] for t in range(k)), vars) for j in range(p)] for i in range(n)]


def identity(vars, n: int) -> Matrix:
    return [[PolyFn.const(vars, 1 if i == j else 0) for j in range(n)] for i in range(n)]
