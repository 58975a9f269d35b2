"""Trivialized Lie and Jacobi algebroids over a coordinate chart.

A :class:`LieAlgebroid` is given by its anchor matrix and structure functions
in a global frame.  Its sections may be multivectors (the usual case) or
forms; the latter is how the dual algebroid ``A*_π`` of a Jacobi bivector is
modelled, so every routine here is written against the *section variance*
rather than assuming ``A`` itself.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .report import Report, Violation
from .symalg import (
    FORM,
    MV,
    KVector,
    PolyFn,
    contract,
    dual_variance,
    kv_sum,
    poly_sum,
    sort_sign,
    wedge,
    wedge_all,
)


def coordinate_labels(vars: Sequence[str], variance: str) -> List[str]:
    return [f"d/d{v}" if variance == MV else f"d{v}" for v in vars]


class FirstOrderOp:
    """Operator ``f ↦ V(f) + s·f`` with polynomial vector part ``V`` and scalar part ``s``."""

    __slots__ = ("vars", "vector", "scalar")

    def __init__(self, vars: Sequence[str], vector: Sequence[PolyFn], scalar: Optional[PolyFn] = None):
        self.vars = tuple(vars)
        if len(vector) != len(self.vars):
            raise ValueError("vector part must have one entry per coordinate")
        self.vector = tuple(vector)
        self.scalar = scalar if scalar is not None else PolyFn.zero(self.vars)

    @classmethod
    def zero(cls, vars) -> "FirstOrderOp":
        z = PolyFn.zero(vars)
        return cls(vars, [z] * len(tuple(vars)), z)

    def derive(self, f: PolyFn) -> PolyFn:
        """Vector part only."""
        return poly_sum((v * f.partial(l) for l, v in enumerate(self.vector) if v), self.vars)

    def __call__(self, f: PolyFn) -> PolyFn:
        return self.derive(f) + self.scalar * f

    def commutator(self, other: "FirstOrderOp") -> "FirstOrderOp":
        vec = [self.derive(w) - other.derive(v) for v, w in zip(self.vector, other.vector)]
        return FirstOrderOp(self.vars, vec, self.derive(other.scalar) - other.derive(self.scalar))

    def __add__(self, other: "FirstOrderOp") -> "FirstOrderOp":
        return FirstOrderOp(self.vars, [a + b for a, b in zip(self.vector, other.vector)],
                            self.scalar + other.scalar)

    def __neg__(self) -> "FirstOrderOp":
        return FirstOrderOp(self.vars, [-a for a in self.vector], -self.scalar)

    def __sub__(self, other: "FirstOrderOp") -> "FirstOrderOp":
        return self + (-other)

    def scale(self, f) -> "FirstOrderOp":
        return FirstOrderOp(self.vars, [a * f for a in self.vector], self.scalar * f)

    def is_zero(self) -> bool:
        return not self.scalar and not any(self.vector)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FirstOrderOp):
            return NotImplemented
        return self.vars == other.vars and self.vector == other.vector and self.scalar == other.scalar

    def __hash__(self):
        return hash((self.vars, self.vector, self.scalar))

    def format(self) -> str:
        parts = []
        for name, v in zip(self.vars, self.vector):
            if v:
                parts.append(f"({v})*d/d{name}")
        if self.scalar:
            parts.append(f"({self.scalar})")
        return " + ".join(parts) if parts else "0"

    __str__ = format


class LieAlgebroid:
    """Lie algebroid structure on the trivial bundle of rank ``r`` over ``R^m``.

    ``anchor[i][l]`` is the ``∂/∂x_l`` component of ``a(e_i)``;
    ``structure[i][j][k]`` is ``c^k_{ij}`` in ``[e_i, e_j] = Σ_k c^k_{ij} e_k``.
    Nothing is validated beyond shapes; see :func:`verify_lie_algebroid`.
    """

    def __init__(self, vars: Sequence[str], anchor, structure, variance: str = MV,
                 labels: Optional[Sequence[str]] = None, form_labels: Optional[Sequence[str]] = None):
        self.vars = tuple(vars)
        m = len(self.vars)

        def poly(c):
            return c if isinstance(c, PolyFn) else PolyFn.const(self.vars, c)

        self.anchor = tuple(tuple(poly(c) for c in row) for row in anchor)
        r = len(self.anchor)
        if any(len(row) != m for row in self.anchor):
            raise ValueError(f"anchor rows must have {m} entries")
        self.structure = tuple(tuple(tuple(poly(c) for c in s_ij) for s_ij in row) for row in structure)
        if len(self.structure) != r or any(len(row) != r or any(len(s) != r for s in row)
                                           for row in self.structure):
            raise ValueError(f"structure functions must form an {r}x{r}x{r} array")
        self.rank = r
        self.variance = dual_variance(dual_variance(variance))
        self.form_variance = dual_variance(self.variance)
        if labels is None:
            labels = [f"e{i + 1}" if self.variance == MV else f"e^{i + 1}" for i in range(r)]
        if form_labels is None:
            form_labels = [f"e^{i + 1}" if self.variance == MV else f"e{i + 1}" for i in range(r)]
        self.labels = list(labels)
        self.form_labels = list(form_labels)
        self._frame_brackets: Dict[Tuple[int, int], KVector] = {}

    # -- builders -----------------------------------------------------
    @classmethod
    def tangent(cls, vars: Sequence[str]) -> "LieAlgebroid":
        vars = tuple(vars)
        m = len(vars)
        anchor = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        structure = [[[0] * m for _ in range(m)] for _ in range(m)]
        return cls(vars, anchor, structure, MV, coordinate_labels(vars, MV), coordinate_labels(vars, FORM))

    @classmethod
    def abelian(cls, vars: Sequence[str], rank: int, variance: str = MV) -> "LieAlgebroid":
        m = len(tuple(vars))
        return cls(vars, [[0] * m for _ in range(rank)], [[[0] * rank for _ in range(rank)] for _ in range(rank)],
                   variance)

    @classmethod
    def from_brackets(cls, vars, anchor, brackets: Dict[Tuple[int, int], Sequence], variance: str = MV,
                      **kw) -> "LieAlgebroid":
        """Structure functions from ``{(i, j): components of [e_i, e_j]}`` for ``i < j``."""
        r = len(anchor)
        vars = tuple(vars)
        z = PolyFn.zero(vars)
        st = [[[z] * r for _ in range(r)] for _ in range(r)]
        for (i, j), comps in brackets.items():
            comps = [c if isinstance(c, PolyFn) else PolyFn.const(vars, c) for c in comps]
            st[i][j] = list(comps)
            st[j][i] = [-c for c in comps]
        return cls(vars, anchor, st, variance, **kw)

    # -- elements -----------------------------------------------------
    def section(self, components: Sequence) -> KVector:
        return KVector.from_components(self.vars, self.rank, self.variance, components)

    def frame(self, i: int, coeff=1) -> KVector:
        return KVector.basis(self.vars, self.rank, (i,), self.variance, coeff)

    def coframe(self, i: int, coeff=1) -> KVector:
        return KVector.basis(self.vars, self.rank, (i,), self.form_variance, coeff)

    def function(self, f, variance: Optional[str] = None) -> KVector:
        if not isinstance(f, PolyFn):
            f = PolyFn.const(self.vars, f)
        return KVector.function(f, self.rank, variance or self.form_variance)

    def one(self) -> KVector:
        return self.function(1)

    def zero(self, degree: int, variance: Optional[str] = None) -> KVector:
        return KVector.zero(self.vars, self.rank, degree, variance or self.variance)

    def fmt(self, v: KVector) -> str:
        return v.format(self.labels if v.variance == self.variance else self.form_labels)

    def _check_section(self, X: KVector, degree: Optional[int] = 1, variance: Optional[str] = None):
        variance = variance or self.variance
        if not isinstance(X, KVector):
            raise TypeError(f"expected KVector, got {type(X).__name__}")
        if X.rank != self.rank or X.vars != self.vars:
            raise ValueError(f"dimension mismatch: algebroid has rank {self.rank} over {self.vars}, "
                             f"element has rank {X.rank} over {X.vars}")
        if X.variance != variance:
            raise ValueError(f"expected {variance} element, got {X.variance}")
        if degree is not None and X.degree != degree:
            raise ValueError(f"expected degree {degree}, got {X.degree}")

    # -- anchor -------------------------------------------------------
    def anchor_frame(self, i: int, f: PolyFn) -> PolyFn:
        return poly_sum((a * f.partial(l) for l, a in enumerate(self.anchor[i]) if a), self.vars)

    def anchor_vector(self, X: KVector) -> List[PolyFn]:
        self._check_section(X)
        comps = X.components()
        return [poly_sum((comps[i] * self.anchor[i][l] for i in range(self.rank)
                          if comps[i] and self.anchor[i][l]), self.vars) for l in range(len(self.vars))]

    def anchor_op(self, X: KVector) -> FirstOrderOp:
        return FirstOrderOp(self.vars, self.anchor_vector(X))

    def anchor_apply(self, X: KVector, f: PolyFn) -> PolyFn:
        return poly_sum((c * self.anchor_frame(i, f) for (i,), c in X.terms.items()), self.vars)

    # -- bracket ------------------------------------------------------
    def frame_bracket(self, i: int, j: int) -> KVector:
        key = (i, j)
        b = self._frame_brackets.get(key)
        if b is None:
            b = KVector(self.vars, self.rank, 1, self.variance,
                        {(k,): c for k, c in enumerate(self.structure[i][j]) if c})
            self._frame_brackets[key] = b
        return b

    def bracket(self, X: KVector, Y: KVector) -> KVector:
        self._check_section(X)
        self._check_section(Y)
        parts = []
        for (i,), f in X.terms.items():
            for (j,), g in Y.terms.items():
                parts.append(self.frame_bracket(i, j).scale(f * g))
                ag = self.anchor_frame(i, g)
                if ag:
                    parts.append(self.frame(j, f * ag))
                af = self.anchor_frame(j, f)
                if af:
                    parts.append(self.frame(i, -(g * af)))
        return kv_sum(parts, self.zero(1))

    def _factors(self, P: KVector) -> List[List[KVector]]:
        # each term c e_{i1}∧…∧e_{ip} as the list [c e_{i1}, e_{i2}, …]
        out = []
        for idx, c in P.terms.items():
            out.append([self.frame(idx[0], c)] + [self.frame(i) for i in idx[1:]])
        return out

    def schouten(self, P: KVector, Q: KVector) -> KVector:
        """Schouten bracket extending the algebroid bracket; degree ``p + q - 1``."""
        self._check_section(P, None)
        self._check_section(Q, None)
        p, q = P.degree, Q.degree
        if p == 0 and q == 0:
            return self.zero(-1)
        if q == 0:
            dg = self.differential(KVector.function(Q.as_function(), self.rank, self.form_variance))
            out = contract(dg, P)
            return out if (p - 1) % 2 == 0 else -out
        if p == 0:
            df = self.differential(KVector.function(P.as_function(), self.rank, self.form_variance))
            return -contract(df, Q)
        parts = []
        for xs in self._factors(P):
            for ys in self._factors(Q):
                for a, Xa in enumerate(xs):
                    for b, Yb in enumerate(ys):
                        br = self.bracket(Xa, Yb)
                        if not br:
                            continue
                        term = wedge_all([br] + xs[:a] + xs[a + 1:] + ys[:b] + ys[b + 1:])
                        parts.append(term if (a + b) % 2 == 0 else -term)
        return kv_sum(parts, self.zero(p + q - 1))

    # -- differential -------------------------------------------------
    def differential(self, w: KVector, scalar: Optional[Sequence[PolyFn]] = None) -> KVector:
        """Chevalley–Eilenberg differential; ``scalar[i]`` adds ``s_i·f`` to ``ρ(e_i)f``."""
        self._check_section(w, None, self.form_variance)
        k = w.degree
        r = self.rank
        if k == -1:
            return KVector.zero(self.vars, r, 0, self.form_variance)
        if k + 1 > r:
            return KVector.zero(self.vars, r, k + 1, self.form_variance)

        def rho(i, f):
            out = self.anchor_frame(i, f)
            if scalar is not None and scalar[i]:
                out = out + scalar[i] * f
            return out

        out = {}
        for I in combinations(range(r), k + 1):
            acc = []
            for l, il in enumerate(I):
                c = w.terms.get(I[:l] + I[l + 1:])
                if c is not None:
                    t = rho(il, c)
                    if t:
                        acc.append(t if l % 2 == 0 else -t)
            if k >= 1:
                for l in range(k + 1):
                    for s in range(l + 1, k + 1):
                        rest = I[:l] + I[l + 1:s] + I[s + 1:]
                        for cidx, coef in enumerate(self.structure[I[l]][I[s]]):
                            if not coef:
                                continue
                            sign, key = sort_sign((cidx,) + rest)
                            wc = w.terms.get(key) if sign else None
                            if wc is None:
                                continue
                            t = coef * wc
                            acc.append(t if sign * (-1) ** (l + s) > 0 else -t)
            v = poly_sum(acc, self.vars)
            if v:
                out[I] = v
        return KVector._raw(self.vars, r, k + 1, self.form_variance, out)

    def interior(self, X: KVector, w: KVector) -> KVector:
        self._check_section(X)
        return contract(X, w)

    def lie_derivative(self, X: KVector, w: KVector) -> KVector:
        """Classical ``L_X = i_X d + d i_X``."""
        return self.interior(X, self.differential(w)) + self.differential(self.interior(X, w))

    def __repr__(self):
        return f"LieAlgebroid(rank={self.rank}, vars={self.vars}, variance={self.variance})"


class JacobiAlgebroid:
    """Lie algebroid with a 1-cocycle ``φ0``; representation ``ρ(X) = a(X) + φ0(X)``."""

    def __init__(self, algebroid: LieAlgebroid, cocycle: Optional[KVector] = None):
        self.algebroid = algebroid
        if cocycle is None:
            cocycle = algebroid.zero(1, algebroid.form_variance)
        algebroid._check_section(cocycle, 1, algebroid.form_variance)
        self.cocycle = cocycle
        self._scalar = cocycle.components()

    @classmethod
    def tangent(cls, vars: Sequence[str], phi0: Optional[Sequence] = None) -> "JacobiAlgebroid":
        A = LieAlgebroid.tangent(vars)
        if phi0 is None:
            return cls(A)
        if isinstance(phi0, KVector):
            return cls(A, phi0)
        return cls(A, KVector.from_components(A.vars, A.rank, FORM, phi0))

    @property
    def phi0(self) -> KVector:
        return self.cocycle

    def __getattr__(self, name):
        # geometry shared with the underlying algebroid
        if name in ("vars", "rank", "variance", "form_variance", "labels", "form_labels", "anchor",
                    "structure", "section", "frame", "coframe", "function", "one", "zero", "fmt",
                    "anchor_vector", "anchor_apply", "anchor_frame", "bracket", "frame_bracket",
                    "schouten", "interior", "_check_section"):
            return getattr(self.algebroid, name)
        raise AttributeError(name)

    def rho(self, X: KVector) -> FirstOrderOp:
        A = self.algebroid
        return FirstOrderOp(A.vars, A.anchor_vector(X), contract(X, self.cocycle).as_function())

    def rho_apply(self, X: KVector, f: PolyFn) -> PolyFn:
        return self.rho(X)(f)

    def differential(self, w: KVector) -> KVector:
        """``d^{φ0}``, the differential of the representation ``ρ``."""
        return self.algebroid.differential(w, self._scalar)

    def lie_differential(self, w: KVector) -> KVector:
        return self.algebroid.differential(w)

    def lie_derivative(self, X: KVector, w: KVector) -> KVector:
        """``ℒ_X = i_X d^{φ0} + d^{φ0} i_X``."""
        return contract(X, self.differential(w)) + self.differential(contract(X, w))

    def schouten_jacobi(self, P: KVector, Q: KVector) -> KVector:
        """``⟦P,Q⟧ = [P,Q]' + (-1)^{p+1}(p-1) P∧i_{φ0}Q - (q-1) i_{φ0}P∧Q``.

        ``[P,Q]' = (-1)^{p+1}[P,Q]`` is the Schouten bracket in the sign
        convention with ``[P,Q]' = (-1)^{pq}[Q,P]'``, so ``⟦π,f⟧ = π^♯(d^{φ0}f)``.
        Only with this convention do the φ0-terms make ``⟦·,·⟧`` graded
        antisymmetric and turn ``π^♯⟦ξ,η⟧_π - [π^♯ξ,π^♯η] = ½⟦π,π⟧(ξ,η,·)``
        into an identity.
        """
        p, q = P.degree, Q.degree
        out = self.algebroid.schouten(P, Q)
        if p % 2 == 0:
            out = -out
        if not self.cocycle:
            return out
        if p != 1 and q >= 1:
            t = wedge(P, contract(self.cocycle, Q)).scale(p - 1)
            out = out + (t if (p + 1) % 2 == 0 else -t)
        if q != 1 and p >= 1:
            out = out - wedge(contract(self.cocycle, P), Q).scale(q - 1)
        return out

    def __repr__(self):
        return f"JacobiAlgebroid({self.algebroid!r}, phi0={self.algebroid.fmt(self.cocycle)})"


def _host(A):
    return A.algebroid if isinstance(A, JacobiAlgebroid) else A


# -- functional interface ------------------------------------------------

def bracket(A, X: KVector, Y: KVector) -> KVector:
    return _host(A).bracket(X, Y)


def schouten_bracket(A, P: KVector, Q: KVector) -> KVector:
    return _host(A).schouten(P, Q)


def differential(A, w: KVector) -> KVector:
    """Lie algebroid differential, or ``d^{φ0}`` for a Jacobi algebroid."""
    return A.differential(w)


def lie_derivative(J, X: KVector, w: KVector) -> KVector:
    return J.lie_derivative(X, w)


def schouten_jacobi_bracket(J: JacobiAlgebroid, P: KVector, Q: KVector) -> KVector:
    return J.schouten_jacobi(P, Q)


# -- verifiers -----------------------------------------------------------

def derivation_defect(J: JacobiAlgebroid, delta, P: KVector, Q: KVector) -> KVector:
    """``δ⟦P,Q⟧ + ⟦δP,Q⟧ - (-1)^{p+1}⟦P,δQ⟧``.

    This is the degree-1 derivation rule for the Koszul-signed bracket
    ``(-1)^{p+1}⟦P,Q⟧``.
    """
    br = J.schouten_jacobi
    out = delta(br(P, Q)) + br(delta(P), Q)
    t = br(P, delta(Q))
    return out - t if P.degree % 2 == 1 else out + t


def _vector_field_bracket(vars, V: Sequence[PolyFn], W: Sequence[PolyFn]) -> List[PolyFn]:
    return [poly_sum([v * W[l].partial(k) for k, v in enumerate(V) if v]
                     + [-(w * V[l].partial(k)) for k, w in enumerate(W) if w], vars)
            for l in range(len(vars))]


def verify_lie_algebroid(A) -> Report:
    """Antisymmetry, anchor homomorphism and Jacobi identity on frame sections.

    With the Leibniz rule built into :meth:`LieAlgebroid.bracket`, the Jacobi
    identity on frame triples implies it for all sections.
    """
    A = _host(A)
    rep = Report("Lie algebroid")
    r = A.rank
    lab = A.labels
    bad = []
    for i in range(r):
        for j in range(i, r):
            res = A.frame_bracket(i, j) + A.frame_bracket(j, i)
            if res:
                bad.append(Violation((lab[i], lab[j]), A.fmt(res), res))
    rep.add("antisymmetry", bad)

    bad = []
    for i in range(r):
        for j in range(i + 1, r):
            lhs = A.anchor_vector(A.frame_bracket(i, j))
            rhs = _vector_field_bracket(A.vars, A.anchor[i], A.anchor[j])
            res = FirstOrderOp(A.vars, [a - b for a, b in zip(lhs, rhs)])
            if not res.is_zero():
                bad.append(Violation((lab[i], lab[j]), res.format(), res))
    rep.add("anchor homomorphism", bad)

    bad = []
    for i, j, k in combinations(range(r), 3):
        ei, ej, ek = A.frame(i), A.frame(j), A.frame(k)
        res = (A.bracket(A.bracket(ei, ej), ek) + A.bracket(A.bracket(ej, ek), ei)
               + A.bracket(A.bracket(ek, ei), ej))
        if res:
            bad.append(Violation((lab[i], lab[j], lab[k]), A.fmt(res), res))
    rep.add("Jacobi identity", bad, detail="frame triples; sufficient with the Leibniz rule")
    return rep


def verify_cocycle(J: JacobiAlgebroid) -> Report:
    rep = Report("1-cocycle")
    res = J.lie_differential(J.cocycle)
    rep.add("d phi0 = 0", [Violation(("phi0",), J.fmt(res), res)] if res else [])
    return rep


class GlValuedForm:
    """``gl(n)``-valued 1-form: ``entries[i]`` is the ``n×n`` matrix ``θ(e_i)``."""

    def __init__(self, vars: Sequence[str], entries: Sequence[Sequence[Sequence]]):
        self.vars = tuple(vars)
        if not entries:
            raise ValueError("need at least one entry")
        n = len(entries[0])
        mats = []
        for idx, mat in enumerate(entries):
            if len(mat) != n or any(len(row) != n for row in mat):
                raise ValueError(f"entry {idx} is not {n}x{n}: fiber dimensions disagree")
            mats.append(tuple(tuple(c if isinstance(c, PolyFn) else PolyFn.const(self.vars, c) for c in row)
                              for row in mat))
        self.entries = tuple(mats)
        self.rank = len(mats)
        self.fiber_dim = n

    @classmethod
    def from_form(cls, w: KVector) -> "GlValuedForm":
        """Rank-one fiber: a scalar 1-form."""
        return cls(w.vars, [[[c]] for c in w.components()])

    def __eq__(self, other) -> bool:
        return isinstance(other, GlValuedForm) and self.vars == other.vars and self.entries == other.entries

    __hash__ = None


def _mat_mul(vars, a, b):
    n = len(a)
    return [[poly_sum((a[i][t] * b[t][j] for t in range(n)), vars) for j in range(n)] for i in range(n)]


def _mat_fmt(m) -> str:
    return "[" + "; ".join(", ".join(str(c) for c in row) for row in m) + "]"


def check_maurer_cartan(A, theta: GlValuedForm) -> Report:
    """``dθ + ½[θ∧θ] = 0`` and, independently, ``[ρ(e_i),ρ(e_j)] = ρ([e_i,e_j])`` for ``ρ = a + θ``."""
    A = _host(A)
    if theta.rank != A.rank or theta.vars != A.vars:
        raise ValueError("GlValuedForm rank or coordinates do not match the algebroid")
    vars, r, n = A.vars, A.rank, theta.fiber_dim
    th = theta.entries
    rep = Report("Maurer-Cartan")
    bad = []
    for i in range(r):
        for j in range(i + 1, r):
            ij = _mat_mul(vars, th[i], th[j])
            ji = _mat_mul(vars, th[j], th[i])
            res = [[poly_sum([A.anchor_frame(i, th[j][a][b]), -A.anchor_frame(j, th[i][a][b]),
                              ij[a][b], -ji[a][b]]
                             + [-(c * th[k][a][b]) for k, c in enumerate(A.structure[i][j]) if c], vars)
                    for b in range(n)] for a in range(n)]
            if any(c for row in res for c in row):
                bad.append(Violation((A.labels[i], A.labels[j]), _mat_fmt(res), res))
    rep.add("d theta + 1/2 [theta, theta] = 0", bad)

    # operator form, on the test sections eps_l and x_k eps_l
    def rho(i, s):
        return [poly_sum([A.anchor_frame(i, s[a])] + [th[i][a][b] * s[b] for b in range(n) if s[b]], vars)
                for a in range(n)]

    tests = []
    for l in range(n):
        for f in [PolyFn.const(vars, 1)] + [PolyFn.var(vars, v) for v in vars]:
            tests.append((str(f), l, [f if a == l else PolyFn.zero(vars) for a in range(n)]))
    bad = []
    for i in range(r):
        for j in range(i + 1, r):
            for label, l, s in tests:
                lhs = [a - b for a, b in zip(rho(i, rho(j, s)), rho(j, rho(i, s)))]
                rhs = [poly_sum(parts, vars) for parts in zip(*[
                    [c * v for v in rho(k, s)] for k, c in enumerate(A.structure[i][j]) if c
                ])] if any(A.structure[i][j]) else [PolyFn.zero(vars)] * n
                res = [a - b for a, b in zip(lhs, rhs)]
                if any(res):
                    bad.append(Violation((A.labels[i], A.labels[j], f"({label})*eps{l + 1}"),
                                         "[" + ", ".join(str(c) for c in res) + "]", res))
                    break
    rep.add("[rho(e_i), rho(e_j)] = rho([e_i, e_j])", bad,
            detail="agrees with the form check whenever the anchor is a homomorphism")
    return rep
