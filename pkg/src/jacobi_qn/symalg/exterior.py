"""Graded exterior algebra over a free module with polynomial coefficients.

A :class:`KVector` is a homogeneous element of ``∧^k A`` (variance ``"mv"``)
or ``∧^k A*`` (variance ``"form"``) written in a fixed frame.  Frame
monomials are stored as strictly increasing index tuples; the sign of every
reordering is absorbed at construction time.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .poly import PolyFn, as_fraction, poly_sum

MV = "mv"
FORM = "form"
VARIANCES = (MV, FORM)

Index = Tuple[int, ...]


def dual_variance(variance: str) -> str:
    if variance not in VARIANCES:
        raise ValueError(f"unknown variance {variance!r}")
    return FORM if variance == MV else MV


def sort_sign(seq: Sequence[int]) -> Tuple[int, Index]:
    """Sign and sorted tuple of an index sequence; sign 0 on repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(seq)


def _merge_sign(a: Index, b: Index) -> int:
    if set(a) & set(b):
        return 0
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return -1 if inversions & 1 else 1


class KVector:
    """Homogeneous exterior element with polynomial coefficients."""

    __slots__ = ("vars", "rank", "degree", "variance", "terms")

    def __init__(
        self,
        vars: Sequence[str],
        rank: int,
        degree: int,
        variance: str,
        terms: Optional[Mapping[Sequence[int], PolyFn]] = None,
    ):
        if variance not in VARIANCES:
            raise ValueError(f"unknown variance {variance!r}")
        if degree < -1:
            raise ValueError("degree must be >= -1")
        self.vars = tuple(vars)
        self.rank = rank
        self.degree = degree
        self.variance = variance
        clean: Dict[Index, PolyFn] = {}
        if terms:
            if degree == -1:
                if any(not c.is_zero() for c in terms.values()):
                    raise ValueError("degree -1 elements are always zero")
            for idx, c in terms.items():
                if len(idx) != degree:
                    raise ValueError(f"index {idx} has wrong length for degree {degree}")
                if any(not 0 <= i < rank for i in idx):
                    raise ValueError(f"index {idx} out of range for rank {rank}")
                if not isinstance(c, PolyFn):
                    c = PolyFn.const(self.vars, c)
                elif c.vars != self.vars:
                    raise ValueError("coefficient coordinates do not match")
                sign, key = sort_sign(idx)
                if sign == 0 or c.is_zero():
                    continue
                c = c if sign > 0 else -c
                prev = clean.get(key)
                c = c if prev is None else prev + c
                if c.is_zero():
                    clean.pop(key, None)
                else:
                    clean[key] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vars, rank, degree, variance, terms) -> "KVector":
        v = object.__new__(cls)
        v.vars = vars
        v.rank = rank
        v.degree = degree
        v.variance = variance
        v.terms = terms
        return v

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, vars, rank, degree, variance) -> "KVector":
        return cls._raw(tuple(vars), rank, degree, variance, {})

    @classmethod
    def basis(cls, vars, rank, idx: Sequence[int], variance: str, coeff=1) -> "KVector":
        return cls(vars, rank, len(idx), variance, {tuple(idx): coeff if isinstance(coeff, PolyFn) else PolyFn.const(vars, coeff)})

    @classmethod
    def function(cls, f: PolyFn, rank: int, variance: str) -> "KVector":
        """Degree-0 wrapper around a polynomial."""
        return cls._raw(f.vars, rank, 0, variance, {(): f} if f else {})

    @classmethod
    def from_components(cls, vars, rank, variance, components: Sequence) -> "KVector":
        """Degree-1 element from its list of frame components."""
        if len(components) != rank:
            raise ValueError(f"expected {rank} components, got {len(components)}")
        return cls(vars, rank, 1, variance, {(i,): c for i, c in enumerate(components)})

    def like(self, degree: int, terms=None, variance: Optional[str] = None) -> "KVector":
        return KVector(self.vars, self.rank, degree, variance or self.variance, terms)

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, idx) -> PolyFn:
        if isinstance(idx, int):
            idx = (idx,)
        sign, key = sort_sign(idx)
        if sign == 0:
            return PolyFn.zero(self.vars)
        c = self.terms.get(key)
        if c is None:
            return PolyFn.zero(self.vars)
        return c if sign > 0 else -c

    def components(self) -> list:
        """Frame components of a degree-1 element."""
        if self.degree != 1:
            raise ValueError("components() needs a degree-1 element")
        return [self[(i,)] for i in range(self.rank)]

    def as_function(self) -> PolyFn:
        if self.degree != 0:
            raise ValueError("not a degree-0 element")
        return self.terms.get((), PolyFn.zero(self.vars))

    def _check(self, other: "KVector", same_degree=True):
        if not isinstance(other, KVector):
            raise TypeError(f"expected KVector, got {type(other).__name__}")
        if other.rank != self.rank or other.vars != self.vars:
            raise ValueError("rank or coordinate mismatch")
        if other.variance != self.variance:
            raise ValueError("variance mismatch")
        if same_degree and other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    # -- linear structure ---------------------------------------------
    def __add__(self, other: "KVector") -> "KVector":
        self._check(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
        return KVector._raw(self.vars, self.rank, self.degree, self.variance, out)

    def __neg__(self) -> "KVector":
        return KVector._raw(self.vars, self.rank, self.degree, self.variance,
                            {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "KVector") -> "KVector":
        return self + (-other)

    def scale(self, f) -> "KVector":
        if not isinstance(f, PolyFn):
            f = as_fraction(f)
            if not f:
                return self.like(self.degree)
            return KVector._raw(self.vars, self.rank, self.degree, self.variance,
                                {k: c * f for k, c in self.terms.items()})
        out = {}
        for k, c in self.terms.items():
            p = f * c
            if p:
                out[k] = p
        return KVector._raw(self.vars, self.rank, self.degree, self.variance, out)

    def __mul__(self, f) -> "KVector":
        if isinstance(f, KVector):
            return NotImplemented
        return self.scale(f)

    __rmul__ = __mul__

    def __xor__(self, other: "KVector") -> "KVector":
        return wedge(self, other)

    def map_coeffs(self, fn: Callable[[PolyFn], PolyFn]) -> "KVector":
        return KVector(self.vars, self.rank, self.degree, self.variance,
                       {k: fn(c) for k, c in self.terms.items()})

    # -- identity -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, KVector):
            return NotImplemented
        return (self.vars == other.vars and self.rank == other.rank
                and self.degree == other.degree and self.variance == other.variance
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.vars, self.rank, self.degree, self.variance,
                     frozenset(self.terms.items())))

    def format(self, labels: Optional[Sequence[str]] = None) -> str:
        if not self.terms:
            return "0"
        if labels is None:
            labels = default_labels(self.rank, self.variance)
        parts = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            mono = "^".join(labels[i] for i in idx)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"KVector<{self.variance} deg {self.degree}>({self.format()})"


def default_labels(rank: int, variance: str) -> list:
    return [f"e{i + 1}" if variance == MV else f"e^{i + 1}" for i in range(rank)]


def kv_sum(items: Iterable[KVector], template: KVector) -> KVector:
    """Sum of same-shape elements, accumulated coefficientwise."""
    buckets: Dict[Index, list] = {}
    for v in items:
        template._check(v)
        for k, c in v.terms.items():
            buckets.setdefault(k, []).append(c)
    out = {}
    for k, cs in buckets.items():
        s = cs[0] if len(cs) == 1 else poly_sum(cs, template.vars)
        if s:
            out[k] = s
    return KVector._raw(template.vars, template.rank, template.degree, template.variance, out)


# -- products ---------------------------------------------------------

def wedge(P: KVector, Q: KVector) -> KVector:
    """Exterior product ``P ∧ Q``."""
    P._check(Q, same_degree=False)
    deg = P.degree + Q.degree
    if P.degree == -1 or Q.degree == -1:
        return P.like(max(deg, -1))
    if deg > P.rank:
        return KVector._raw(P.vars, P.rank, deg, P.variance, {})
    buckets: Dict[Index, list] = {}
    for a, ca in P.terms.items():
        for b, cb in Q.terms.items():
            s = _merge_sign(a, b)
            if not s:
                continue
            key = tuple(sorted(a + b))
            prod = ca * cb
            buckets.setdefault(key, []).append(prod if s > 0 else -prod)
    out = {}
    for k, cs in buckets.items():
        c = cs[0] if len(cs) == 1 else poly_sum(cs, P.vars)
        if c:
            out[k] = c
    return KVector._raw(P.vars, P.rank, deg, P.variance, out)


def wedge_all(items: Sequence[KVector]) -> KVector:
    out = items[0]
    for v in items[1:]:
        out = wedge(out, v)
    return out


def contract(a: KVector, P: KVector) -> KVector:
    """Interior product ``i_a P`` of a degree-1 element into the first slot.

    ``a`` and ``P`` have opposite variances; for decomposable ``P``
    ``i_a(X_1∧…∧X_p) = Σ_j (-1)^{j+1} a(X_j) X_1∧…X̂_j…∧X_p``.
    """
    if a.degree != 1:
        raise ValueError("contraction needs a degree-1 element in the first slot")
    if a.rank != P.rank or a.vars != P.vars:
        raise ValueError("rank or coordinate mismatch")
    if a.variance == P.variance:
        raise ValueError("contraction pairs opposite variances")
    if P.degree <= 0:
        return KVector._raw(P.vars, P.rank, max(P.degree - 1, -1), P.variance, {})
    buckets: Dict[Index, list] = {}
    for idx, c in P.terms.items():
        for j, i in enumerate(idx):
            ai = a.terms.get((i,))
            if ai is None:
                continue
            rest = idx[:j] + idx[j + 1:]
            term = ai * c
            buckets.setdefault(rest, []).append(term if j % 2 == 0 else -term)
    out = {}
    for k, cs in buckets.items():
        s = cs[0] if len(cs) == 1 else poly_sum(cs, P.vars)
        if s:
            out[k] = s
    return KVector._raw(P.vars, P.rank, P.degree - 1, P.variance, out)


def insert(P: KVector, *args: KVector) -> KVector:
    """Fill the leading slots: ``P(a_1, …, a_k, ·, …)``."""
    out = P
    for a in args:
        out = contract(a, out)
    return out


def pair(a: KVector, b: KVector) -> PolyFn:
    """Duality pairing of two degree-1 elements of opposite variance."""
    if a.degree != 1 or b.degree != 1:
        raise ValueError("pairing needs degree-1 elements")
    return contract(a, b).as_function()


def evaluate(P: KVector, *args: KVector) -> PolyFn:
    """Full evaluation ``P(a_1, …, a_p)``."""
    if len(args) != P.degree:
        raise ValueError(f"need {P.degree} arguments, got {len(args)}")
    return insert(P, *args).as_function() if P.degree else P.as_function()


def eval_at(P: KVector, point: Sequence) -> KVector:
    """Evaluate every coefficient at ``point``; result has constant coefficients."""
    if len(point) != len(P.vars):
        raise ValueError(f"point has {len(point)} entries, expected {len(P.vars)}")
    return KVector(P.vars, P.rank, P.degree, P.variance,
                   {k: PolyFn.const(P.vars, c.eval(point)) for k, c in P.terms.items()})


# -- (1,1)-tensors ------------------------------------------------------

class EndoTensor:
    """Bundle endomorphism given by its matrix in the frame.

    ``matrix[i][j]`` is the ``i``-th component of the image of the ``j``-th
    frame element.  ``variance`` names the bundle it acts on; the transpose
    acts on the dual bundle.
    """

    __slots__ = ("vars", "rank", "matrix", "variance")

    def __init__(self, vars, matrix: Sequence[Sequence], variance: str = MV):
        self.vars = tuple(vars)
        rows = [[c if isinstance(c, PolyFn) else PolyFn.const(self.vars, c) for c in row] for row in matrix]
        self.rank = len(rows)
        if any(len(row) != self.rank for row in rows):
            raise ValueError("endomorphism matrix must be square")
        if variance not in VARIANCES:
            raise ValueError(f"unknown variance {variance!r}")
        self.matrix = tuple(tuple(row) for row in rows)
        self.variance = variance

    @classmethod
    def identity(cls, vars, rank, variance=MV) -> "EndoTensor":
        return cls(vars, [[1 if i == j else 0 for j in range(rank)] for i in range(rank)], variance)

    @classmethod
    def zero(cls, vars, rank, variance=MV) -> "EndoTensor":
        return cls(vars, [[0] * rank for _ in range(rank)], variance)

    def transpose(self) -> "EndoTensor":
        n = self.rank
        return EndoTensor(self.vars, [[self.matrix[j][i] for j in range(n)] for i in range(n)],
                          dual_variance(self.variance))

    dual = transpose

    def apply(self, v: KVector) -> KVector:
        if v.degree != 1:
            raise ValueError("endomorphisms act on degree-1 elements")
        if v.rank != self.rank:
            raise ValueError("rank mismatch")
        if v.variance != self.variance:
            raise ValueError(f"this tensor acts on {self.variance} elements")
        comps = v.components()
        out = {}
        for i in range(self.rank):
            row = self.matrix[i]
            s = poly_sum((row[j] * comps[j] for j in range(self.rank) if comps[j] and row[j]), self.vars)
            if s:
                out[(i,)] = s
        return KVector._raw(self.vars, self.rank, 1, self.variance, out)

    def __call__(self, v: KVector) -> KVector:
        return self.apply(v)

    def compose(self, other: "EndoTensor") -> "EndoTensor":
        """``self ∘ other``."""
        if other.rank != self.rank or other.variance != self.variance:
            raise ValueError("incompatible endomorphisms")
        n = self.rank
        return EndoTensor(self.vars, [
            [poly_sum((self.matrix[i][k] * other.matrix[k][j] for k in range(n)), self.vars)
             for j in range(n)] for i in range(n)], self.variance)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other: "EndoTensor") -> "EndoTensor":
        n = self.rank
        return EndoTensor(self.vars, [[self.matrix[i][j] + other.matrix[i][j] for j in range(n)]
                                      for i in range(n)], self.variance)

    def __neg__(self) -> "EndoTensor":
        return EndoTensor(self.vars, [[-c for c in row] for row in self.matrix], self.variance)

    def __sub__(self, other: "EndoTensor") -> "EndoTensor":
        return self + (-other)

    def scale(self, f) -> "EndoTensor":
        return EndoTensor(self.vars, [[c * f for c in row] for row in self.matrix], self.variance)

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.matrix for c in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoTensor):
            return NotImplemented
        return self.vars == other.vars and self.matrix == other.matrix and self.variance == other.variance

    def __hash__(self):
        return hash((self.vars, self.matrix, self.variance))

    def __repr__(self) -> str:
        rows = "; ".join(", ".join(str(c) for c in row) for row in self.matrix)
        return f"EndoTensor<{self.variance}>[{rows}]"


def insert_endo(N: EndoTensor, w: KVector) -> KVector:
    """The degree-0 derivation ``(i_N w)(X_1..X_k) = Σ_i w(X_1,..,N X_i,..,X_k)``."""
    if N.rank != w.rank or N.vars != w.vars:
        raise ValueError("rank or coordinate mismatch")
    if w.variance == N.variance:
        raise ValueError("i_N acts on the dual exterior algebra")
    if w.degree <= 0:
        return w.like(w.degree)
    n = N.rank
    # image of each dual frame element under the transpose
    images = []
    for i in range(n):
        images.append({j: N.matrix[i][j] for j in range(n) if N.matrix[i][j]})
    buckets: Dict[Index, list] = {}
    for idx, c in w.terms.items():
        for s, i in enumerate(idx):
            for j, nij in images[i].items():
                new = idx[:s] + (j,) + idx[s + 1:]
                sign, key = sort_sign(new)
                if not sign:
                    continue
                t = nij * c
                buckets.setdefault(key, []).append(t if sign > 0 else -t)
    out = {}
    for k, cs in buckets.items():
        v = cs[0] if len(cs) == 1 else poly_sum(cs, w.vars)
        if v:
            out[k] = v
    return KVector._raw(w.vars, w.rank, w.degree, w.variance, out)


def basis_indices(rank: int, degree: int) -> list:
    return list(combinations(range(rank), degree))
