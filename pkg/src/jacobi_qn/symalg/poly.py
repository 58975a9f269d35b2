"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class PolyFn:
    """A polynomial in a fixed, ordered list of coordinates.

    ``terms`` maps exponent tuples (one entry per coordinate) to nonzero
    :class:`~fractions.Fraction` coefficients.  Instances are immutable;
    every arithmetic operation returns a new polynomial.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None):
        self.vars = tuple(vars)
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} coordinates")
                c = as_fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exponent, Fraction]) -> "PolyFn":
        # trusted constructor: terms already nonzero Fractions
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, vars: Sequence[str]) -> "PolyFn":
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, vars: Sequence[str], c: Scalar) -> "PolyFn":
        vars = tuple(vars)
        c = as_fraction(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, vars: Sequence[str], name: Union[str, int]) -> "PolyFn":
        vars = tuple(vars)
        i = vars.index(name) if isinstance(name, str) else name
        e = [0] * len(vars)
        e[i] = 1
        return cls._raw(vars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Exponent, c: Scalar = 1) -> "PolyFn":
        return cls(vars, {tuple(exps): c})

    # -- coercion -----------------------------------------------------
    def _coerce(self, other) -> "PolyFn":
        if isinstance(other, PolyFn):
            if other.vars != self.vars:
                raise ValueError(f"coordinate mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return PolyFn.const(self.vars, other)
        return NotImplemented

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        """Constant term (the value at the origin)."""
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "PolyFn":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return PolyFn._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "PolyFn":
        return PolyFn._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "PolyFn":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "PolyFn":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "PolyFn":
        if isinstance(other, (int, Fraction)):
            if not other:
                return PolyFn._raw(self.vars, {})
            return PolyFn._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return PolyFn._raw(self.vars, {})
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return PolyFn._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyFn":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = PolyFn.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and evaluation --------------------------------------
    def partial(self, var: Union[str, int]) -> "PolyFn":
        if isinstance(var, str):
            if var not in self.vars:
                raise ValueError(f"unknown coordinate {var!r}; have {self.vars}")
            i = self.vars.index(var)
        else:
            if not 0 <= var < len(self.vars):
                raise ValueError(f"coordinate index {var} out of range")
            i = var
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return PolyFn._raw(self.vars, out)

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != len(self.vars):
            raise ValueError(f"point has {len(point)} entries, expected {len(self.vars)}")
        pt = [as_fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def subs(self, assignment: Mapping[str, "PolyFn"]) -> "PolyFn":
        """Substitute polynomials (over the same coordinates) for coordinates."""
        result = PolyFn.zero(self.vars)
        for e, c in self.terms.items():
            t = PolyFn.const(self.vars, c)
            for name, k in zip(self.vars, e):
                if k:
                    t = t * (assignment[name] if name in assignment else PolyFn.var(self.vars, name)) ** k
            result = result + t
        return result

    # -- identity -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.terms == PolyFn.const(self.vars, other).terms
        if not isinstance(other, PolyFn):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list:
        # graded lexicographic, highest degree first
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.vars, e) if k
            )
            mag = abs(c)
            cstr = str(mag)
            if mono:
                body = mono if mag == 1 else f"{cstr}*{mono}"
            else:
                body = cstr
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"PolyFn({str(self)!r}, vars={self.vars})"


def poly_sum(items: Iterable[PolyFn], vars: Sequence[str]) -> PolyFn:
    """Sum polynomials in a single accumulation pass."""
    out: Dict[Exponent, Fraction] = {}
    for p in items:
        for e, c in p.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
    return PolyFn._raw(tuple(vars), {e: c for e, c in out.items() if c})


def poly_partial(f: PolyFn, var: Union[str, int]) -> PolyFn:
    return f.partial(var)
