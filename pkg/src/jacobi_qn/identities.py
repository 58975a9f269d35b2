"""Global invariant suites for the calculus engine.

Every suite draws random Jacobi algebroids (tangent bundles, tangent bundles
plus a Lie algebra, action algebroids, all after a random polynomial frame
change) and random polynomial elements, then checks an identity exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List

from .nijenhuis import fundamental_identity_defect
from .report import Report, Violation
from .sampling import default_vars, random_form, random_jacobi_algebroid, random_section
from .symalg import contract, wedge


@dataclass
class IdentityConfig:
    seed: int = 0
    cases: int = 6
    bivectors: int = 50
    max_dim: int = 3
    max_rank: int = 5
    poly_degree: int = 2


def _algebroids(cfg: IdentityConfig, salt: int, n: int):
    rng = random.Random(cfg.seed * 1000003 + salt)
    for k in range(n):
        m = 1 + k % cfg.max_dim
        yield k, rng, random_jacobi_algebroid(rng, default_vars(m), cfg.max_rank)


def _record(bad: List[Violation], case: str, J, res):
    if res:
        bad.append(Violation((case,), J.fmt(res), res))


def d_squared(cfg: IdentityConfig) -> Report:
    rep = Report("d^2 = 0")
    bad, bad_phi = [], []
    for k, rng, J in _algebroids(cfg, 1, cfg.cases):
        A = J.algebroid
        for p in range(min(3, A.rank)):
            w = random_form(rng, A, p, cfg.poly_degree)
            _record(bad, f"case {k}, degree {p}", J, A.differential(A.differential(w)))
            _record(bad_phi, f"case {k}, degree {p}", J, J.differential(J.differential(w)))
    rep.add("d d = 0", bad, detail=f"{cfg.cases} algebroids, form degrees 0-2")
    rep.add("d^phi0 d^phi0 = 0", bad_phi, detail="with d phi0 = 0")
    return rep


def lie_derivative(cfg: IdentityConfig) -> Report:
    rep = Report("deformed Lie derivative")
    bad = []
    for k, rng, J in _algebroids(cfg, 2, cfg.cases):
        A = J.algebroid
        X = random_section(rng, A, 1, cfg.poly_degree)
        f = contract(X, J.cocycle).as_function()
        for p in range(min(3, A.rank + 1)):
            w = random_form(rng, A, p, cfg.poly_degree)
            res = J.lie_derivative(X, w) - A.lie_derivative(X, w) - w.scale(f)
            _record(bad, f"case {k}, degree {p}", J, res)
    rep.add("L^phi0_X w = L_X w + phi0(X) w", bad)
    return rep


def wedge_anomaly(cfg: IdentityConfig) -> Report:
    rep = Report("wedge anomaly of d^phi0")
    bad = []
    for k, rng, J in _algebroids(cfg, 3, cfg.cases):
        A = J.algebroid
        for p, q in ((0, 1), (1, 1), (1, 2)):
            if p + q > A.rank:
                continue
            a, b = random_form(rng, A, p, cfg.poly_degree), random_form(rng, A, q, cfg.poly_degree)
            d = J.differential
            lhs = d(wedge(a, b)) - wedge(d(a), b)
            lhs = lhs - wedge(a, d(b)) if p % 2 == 0 else lhs + wedge(a, d(b))
            res = lhs + wedge(J.cocycle, wedge(a, b))
            _record(bad, f"case {k}, degrees ({p},{q})", J, res)
    rep.add("d(a^b) - da^b - (-1)^|a| a^db = -phi0^a^b", bad)
    return rep


def _graded_jacobi(br: Callable, P, Q, R):
    """``[P,[Q,R]] - [[P,Q],R] - (-1)^{(p-1)(q-1)}[Q,[P,R]]``, degrees shifted by one."""
    p, q = P.degree - 1, Q.degree - 1
    sign = -1 if (p * q) % 2 else 1
    res = br(P, br(Q, R)) - br(br(P, Q), R)
    return res - br(Q, br(P, R)) if sign > 0 else res + br(Q, br(P, R))


def graded_jacobi(cfg: IdentityConfig) -> Report:
    rep = Report("graded Jacobi identities")
    bad, bad_sj = [], []
    degrees = [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 1, 1), (0, 1, 2), (2, 2, 0)]
    for k, rng, J in _algebroids(cfg, 4, cfg.cases):
        A = J.algebroid
        pd = min(cfg.poly_degree, 1)

        def sec(d):
            if d == 0:
                return A.function(random_section(rng, A, 1, pd)[(0,)], A.variance)
            return random_section(rng, A, d, pd)

        for degs in degrees:
            if max(degs) > A.rank:
                continue
            P, Q, R = (sec(d) for d in degs)
            _record(bad, f"case {k}, degrees {degs}", J, _graded_jacobi(A.schouten, P, Q, R))

            def koszul(U, V):
                w = J.schouten_jacobi(U, V)
                return w if U.degree % 2 == 0 else -w
            _record(bad_sj, f"case {k}, degrees {degs}", J, _graded_jacobi(koszul, P, Q, R))
    rep.add("Schouten bracket", bad, detail="[P,[Q,R]] = [[P,Q],R] + (-1)^((p-1)(q-1)) [Q,[P,R]]")
    rep.add("Schouten-Jacobi bracket, (-1)^(p+1) [[P,Q]]", bad_sj,
            detail="the same identity for K(P,Q) = (-1)^(p+1) [[P,Q]]")
    return rep


def main_identity(cfg: IdentityConfig) -> Report:
    rep = Report("pi#[[xi,eta]]_pi - [pi# xi, pi# eta] = 1/2 [[pi,pi]](xi,eta)")
    bad = []
    n = 0
    non_jacobi = 0
    per = 5
    for k, rng, J in _algebroids(cfg, 5, (cfg.bivectors + per - 1) // per):
        A = J.algebroid
        if A.rank < 2:
            continue
        for t in range(per):
            pi = random_section(rng, A, 2, 1)
            n += 1
            if J.schouten_jacobi(pi, pi):
                non_jacobi += 1
            xi, eta = random_form(rng, A, 1, 1), random_form(rng, A, 1, 1)
            _record(bad, f"case {k}.{t}", J, fundamental_identity_defect(J, pi, xi, eta))
    rep.add("defect = 0", bad, detail=f"{n} random bivectors, {non_jacobi} of them not Jacobi")
    rep.count = n
    return rep


SUITES: Dict[str, Callable[[IdentityConfig], Report]] = {
    "d_squared": d_squared,
    "lie_derivative": lie_derivative,
    "wedge_anomaly": wedge_anomaly,
    "graded_jacobi": graded_jacobi,
    "main_identity": main_identity,
}


def run_identities(cfg: IdentityConfig = None) -> List[Report]:
    cfg = cfg or IdentityConfig()
    return [suite(cfg) for suite in SUITES.values()]


__all__ = ["IdentityConfig", "SUITES", "run_identities", "d_squared", "lie_derivative", "wedge_anomaly",
           "graded_jacobi", "main_identity"]
