"""Verifier pipelines for structure files."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .algebroid import JacobiAlgebroid, check_maurer_cartan, verify_cocycle, verify_lie_algebroid
from .contact import (
    ContactTriple,
    compare_brackets,
    e1_bracket_explicit,
    e1_pairing,
    tangent_bracket_explicit,
    verify_almost_contact,
    verify_conformal_symplectic,
    verify_contact_form,
    verify_jacobi_pair,
    verify_normal_contact,
    verify_tangent_case,
)
from .courant import (
    DualStructure,
    GcsMap,
    GenSection,
    SectionSampler,
    build_double,
    canonical_double,
    correspondence_suite,
    deform,
    extract_bialgebroid,
    quasi_bialgebroid_of,
    verify_courant_jacobi,
    verify_deformation_formulas,
    verify_dirac,
    verify_gcs,
    verify_quasi_bialgebroid,
)
from .nijenhuis import QuadrupleCandidate, verify_derivation, verify_jacobi_bivector, verify_quadruple
from .parse import ParseError, parse_points
from .report import Report, Violation
from .sampling import random_form
from .structure import CheckSpec, StructureFile
from .symalg import EndoTensor, contract


class RunError(ValueError):
    """A check cannot be run on this file (unknown name, missing object, wrong shape)."""


@dataclass
class Options:
    """Command-line overrides; ``None`` defers to the file, then to the check default."""

    degree: Optional[int] = None
    samples: Optional[str] = None
    seed: Optional[int] = None


@dataclass
class CheckResult:
    spec: CheckSpec
    report: Report

    @property
    def verdict(self) -> str:
        if all(c.status == "skipped" for c in self.report.checks):
            return "skipped"
        return "pass" if self.report.passed else "fail"


class _Ctx:
    def __init__(self, sf: StructureFile, spec: CheckSpec, opts: Options):
        self.sf, self.spec, self.opts = sf, spec, opts
        self.args = dict(spec.args)
        self.used = {"degree", "random", "seed", "budget", "points"}

    def obj(self, key: str, kind: str, default: Optional[Callable] = None, name: Optional[str] = None):
        self.used.add(key)
        oname = self.args.get(key, name or key)
        if oname in self.sf.objects:
            got = self.sf.kinds[oname]
            if got != kind:
                raise RunError(f"{self.spec.label}: object {oname!r} is a {got}, expected a {kind}")
            return self.sf.objects[oname]
        if key in self.args or default is None:
            raise RunError(f"{self.spec.label}: needs a {kind} object {oname!r}")
        return default()

    def opt(self, key: str, default):
        self.used.add(key)
        return self.args.get(key, default)

    def sampler(self, degree: int = 2, samples: int = 3, budget: int = 600) -> SectionSampler:
        d = self.opts.degree if self.opts.degree is not None else int(self.args.get("degree", degree))
        s = self.opts.seed if self.opts.seed is not None else int(self.args.get("seed", 0))
        return SectionSampler(degree=d, samples=int(self.args.get("random", samples)), seed=s,
                              budget=int(self.args.get("budget", budget)))

    def points(self):
        text = self.opts.samples if self.opts.samples is not None else self.args.get("points")
        if text is None:
            return None
        try:
            pts = parse_points(text, len(self.sf.vars))
        except ParseError as e:
            raise RunError(f"{self.spec.label}: sample points: {e.message}") from None
        if not pts:
            raise RunError(f"{self.spec.label}: empty sample set")
        return pts

    # shorthands for zero defaults
    def zero_mv(self, degree):
        return lambda: self.sf.J.zero(degree)

    def zero_form(self, degree):
        return lambda: self.sf.J.zero(degree, self.sf.J.form_variance)

    def zero_endo(self):
        return lambda: EndoTensor.zero(self.sf.vars, self.sf.J.rank, self.sf.J.variance)

    def require_tangent(self):
        J = self.sf.J
        if J.rank != len(J.vars) or self.sf.builder not in ("tangent", "explicit"):
            raise RunError(f"{self.spec.label}: needs objects on TM (builder = \"tangent\")")


# -- checks -----------------------------------------------------------------------------------

def _lie_algebroid(c: _Ctx) -> Report:
    return verify_lie_algebroid(c.sf.J)


def _cocycle(c: _Ctx) -> Report:
    return verify_cocycle(c.sf.J)


def _maurer_cartan(c: _Ctx) -> Report:
    return check_maurer_cartan(c.sf.J, c.obj("theta", "gl"))


def _jacobi_bivector(c: _Ctx) -> Report:
    return verify_jacobi_bivector(c.sf.J, c.obj("pi", "bivector"))


def _quadruple(c: _Ctx) -> Report:
    return verify_quadruple(QuadrupleCandidate(c.sf.J, c.obj("pi", "bivector"), c.obj("N", "endo"),
                                               c.obj("phi", "form3", c.zero_form(3))))


def _derivation(c: _Ctx) -> Report:
    J = c.sf.J
    pi, N = c.obj("pi", "bivector"), c.obj("N", "endo")
    sm = c.sampler(degree=2, samples=2)
    rng = random.Random(sm.seed)
    samples = []
    for _ in range(sm.samples):
        for p, q in ((0, 1), (1, 0), (1, 1)):
            samples.append((random_form(rng, J.algebroid, p, sm.degree), random_form(rng, J.algebroid, q, sm.degree)))
    r = J.rank
    samples += [(J.coframe(i), J.coframe(j)) for i in range(r) for j in range(r) if i < j]
    return verify_derivation(J, pi, N, samples)


def _courant_jacobi(c: _Ctx) -> Report:
    J = c.sf.J
    S = _structure(c)
    defect = c.opt("defect", None)
    if defect == "drop-exact-term":
        base = S

        def bracket(u, v):
            w = base.bracket(u, v)
            exact = J.differential(contract(v.vec, u.form))
            return GenSection(w.vec, w.form - exact)

        S = S.with_bracket(bracket, S.name + " without the exact term")
    elif defect == "zero-pairing":
        S = S.with_pairing(lambda u, v: J.function(0).as_function(), S.name + " with zero pairing")
    elif defect == "double-anchor":
        base = S
        S = type(S)(S.host, S.bracket, lambda u: base.anchor(u).scale(2), S.pairing, S.name + " with doubled anchor")
    elif defect is not None:
        raise RunError(f"{c.spec.label}: unknown defect {defect!r} (drop-exact-term, zero-pairing, double-anchor)")
    return verify_courant_jacobi(S, c.sampler(degree=1, samples=2, budget=150))


def _gcs_map(c: _Ctx) -> GcsMap:
    return GcsMap(c.obj("N", "endo", c.zero_endo()), c.obj("pi", "bivector", c.zero_mv(2)),
                  c.obj("sigma", "form2", c.zero_form(2)))


def _structure(c: _Ctx):
    kind = c.opt("structure", "canonical")
    S = canonical_double(c.sf.J)
    if kind == "canonical":
        return S
    if kind == "deformed":
        try:
            return deform(S, _gcs_map(c)).structure
        except ValueError as e:
            raise RunError(f"{c.spec.label}: {e}") from None
    raise RunError(f"{c.spec.label}: unknown structure {kind!r} (canonical, deformed)")


def _gcs(c: _Ctx) -> Report:
    return verify_gcs(canonical_double(c.sf.J), _gcs_map(c), c.sampler(degree=1, samples=2, budget=200))


def _block_violations(Jm: GcsMap) -> List[Violation]:
    out = []
    for name, entries in Jm.block_defects().items():
        res = ", ".join(f"[{i + 1},{j + 1}] {v}" for (i, j), v in sorted(entries.items()))
        out.append(Violation((name,), res, entries))
    return out


def _deformation(c: _Ctx) -> Report:
    Jm = _gcs_map(c)
    rep = Report("J-deformation")
    rep.add("J has block form", _block_violations(Jm), detail="N pi# = pi# N*, N^2 + pi# sigma_flat = -Id, "
            "N* sigma_flat = sigma_flat N")
    D = deform(canonical_double(c.sf.J), Jm, strict=False)
    rep.add("component formulas", children=[verify_deformation_formulas(D, c.sampler(degree=1, samples=2,
                                                                                      budget=200))])
    return rep


def _dual_structure(c: _Ctx) -> DualStructure:
    J = c.sf.J
    source = c.opt("source", "pi")
    if source == "trivial":
        return DualStructure.trivial(J)
    if source == "pi":
        return DualStructure.from_jacobi_bivector(J, c.obj("pi", "bivector"), c.obj("Phi", "trivector", c.zero_mv(3)))
    if source == "quasi":
        return quasi_bialgebroid_of(J, c.obj("pi", "bivector"), c.obj("N", "endo"),
                                    c.obj("phi", "form3", c.zero_form(3)))
    raise RunError(f"{c.spec.label}: unknown source {source!r} (pi, quasi, trivial)")


def _quasi_bialgebroid(c: _Ctx) -> Report:
    return verify_quasi_bialgebroid(_dual_structure(c), c.sampler(degree=1, samples=2, budget=40))


def _double(c: _Ctx) -> Report:
    D = _dual_structure(c)
    reading = c.opt("reading", "host")
    try:
        S = build_double(D, reading)
    except ValueError as e:
        raise RunError(f"{c.spec.label}: {e}") from None
    rep = Report(f"double of a quasi-Jacobi bialgebroid ({reading} reading)")
    cj = verify_courant_jacobi(S, c.sampler(degree=1, samples=2, budget=150))
    rep.add("double is Courant-Jacobi", children=[cj])
    rep.add("first summand is Dirac", children=[verify_dirac(S, "first")])
    try:
        back = extract_bialgebroid(S)
        diffs = back.differences(D)
    except ValueError as e:
        diffs = [str(e)]
    rep.add("extract(build_double(D)) = D", [Violation((d,), "differs") for d in diffs])
    return rep


def _correspondence(c: _Ctx) -> Report:
    Q = QuadrupleCandidate(c.sf.J, c.obj("pi", "bivector"), c.obj("N", "endo"),
                           c.obj("phi", "form3", c.zero_form(3)))
    return correspondence_suite(Q, c.obj("sigma", "form2", c.zero_form(2)),
                                c.sampler(degree=1, samples=2, budget=150))


def _conformal_symplectic(c: _Ctx) -> Report:
    c.require_tangent()
    pts, omega = c.points(), c.obj("omega", "form2")
    try:
        return verify_conformal_symplectic(c.sf.J, omega, pts,
                                           c.sampler(degree=1, samples=2, budget=200))
    except ValueError as e:
        raise RunError(f"{c.spec.label}: {e}") from None


def _tangent_case(c: _Ctx) -> Report:
    c.require_tangent()
    named = [k for k in ("N", "pi", "omega") if k in c.args]
    keys = named or [k for k in ("N", "pi", "omega") if k in c.sf.objects]
    N = c.obj("N", "endo") if "N" in keys else None
    pi = c.obj("pi", "bivector") if "pi" in keys else None
    omega = c.obj("omega", "form2") if "omega" in keys else None
    try:
        return verify_tangent_case(c.sf.J, N, pi, omega, c.sampler(degree=1, samples=2, budget=200))
    except ValueError as e:
        raise RunError(f"{c.spec.label}: {e}") from None


def _jacobi_pair(c: _Ctx) -> Report:
    c.require_tangent()
    return verify_jacobi_pair(c.sf.vars, c.obj("Lambda", "bivector"), c.obj("X", "vector", c.zero_mv(1)))


def _triple(c: _Ctx) -> ContactTriple:
    c.require_tangent()
    return ContactTriple(c.obj("varphi", "endo"), c.obj("Y", "vector"), c.obj("eta", "form1"))


def _almost_contact(c: _Ctx) -> Report:
    return verify_almost_contact(_triple(c))


def _normal_contact(c: _Ctx) -> Report:
    return verify_normal_contact(_triple(c), c.sampler(degree=1, samples=2, budget=200))


def _contact_form(c: _Ctx) -> Report:
    c.require_tangent()
    pts, eta, omega = c.points(), c.obj("eta", "form1"), c.obj("omega", "form2")
    try:
        return verify_contact_form(c.sf.vars, eta, omega, pts,
                                   c.sampler(degree=1, samples=2, budget=100))
    except ValueError as e:
        raise RunError(f"{c.spec.label}: {e}") from None


def _e1_bracket(c: _Ctx) -> Report:
    J = c.sf.J
    if J.rank != len(J.vars) + 1:
        raise RunError(f"{c.spec.label}: needs an algebroid of rank dim + 1")
    S = canonical_double(J)
    rep = compare_brackets(S, e1_bracket_explicit, c.sampler(degree=1, samples=2, budget=150),
                           "E1 bracket against the explicit formula")
    frame = S.frame()
    bad = [Violation((la, lb), str(S.pairing(u, v) - e1_pairing(u, v)))
           for la, u in frame for lb, v in frame if S.pairing(u, v) != e1_pairing(u, v)]
    rep.add("canonical pairing = explicit pairing", bad, detail="frame pairs")
    return rep


def _tangent_bracket(c: _Ctx) -> Report:
    J = c.sf.J
    if J.rank != len(c.sf.vars):
        raise RunError(f"{c.spec.label}: needs an algebroid of rank dim")
    # the formula is evaluated on the genuine TM with the file's cocycle, frame identified with d/dx_i
    T = JacobiAlgebroid.tangent(J.vars, J.cocycle.components())
    return compare_brackets(canonical_double(J), lambda host, u, v: tangent_bracket_explicit(T, u, v),
                            c.sampler(degree=1, samples=2, budget=150), "TM bracket against the explicit formula")


CHECKS: Dict[str, Callable[[_Ctx], Report]] = {
    "lie_algebroid": _lie_algebroid,
    "cocycle": _cocycle,
    "maurer_cartan": _maurer_cartan,
    "jacobi_bivector": _jacobi_bivector,
    "quadruple": _quadruple,
    "derivation": _derivation,
    "courant_jacobi": _courant_jacobi,
    "gcs": _gcs,
    "deformation": _deformation,
    "quasi_bialgebroid": _quasi_bialgebroid,
    "double": _double,
    "correspondence": _correspondence,
    "conformal_symplectic": _conformal_symplectic,
    "tangent_case": _tangent_case,
    "jacobi_pair": _jacobi_pair,
    "almost_contact": _almost_contact,
    "normal_contact": _normal_contact,
    "contact_form": _contact_form,
    "e1_bracket": _e1_bracket,
    "tangent_bracket": _tangent_bracket,
}


def run_check(sf: StructureFile, spec: CheckSpec, opts: Optional[Options] = None) -> CheckResult:
    opts = opts or Options()
    if spec.name not in CHECKS:
        raise RunError(f"unknown check name {spec.name!r}; known: {', '.join(sorted(CHECKS))}")
    ctx = _Ctx(sf, spec, opts)
    rep = CHECKS[spec.name](ctx)
    extra = sorted(set(spec.args) - ctx.used)
    if extra:
        raise RunError(f"{spec.label}: unused arguments {', '.join(extra)}")
    return CheckResult(spec, rep)


def run(sf: StructureFile, opts: Optional[Options] = None) -> List[CheckResult]:
    """Run the file's checks in order.  Unknown names fail before anything runs."""
    for spec in sf.checks:
        if spec.name not in CHECKS:
            raise RunError(f"unknown check name {spec.name!r}; known: {', '.join(sorted(CHECKS))}")
    return [run_check(sf, spec, opts) for spec in sf.checks]


def all_passed(results: Sequence[CheckResult]) -> bool:
    """Exit-code contract: skipped checks never count."""
    return all(r.verdict != "fail" for r in results)


__all__ = ["RunError", "Options", "CheckResult", "CHECKS", "run_check", "run", "all_passed"]
