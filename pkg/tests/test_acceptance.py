"""One test per acceptance criterion; every comparison is exact."""

import random
import subprocess
import sys
import time

from jacobi_qn import cli
from jacobi_qn.contact import (
    build_e1, case1_residuals, case2_residuals, case3_residuals, theta_identity, verify_almost_contact,
    verify_contact_form,
)
from jacobi_qn.courant import (
    DualStructure, GcsMap, SectionSampler, build_double, canonical_double, correspondence_suite, extract_bialgebroid,
    quasi_bialgebroid_of, verify_gcs,
)
from jacobi_qn.gallery import gallery
from jacobi_qn.identities import IdentityConfig, run_identities
from jacobi_qn.nijenhuis import QuadrupleCandidate, verify_jacobi_bivector, verify_quadruple
from jacobi_qn.runner import CHECKS, Options, run
from jacobi_qn.sampling import random_kvector
from jacobi_qn.structure import load_structure
from jacobi_qn.symalg import FORM, MV, EndoTensor, PolyFn

from conftest import XYZ, random_almost_contact


def _objects(name):
    sf = load_structure(name)
    A = sf.J.algebroid
    o = dict(sf.objects)
    o.setdefault("phi", A.zero(3, FORM))
    o.setdefault("sigma", A.zero(2, FORM))
    o.setdefault("pi", A.zero(2, MV))
    return sf, o


def _quad(name):
    sf, o = _objects(name)
    return QuadrupleCandidate(sf.J, o["pi"], o["N"], o["phi"]), o


def _all_violations(rep):
    for c in rep.checks:
        yield from c.violations
        for child in c.children:
            yield from _all_violations(child)


GENUINE = ["pn-r4-btransform", "gcs-complex-b-dt", "lcs-b-dt"]
PERTURBED = ["broken-musical", "non-closed-phi", "torsion-mismatch"]


def test_criterion_1_engine_identities_exact_and_fast():
    cfg = IdentityConfig()
    assert cfg.max_dim <= 4 and cfg.max_rank <= 5 and cfg.poly_degree <= 2 and cfg.bivectors >= 50
    t = time.perf_counter()
    reports = run_identities(cfg)
    elapsed = time.perf_counter() - t
    names = {c.name for r in reports for c in r.checks}
    for required in ("d d = 0", "d^phi0 d^phi0 = 0", "L^phi0_X w = L_X w + phi0(X) w", "Schouten bracket",
                     "d(a^b) - da^b - (-1)^|a| a^db = -phi0^a^b", "defect = 0"):
        assert required in names
    assert all(r.passed for r in reports), "\n".join(r.format() for r in reports if not r.passed)
    main = reports[-1]
    assert main.count >= 50
    non_jacobi = int(main.checks[0].detail.split(", ")[1].split()[0])
    assert non_jacobi > 0
    assert elapsed < 5.0, f"identities took {elapsed:.2f} s"


def test_criterion_2_theorem_reproduction():
    # dual Jacobi identity and d_* 1 = -pi#(d 1) on Jacobi bivectors
    bivectors = 0
    for name in ["holomorphic-poisson-r4", "pn-r4-btransform", "gcs-complex-b-dt", "lcs-b-dt",
                 "double-readings-r2"]:
        sf, o = _objects(name)
        rep = verify_jacobi_bivector(sf.J, o["pi"])
        assert rep.passed, rep.format()
        assert rep.status_of("dual bracket Jacobi identity") == "pass"
        assert rep.status_of("d_* 1 = -pi#(d 1)") == "pass"
        bivectors += 1
    assert bivectors >= 3

    # [[pi, pi_N]] = 0 on compatible pairs and the torsion theorem on full quadruples
    full = 0
    for name in GENUINE:
        Q, o = _quad(name)
        rep = verify_quadruple(Q)
        assert rep.status_of("[[pi, pi_N]] = 0") == "pass"
        assert rep.status_of("[[pi_N, pi_N]](xi,eta) = -2 pi#(i_{pi#xi ^ pi#eta} phi)") == "pass"
        full += bool(Q.phi)
    assert full >= 2

    # extract(build_double(D)) = D
    duals = []
    for name in ["pn-r4-btransform", "gcs-complex-b-dt"]:
        Q, o = _quad(name)
        duals.append(quasi_bialgebroid_of(Q.J, Q.pi, Q.N, Q.phi))
    sf, o = _objects("double-readings-r2")
    duals.append(DualStructure.from_jacobi_bivector(sf.J, o["pi"]))
    duals.append(DualStructure.trivial(load_structure("lcs-r4").J))
    for D in duals:
        assert D.differences(extract_bialgebroid(build_double(D))) == []
    assert len(duals) >= 3


def test_criterion_3_correspondence_coherence():
    sampler = SectionSampler(degree=1, samples=2, budget=150)
    for name in GENUINE:
        Q, o = _quad(name)
        rep = correspondence_suite(Q, o["sigma"], sampler)
        assert rep.coherent and rep.all_pass, (name, rep.format())
    for name in PERTURBED:
        Q, o = _quad(name)
        rep = correspondence_suite(Q, o["sigma"], sampler)
        assert rep.coherent and not rep.all_pass, (name, rep.format())
        assert rep.status_of("coherence") == "pass"
        for leg in ("Jacobi quasi-Nijenhuis", "quasi-Jacobi bialgebroid", "deformed double"):
            assert rep.status_of(leg) == "fail", (name, leg)


def test_criterion_4_tangent_cases():
    sampler = SectionSampler(degree=1, samples=2, budget=150)

    # case 1: N alone
    sf, o = _objects("complex-r2")
    T, N = sf.J, o["N"]
    assert verify_gcs(canonical_double(T), GcsMap(N, o["pi"], o["sigma"]), sampler).passed
    for i in range(T.rank):
        for j in range(T.rank):
            a, b = case1_residuals(T, N, i, j)
            assert T.fmt(a) == T.fmt(b)

    # case 2: omega alone
    sf, o = _objects("symplectic-r2")
    T = sf.J
    assert verify_gcs(canonical_double(T), GcsMap(_zero_endo(T), o["pi"], o["omega"]), sampler).passed
    a, b = case2_residuals(T, o["omega"])
    assert T.fmt(a) == T.fmt(b)

    # case 3: N and pi
    sf, o = _objects("holomorphic-poisson-r4")
    T, A = sf.J, sf.J.algebroid
    assert verify_gcs(canonical_double(T), GcsMap(o["N"], o["pi"], o["sigma"]), sampler).passed
    coforms = [A.coframe(i) for i in range(A.rank)] + [A.coframe(i, PolyFn.var(A.vars, v))
                                                       for i in range(A.rank) for v in A.vars]
    for xi in coforms:
        for eta in coforms[:A.rank]:
            intrinsic = case3_residuals(T, o["N"], o["pi"], xi, eta)
            explicit = case3_residuals(T, o["N"], o["pi"], xi, eta, explicit=True)
            assert [T.fmt(v) for v in intrinsic] == [T.fmt(v) for v in explicit]

    # the explicit and intrinsic forms also agree where the conditions fail
    sf, o = _objects("lcs-fail-r4")
    a, b = case2_residuals(sf.J, o["omega"])
    assert a and sf.J.fmt(a) == sf.J.fmt(b)


def _zero_endo(T):
    return EndoTensor.zero(T.algebroid.vars, T.rank)


def test_criterion_5_contact_reproduction():
    E = build_e1(3)
    assert E.differential(E.algebroid.one()) == E.coframe(3)
    assert E.algebroid.form_labels[3] == "dt"

    rng = random.Random(7)
    vars = E.algebroid.vars
    for _ in range(5):
        eta = random_kvector(rng, vars, 3, 1, FORM)
        omega = random_kvector(rng, vars, 3, 2, FORM)
        lhs, rhs = theta_identity(E, eta, omega)
        assert lhs == rhs
        rep = verify_contact_form(vars, eta, omega, [(0, 0, 0)], SectionSampler(degree=1, samples=1, budget=60))
        assert rep.status_of("d Theta = d omega + dt^(omega - d eta)") == "pass"

    results = {r.spec.name: r for r in run(load_structure("std-contact-r3"), Options())}
    for name in ("almost_contact", "normal_contact", "contact_form"):
        assert results[name].verdict == "pass", results[name].report.format()
    assert results["contact_form"].report.status_of("generalized contact structure agrees") == "pass"

    passing = 0
    for seed in range(100):
        C = random_almost_contact(random.Random(seed), XYZ)
        rep = verify_almost_contact(C)
        assert rep.status_of("eta(Y) = 1") == "pass"
        assert rep.status_of("phi^2 = -Id + eta (x) Y") == "pass"
        assert rep.status_of("phi(Y) = 0 and eta o phi = 0 follow") == "pass", rep.format()
        passing += 1
    assert passing >= 100


def test_criterion_6_falsification_and_exit_codes(tmp_path, capsys):
    failing = {name: [] for name in CHECKS}
    for fx in gallery():
        for r in run(fx.load(), Options()):
            if r.verdict == "fail":
                residuals = [v.residual for v in _all_violations(r.report) if v.residual not in ("", "0")]
                if residuals:
                    failing[r.spec.name].append(fx.name)
    missing = [n for n, fxs in failing.items() if not fxs]
    assert not missing, f"verifiers with no failing fixture: {missing}"

    assert cli.main(["check", "std-contact-r3"]) == 0
    assert cli.main(["check", "broken-cocycle"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "-dx^dy" in out
    bad = tmp_path / "bad.toml"
    bad.write_text(load_structure("symplectic-r2").text.replace('omega = "dx^dy"', 'omega = "dx^dy/x"'))
    assert cli.main(["check", str(bad)]) == 2
    assert cli.main(["check", str(tmp_path / "missing.toml")]) == 2


def test_criterion_7_cli_determinism():
    exe = [sys.executable, "-m", "jacobi_qn.cli"]
    for name in ["broken-cocycle", "std-contact-r3"]:
        for fmt in ("text", "json"):
            a = subprocess.run(exe + ["check", name, "--format", fmt], capture_output=True)
            b = subprocess.run(exe + ["check", name, "--format", fmt], capture_output=True)
            assert a.stdout == b.stdout and a.stdout
            assert a.returncode == b.returncode
    t = time.perf_counter()
    r = subprocess.run(exe + ["identities"], capture_output=True)
    elapsed = time.perf_counter() - t
    assert r.returncode == 0, r.stdout.decode()
    assert elapsed < 30.0, f"identities took {elapsed:.1f} s"
