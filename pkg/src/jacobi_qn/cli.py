"""Command-line front end: ``jqn check``, ``jqn gallery``, ``jqn identities``.

Exit status: 0 when every non-skipped check passes, 1 when some check
fails, 2 for unreadable input (parse errors, unknown checks or objects).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import List, Optional, Sequence

from . import __version__
from .gallery import fixture, fixture_text, names
from .identities import IdentityConfig
from .parse import ParseError
from .report import Report
from .runner import CheckResult, Options, RunError, all_passed, run_check
from .structure import StructureFile, load_structure

SCHEMA = "jacobi-qn-report/1"


def _summary(verdicts: Sequence[str]) -> dict:
    return {"checks": len(verdicts), "pass": verdicts.count("pass"), "fail": verdicts.count("fail"),
            "skipped": verdicts.count("skipped")}


def _summary_line(s: dict) -> str:
    return f"summary: {s['checks']} checks, {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped"


def format_text(sf: StructureFile, results: List[CheckResult], max_violations: int = 3) -> str:
    lines = [f"structure: {sf.name}", f"algebroid: {sf.describe()}", ""]
    expected = sf.expected
    n = len(results)
    for k, r in enumerate(results, 1):
        head = f"[{k}/{n}] {r.spec.label}"
        if r.spec.label != r.spec.name:
            head += f" ({r.spec.name})"
        head += f": {r.verdict.upper()}"
        exp = expected.get(r.spec.label)
        if exp is not None and exp != r.verdict:
            head += f"  (expected {exp})"
        lines.append(head)
        lines.append(r.report.format(indent=1, max_violations=max_violations))
        lines.append("")
    lines.append(_summary_line(_summary([r.verdict for r in results])))
    return "\n".join(lines) + "\n"


def format_json(sf: StructureFile, results: List[CheckResult]) -> str:
    doc = {
        "schema": SCHEMA,
        "structure": {"name": sf.name, "algebroid": sf.describe(), "coordinates": list(sf.vars)},
        "checks": [],
    }
    expected = sf.expected
    for r in results:
        entry = {"label": r.spec.label, "check": r.spec.name, "verdict": r.verdict}
        if r.spec.label in expected:
            entry["expected"] = expected[r.spec.label]
        entry["report"] = r.report.to_dict()
        doc["checks"].append(entry)
    verdicts = [r.verdict for r in results]
    doc["summary"] = _summary(verdicts)
    doc["passed"] = all_passed(results)
    return json.dumps(doc, indent=2) + "\n"


def _err(msg: str) -> int:
    print(f"jqn: error: {msg}", file=sys.stderr)
    return 2


def cmd_check(args) -> int:
    try:
        sf = load_structure(args.file)
    except FileNotFoundError as e:
        return _err(str(e))
    except ParseError as e:
        where = args.file
        return _err(f"{where}: {e}")
    opts = Options(args.degree, args.samples, args.seed)
    results = []
    try:
        from .runner import CHECKS
        for spec in sf.checks:
            if spec.name not in CHECKS:
                raise RunError(f"unknown check name {spec.name!r}; known: {', '.join(sorted(CHECKS))}")
        for spec in sf.checks:
            t = time.perf_counter()
            results.append(run_check(sf, spec, opts))
            if args.timing:
                print(f"timing: {spec.label} {time.perf_counter() - t:.3f} s", file=sys.stderr)
    except RunError as e:
        return _err(str(e))
    out = format_json(sf, results) if args.format == "json" else format_text(sf, results, args.max_violations)
    sys.stdout.write(out)
    return 0 if all_passed(results) else 1


def cmd_gallery(args) -> int:
    if args.export:
        os.makedirs(args.export, exist_ok=True)
        chosen = [args.name] if args.name else names()
        for n in chosen:
            if n not in names():
                return _err(f"unknown gallery fixture {n!r}")
            with open(os.path.join(args.export, n + ".toml"), "w", encoding="utf-8") as fh:
                fh.write(fixture_text(n))
        print(f"exported {len(chosen)} fixture(s) to {args.export}")
        return 0
    if args.name:
        n = args.name[:-5] if args.name.endswith(".toml") else args.name
        if n not in names():
            return _err(f"unknown gallery fixture {args.name!r}")
        sys.stdout.write(fixture_text(n))
        return 0
    width = max(len(n) for n in names())
    for n in names():
        fx = fixture(n)
        verdicts = ", ".join(f"{k}={v}" for k, v in fx.expected.items())
        print(f"{n:<{width}}  {fx.description}")
        print(f"{'':<{width}}  expected: {verdicts}")
    return 0


def cmd_identities(args) -> int:
    cfg = IdentityConfig(seed=args.seed if args.seed is not None else 0)
    if args.cases is not None:
        cfg.cases = args.cases
    if args.bivectors is not None:
        cfg.bivectors = args.bivectors
    reports: List[Report] = []
    from .identities import SUITES
    for name, suite in SUITES.items():
        t = time.perf_counter()
        reports.append(suite(cfg))
        if args.timing:
            print(f"timing: {name} {time.perf_counter() - t:.3f} s", file=sys.stderr)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        doc = {"schema": SCHEMA, "identities": [r.to_dict() for r in reports], "passed": ok}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for r in reports:
            print(r.format(max_violations=args.max_violations))
        print(f"summary: {sum(r.passed for r in reports)}/{len(reports)} suites pass")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jqn", description="Verify Jacobi quasi-Nijenhuis and Courant-Jacobi structures.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the checks listed in a structure file or gallery fixture")
    c.add_argument("file", help="path to a .toml structure file, or a gallery fixture name")
    c.add_argument("--degree", type=int, default=None, help="monomial degree of verification sections (default set per check, usually 1)")
    c.add_argument("--samples", default=None, help='nondegeneracy sample points, e.g. "(0,0,0);(1,2,3)"')
    c.add_argument("--seed", type=int, default=None, help="seed for random test sections (default 0)")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--max-violations", type=int, default=3, help="violations shown per item in text output")
    c.add_argument("--timing", action="store_true", help="print per-check wall time to stderr")
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("gallery", help="list the gallery, print one fixture, or export fixtures")
    g.add_argument("name", nargs="?")
    g.add_argument("--export", metavar="DIR", help="write the fixture files to DIR")
    g.set_defaults(func=cmd_gallery)

    i = sub.add_parser("identities", help="run the global invariant suites of the engine")
    i.add_argument("--seed", type=int, default=None)
    i.add_argument("--cases", type=int, default=None, help="random algebroids per suite")
    i.add_argument("--bivectors", type=int, default=None, help="random bivectors for the main identity (default 50)")
    i.add_argument("--format", choices=("text", "json"), default="text")
    i.add_argument("--max-violations", type=int, default=3)
    i.add_argument("--timing", action="store_true")
    i.set_defaults(func=cmd_identities)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "degree", None) is not None and args.degree < 0:
        return _err("--degree must be nonnegative")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
