"""Verdict containers shared by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class Violation:
    witness: tuple
    residual: str
    value: Any = None

    def to_dict(self) -> dict:
        return {"witness": [str(w) for w in self.witness], "residual": self.residual}


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    violations: List[Violation] = field(default_factory=list)
    children: List["Report"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status}
        if self.detail:
            d["detail"] = self.detail
        if self.violations:
            d["violations"] = [v.to_dict() for v in self.violations]
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d


@dataclass
class Report:
    """Itemized verdicts; ``passed`` ignores skipped items."""

    title: str
    checks: List[Check] = field(default_factory=list)

    def add(self, name: str, violations: Sequence[Violation] = (), detail: str = "",
            children: Sequence["Report"] = ()) -> Check:
        status = FAIL if violations else PASS
        if children and any(not c.passed for c in children):
            status = FAIL
        c = Check(name, status, detail, list(violations), list(children))
        self.checks.append(c)
        return c

    def skip(self, name: str, detail: str) -> Check:
        c = Check(name, SKIPPED, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail, c.violations, c.children))

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def status_of(self, name: str) -> Optional[str]:
        for c in self.checks:
            if c.name == name:
                return c.status
        return None

    def violations(self) -> List[Violation]:
        return [v for c in self.checks for v in c.violations]

    def to_dict(self) -> dict:
        return {"title": self.title, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}

    def format(self, indent: int = 0, max_violations: int = 3) -> str:
        pad = "  " * indent
        lines = [f"{pad}{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            line = f"{pad}  [{c.status}] {c.name}"
            if c.detail:
                line += f" ({c.detail})"
            lines.append(line)
            for v in c.violations[:max_violations]:
                w = ", ".join(str(x) for x in v.witness)
                lines.append(f"{pad}      at ({w}): residual {v.residual}")
            if len(c.violations) > max_violations:
                lines.append(f"{pad}      ... {len(c.violations) - max_violations} more")
            for child in c.children:
                lines.append(child.format(indent + 2, max_violations))
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.format()
