"""Named fixtures shipped with the package.

Each fixture is a structure file under ``gallery/`` whose ``[meta]`` table
records a description and the expected verdict of every check.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, List

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    expected: Dict[str, str]
    text: str

    def load(self):
        from .structure import parse_structure
        return parse_structure(self.text, self.name)


def _dir():
    return resources.files(__package__).joinpath("gallery")


@lru_cache(maxsize=None)
def names() -> List[str]:
    return sorted(p.name[:-5] for p in _dir().iterdir() if p.name.endswith(".toml"))


def fixture_text(name: str) -> str:
    if name not in names():
        raise KeyError(name)
    return _dir().joinpath(name + ".toml").read_text(encoding="utf-8")


def fixture(name: str) -> Fixture:
    text = fixture_text(name)
    meta = tomllib.loads(text).get("meta", {})
    return Fixture(name, meta.get("description", ""), dict(meta.get("expected", {})), text)


def gallery() -> List[Fixture]:
    return [fixture(n) for n in names()]


__all__ = ["Fixture", "names", "fixture_text", "fixture", "gallery"]
