"""Structure-definition files.

A structure file is TOML with four parts::

    use = "std-contact-r3"          # optional: start from a gallery fixture

    [base]
    coordinates = ["x", "y", "z"]   # or dim = 3

    [algebroid]
    builder = "tangent"             # "tangent", "e1", or omit for explicit data
    phi0 = "0"                      # tangent only

    [objects]
    pi = "d/dx^d/dy"                # kind inferred from the name
    N = ["d/dy", "-d/dx"]           # endomorphism: images of the frame
    w = { kind = "form2", value = "dx^dy" }

    [[checks]]
    name = "gcs"
    pi = "w"                        # object arguments name entries of [objects]

An explicit algebroid gives ``rank``, ``anchor`` (the image of each frame
element as a vector field on the base), ``brackets`` (a table keyed
``"e1,e2"``) and ``cocycle``.  A bracket given for both ``(i,j)`` and
``(j,i)`` is taken as written, so antisymmetry can be violated on purpose.
Every string value is an expression in the grammar of :mod:`jacobi_qn.parse`.
"""

from __future__ import annotations

import json
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .algebroid import GlValuedForm, JacobiAlgebroid, LieAlgebroid, coordinate_labels
from .contact import build_e1, coordinates
from .parse import ParseError, basis_symbols, parse_kvector, parse_poly
from .symalg import FORM, MV, EndoTensor, KVector, PolyFn

KINDS = {
    "function": (0, "form"),
    "vector": (1, "mv"),
    "bivector": (2, "mv"),
    "trivector": (3, "mv"),
    "form1": (1, "form"),
    "form2": (2, "form"),
    "form3": (3, "form"),
    "endo": None,
    "gl": None,
}

_NAME_KINDS = [
    (r"(pi|Lambda|Lam)\w*", "bivector"),
    (r"(X|Y)\w*", "vector"),
    (r"(varphi|N)\w*", "endo"),
    (r"phi\w*", "form3"),
    (r"(sigma|omega|B)\w*", "form2"),
    (r"eta\w*", "form1"),
    (r"theta\w*", "gl"),
    (r"f\w*", "function"),
]


def infer_kind(name: str) -> Optional[str]:
    for pat, kind in _NAME_KINDS:
        if re.fullmatch(pat, name):
            return kind
    return None


@dataclass
class CheckSpec:
    name: str
    label: str
    args: Dict[str, Any]


@dataclass
class StructureFile:
    name: str
    vars: Tuple[str, ...]
    builder: str
    J: JacobiAlgebroid
    objects: Dict[str, Any]
    kinds: Dict[str, str]
    checks: List[CheckSpec]
    meta: Dict[str, Any] = field(default_factory=dict)
    text: str = ""

    @property
    def expected(self) -> Dict[str, str]:
        return dict(self.meta.get("expected", {}))

    def describe(self) -> str:
        return f"{self.builder} algebroid of rank {self.J.rank} over ({', '.join(self.vars)})"


class _Locator:
    """Maps string values back to line and column of the raw text."""

    def __init__(self, text: str):
        self.lines = text.splitlines()

    def find(self, value: str, key: Optional[str] = None) -> Tuple[int, int]:
        for want_key in (True, False):
            for n, line in enumerate(self.lines, 1):
                if want_key and key and not re.search(rf"(^|[\s{{,]){re.escape(key)}\s*=", line):
                    continue
                for quote in ('"', "'"):
                    j = line.find(quote + value + quote)
                    if j >= 0:
                        return n, j + 2
        return 0, 0

    def wrap(self, err: ParseError, value: str, key: Optional[str]) -> ParseError:
        line, col = self.find(value, key)
        if line:
            return err.located(line, col)
        return err


def _err(msg: str, text: str = "", key: Optional[str] = None, loc: Optional[_Locator] = None) -> ParseError:
    e = ParseError(msg)
    if loc and key:
        for n, line in enumerate(loc.lines, 1):
            m = re.search(rf"(^|[\s{{,]){re.escape(key)}\s*=", line)
            if m:
                return ParseError(msg, line=n, col=m.start() + 1 + (1 if m.group(1) else 0))
    return e


def _load_toml(text: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"\(at line (\d+), column (\d+)\)", str(exc))
        msg = re.sub(r"\s*\(at line \d+, column \d+\)", "", str(exc))
        if m:
            raise ParseError(f"TOML: {msg}", line=int(m.group(1)), col=int(m.group(2))) from None
        raise ParseError(f"TOML: {msg}") from None


# -- algebroid ------------------------------------------------------------------------------

def _base_vars(doc: dict, loc: _Locator) -> Tuple[str, ...]:
    base = doc.get("base", {})
    if "coordinates" in base:
        vars = tuple(str(v) for v in base["coordinates"])
        for v in vars:
            if not re.fullmatch(r"[A-Za-z_]\w*", v) or v.startswith("d"):
                raise _err(f"bad coordinate name {v!r} (identifiers not starting with 'd')", key="coordinates",
                           loc=loc)
        if "dim" in base and base["dim"] != len(vars):
            raise _err(f"dim = {base['dim']} but {len(vars)} coordinates given", key="dim", loc=loc)
        return vars
    if "dim" in base:
        return coordinates(int(base["dim"]))
    raise _err("[base] needs coordinates or dim")


def _expr_kv(text: str, vars, rank, degree, variance, basis, loc, key) -> KVector:
    try:
        return parse_kvector(text, vars, rank, degree, variance, basis)
    except ParseError as e:
        raise loc.wrap(e, str(text), key) from None


def _build_algebroid(doc: dict, vars: Tuple[str, ...], loc: _Locator) -> Tuple[str, JacobiAlgebroid]:
    spec = doc.get("algebroid", {"builder": "tangent"})
    builder = spec.get("builder")
    m = len(vars)
    tb = basis_symbols(vars, coordinate_labels(vars, MV), coordinate_labels(vars, FORM))
    if builder == "tangent":
        A = LieAlgebroid.tangent(vars)
        phi0 = spec.get("phi0", spec.get("cocycle", "0"))
        key = "phi0" if "phi0" in spec else "cocycle"
        cocycle = _expr_kv(phi0, vars, m, 1, FORM, tb, loc, key)
        # closedness is a verdict of the cocycle check, not a load error
        return "tangent", JacobiAlgebroid(A, cocycle)
    if builder == "e1":
        if "t" in vars:
            raise _err("builder e1 reserves t for the line direction; rename the coordinate", key="coordinates",
                       loc=loc)
        return "e1", build_e1(vars)
    if builder is not None:
        raise _err(f"unknown builder {builder!r} (tangent, e1, or explicit data)", key="builder", loc=loc)

    if "rank" not in spec:
        raise _err("explicit algebroid needs rank", key="algebroid", loc=loc)
    r = int(spec["rank"])
    anchor_src = spec.get("anchor", ["0"] * r)
    if len(anchor_src) != r:
        raise _err(f"rank mismatch: rank = {r} but {len(anchor_src)} anchor entries", key="anchor", loc=loc)
    anchor = []
    for a in anchor_src:
        v = _expr_kv(a, vars, m, 1, MV, tb, loc, "anchor")
        anchor.append([v[(l,)] for l in range(m)])
    labels = [f"e{i + 1}" for i in range(r)]
    eb = {f"e{i + 1}": i for i in range(r)}
    z = PolyFn.zero(vars)
    st = [[[z] * r for _ in range(r)] for _ in range(r)]
    given = {}
    for k, expr in spec.get("brackets", {}).items():
        parts = [p.strip() for p in k.split(",")]
        if len(parts) != 2 or any(p not in eb for p in parts):
            raise _err(f"bracket key {k!r} must be 'ei,ej' with 1 <= i, j <= {r}", key=f'"{k}"', loc=loc)
        i, j = eb[parts[0]], eb[parts[1]]
        v = _expr_kv(expr, vars, r, 1, MV, eb, loc, f'"{k}"')
        given[(i, j)] = [v[(c,)] for c in range(r)]
    for (i, j), comps in given.items():
        st[i][j] = comps
        if (j, i) not in given:
            st[j][i] = [-c for c in comps]
    A = LieAlgebroid(vars, anchor, st, MV, labels)
    cocycle = _expr_kv(spec.get("cocycle", "0"), vars, r, 1, FORM, eb, loc, "cocycle")
    return "explicit", JacobiAlgebroid(A, cocycle)


# -- objects ----------------------------------------------------------------------------

def frame_basis(J: JacobiAlgebroid) -> Dict[str, int]:
    return basis_symbols(J.vars, J.labels, J.form_labels)


def _parse_object(name: str, kind: str, value, J: JacobiAlgebroid, loc: _Locator):
    vars, r = J.vars, J.rank
    basis = frame_basis(J)
    if kind == "endo":
        if not isinstance(value, list):
            raise _err(f"{name}: an endomorphism is a list of frame images or a matrix of rows", key=name, loc=loc)
        if len(value) != r:
            raise _err(f"rank mismatch: {name} has {len(value)} entries, rank is {r}", key=name, loc=loc)
        if all(isinstance(v, list) for v in value):
            rows = []
            for row in value:
                if len(row) != r:
                    raise _err(f"rank mismatch: {name} rows need {r} entries", key=name, loc=loc)
                rows.append([_poly(c, vars, loc, name) for c in row])
            return EndoTensor(vars, rows, J.variance)
        cols = [_expr_kv(v, vars, r, 1, J.variance, basis, loc, name) for v in value]
        return EndoTensor(vars, [[cols[j][(i,)] for j in range(r)] for i in range(r)], J.variance)
    if kind == "gl":
        if not isinstance(value, list) or len(value) != r:
            raise _err(f"rank mismatch: {name} needs one matrix per frame element ({r})", key=name, loc=loc)
        try:
            return GlValuedForm(vars, [[[_poly(c, vars, loc, name) for c in row] for row in mat] for mat in value])
        except (TypeError, ValueError) as e:
            raise _err(f"{name}: {e}", key=name, loc=loc) from None
    degree, side = KINDS[kind]
    variance = J.variance if side == "mv" else J.form_variance
    return _expr_kv(value, vars, r, degree, variance, basis, loc, name)


def _poly(text, vars, loc, key) -> PolyFn:
    try:
        return parse_poly(str(text), vars)
    except ParseError as e:
        raise loc.wrap(e, str(text), key) from None


def _merge(base: dict, over: dict) -> dict:
    out = dict(base)
    for k, v in over.items():
        if k in ("objects", "meta") and isinstance(v, dict):
            out[k] = {**base.get(k, {}), **v}
        else:
            out[k] = v
    return out


def parse_structure(text: str, name: str = "<input>", _depth: int = 0) -> StructureFile:
    """Parse a structure file; raises :class:`ParseError` with line and column."""
    doc = _load_toml(text)
    loc = _Locator(text)
    if "use" in doc:
        if _depth > 3:
            raise _err("gallery references nest too deeply", key="use", loc=loc)
        from .gallery import fixture_text
        try:
            base_text = fixture_text(str(doc["use"]))
        except KeyError:
            raise _err(f"unknown gallery fixture {doc['use']!r}", key="use", loc=loc) from None
        base = _load_toml(base_text)
        own = {k: v for k, v in doc.items() if k != "use"}
        if "meta" not in own:
            name = base.get("meta", {}).get("name", name) if name == "<input>" else name
        doc = _merge(base, own)
        text = base_text if not own else text
        loc = _Locator(text)
    unknown = set(doc) - {"base", "algebroid", "objects", "checks", "meta", "use"}
    if unknown:
        k = sorted(unknown)[0]
        raise _err(f"unknown top-level key {k!r}", key=k, loc=loc)
    vars = _base_vars(doc, loc)
    builder, J = _build_algebroid(doc, vars, loc)
    objects, kinds = {}, {}
    for oname, val in doc.get("objects", {}).items():
        if isinstance(val, dict):
            kind = val.get("kind")
            if kind not in KINDS:
                raise _err(f"{oname}: unknown kind {kind!r}; expected one of {', '.join(KINDS)}", key=oname, loc=loc)
            if "value" not in val:
                raise _err(f"{oname}: missing value", key=oname, loc=loc)
            val = val["value"]
        else:
            kind = infer_kind(oname)
            if kind is None:
                raise _err(f"cannot infer the kind of {oname!r}; write {{ kind = ..., value = ... }}",
                           key=oname, loc=loc)
        objects[oname] = _parse_object(oname, kind, val, J, loc)
        kinds[oname] = kind
    checks = []
    seen = set()
    for k, c in enumerate(doc.get("checks", [])):
        if "name" not in c:
            raise _err(f"check #{k + 1} has no name", key="checks", loc=loc)
        label = str(c.get("label", c["name"]))
        if label in seen:
            raise _err(f"duplicate check label {label!r}; add label = ...", key="label", loc=loc)
        seen.add(label)
        args = {a: v for a, v in c.items() if a not in ("name", "label")}
        checks.append(CheckSpec(str(c["name"]), label, args))
    meta = dict(doc.get("meta", {}))
    return StructureFile(meta.get("name", name), vars, builder, J, objects, kinds, checks, meta, text)


def load_structure(path_or_name: str) -> StructureFile:
    """A file path, or a gallery fixture name (with or without ``.toml``)."""
    import os
    if os.path.exists(path_or_name):
        with open(path_or_name, encoding="utf-8") as fh:
            text = fh.read()
        stem = os.path.splitext(os.path.basename(path_or_name))[0]
        return parse_structure(text, stem)
    from .gallery import fixture_text
    name = path_or_name[:-5] if path_or_name.endswith(".toml") else path_or_name
    name = os.path.basename(name)
    try:
        text = fixture_text(name)
    except KeyError:
        raise FileNotFoundError(f"no such file or gallery fixture: {path_or_name}") from None
    return parse_structure(text, name)


# -- serialization -------------------------------------------------------------------------

def _q(s: str) -> str:
    return json.dumps(str(s), ensure_ascii=False)


def _labels(sf: StructureFile, side: str) -> List[str]:
    J = sf.J
    if sf.builder == "explicit":
        return [f"e{i + 1}" for i in range(J.rank)]
    return list(J.labels if side == "mv" else J.form_labels)


def expr_of(sf: StructureFile, w: KVector) -> str:
    """An expression that parses back to ``w`` in this file."""
    side = "mv" if w.variance == sf.J.variance else "form"
    return w.format(_labels(sf, side))


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return str(v)
    return _q(v)


def dump_structure(sf: StructureFile) -> str:
    """TOML text that :func:`parse_structure` reads back to the same data."""
    J = sf.J
    out = []
    if sf.meta:
        out.append("[meta]")
        for k, v in sf.meta.items():
            if isinstance(v, dict):
                body = ", ".join(f"{_q(a)} = {_value(b)}" for a, b in v.items())
                out.append(f"{k} = {{ {body} }}")
            else:
                out.append(f"{k} = {_value(v)}")
        out.append("")
    out += ["[base]", "coordinates = [" + ", ".join(_q(v) for v in sf.vars) + "]", "", "[algebroid]"]
    if sf.builder == "tangent":
        out += ['builder = "tangent"', f"phi0 = {_q(expr_of(sf, J.cocycle))}"]
    elif sf.builder == "e1":
        out.append('builder = "e1"')
    else:
        r, m = J.rank, len(sf.vars)
        tl = coordinate_labels(sf.vars, MV)
        anchor = [KVector.from_components(sf.vars, m, MV, list(row)).format(tl) for row in J.anchor]
        out.append(f"rank = {r}")
        out.append("anchor = [" + ", ".join(_q(a) for a in anchor) + "]")
        br = []
        for i in range(r):
            for j in range(r):
                comps = J.structure[i][j]
                if i != j and any(comps):
                    w = KVector.from_components(sf.vars, r, MV, list(comps))
                    br.append(f'"e{i + 1},e{j + 1}" = {_q(w.format(_labels(sf, "mv")))}')
        if br:
            out.append("brackets = { " + ", ".join(br) + " }")
        out.append(f"cocycle = {_q(expr_of(sf, J.cocycle))}")
    if sf.objects:
        out += ["", "[objects]"]
    for name, obj in sf.objects.items():
        kind = sf.kinds[name]
        if kind == "endo":
            val = "[" + ", ".join(_q(expr_of(sf, obj(J.frame(j)))) for j in range(J.rank)) + "]"
        elif kind == "gl":
            val = "[" + ", ".join("[" + ", ".join("[" + ", ".join(_q(str(c)) for c in row) + "]" for row in mat)
                                  + "]" for mat in obj.entries) + "]"
        else:
            val = _q(expr_of(sf, obj))
        out.append(f"{name} = {{ kind = {_q(kind)}, value = {val} }}")
    for c in sf.checks:
        out += ["", "[[checks]]", f"name = {_q(c.name)}"]
        if c.label != c.name:
            out.append(f"label = {_q(c.label)}")
        for k, v in c.args.items():
            out.append(f"{k} = {_value(v)}")
    return "\n".join(out) + "\n"


__all__ = ["KINDS", "infer_kind", "CheckSpec", "StructureFile", "parse_structure", "load_structure", "frame_basis",
           "expr_of", "dump_structure"]
