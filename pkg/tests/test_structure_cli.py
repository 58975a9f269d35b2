import json

import pytest

from jacobi_qn import cli
from jacobi_qn.gallery import fixture, fixture_text, gallery, names
from jacobi_qn.parse import ParseError
from jacobi_qn.runner import Options, run
from jacobi_qn.structure import dump_structure, load_structure, parse_structure

SMALL = """[meta]
name = "plane"

[base]
coordinates = ["x", "y"]

[algebroid]
builder = "tangent"
phi0 = "dy"

[objects]
pi = "d/dx^d/dy"

[[checks]]
name = "cocycle"

[[checks]]
name = "jacobi_bivector"
"""


def test_small_file_parses():
    sf = parse_structure(SMALL, "plane")
    assert sf.vars == ("x", "y")
    assert [c.name for c in sf.checks] == ["cocycle", "jacobi_bivector"]
    assert sf.kinds["pi"] == "bivector"
    assert sf.describe() == "tangent algebroid of rank 2 over (x, y)"


def test_parse_errors_carry_line_and_column():
    bad = SMALL.replace('pi = "d/dx^d/dy"', 'pi = "x^-1*d/dx^d/dy"')
    with pytest.raises(ParseError) as info:
        parse_structure(bad, "bad")
    assert info.value.line == 12
    assert "exponents must be nonnegative integer literals" in str(info.value)


@pytest.mark.parametrize("edit, message", [
    (('[meta]', 'colour = "red"\n[meta]'), "colour"),
    (('pi = "d/dx^d/dy"', 'pi = "d/dx"'), "degree"),
    (('builder = "tangent"', 'builder = "moebius"'), "moebius"),
])
def test_structural_errors(edit, message):
    with pytest.raises(ParseError, match=message):
        parse_structure(SMALL.replace(*edit), "bad")


def test_use_merges_over_a_gallery_fixture(tmp_path):
    p = tmp_path / "mine.toml"
    p.write_text('use = "symplectic-r2"\n\n[meta]\nname = "mine"\n\n[[checks]]\nname = "conformal_symplectic"\n')
    sf = load_structure(str(p))
    assert sf.name == "mine"
    assert "omega" in sf.objects
    assert [c.name for c in sf.checks] == ["conformal_symplectic"]


@pytest.mark.parametrize("name", names())
def test_dump_round_trip(name):
    sf = load_structure(name)
    again = parse_structure(dump_structure(sf), name)
    assert again.vars == sf.vars
    assert again.objects == sf.objects
    assert [(c.name, c.label, c.args) for c in again.checks] == [(c.name, c.label, c.args) for c in sf.checks]
    assert again.J.algebroid.anchor == sf.J.algebroid.anchor
    assert again.J.cocycle == sf.J.cocycle


def test_gallery_metadata():
    assert len(names()) >= 30
    for fx in gallery():
        assert fx.description
        assert set(fx.expected.values()) <= {"pass", "fail", "skipped"}
    with pytest.raises(KeyError):
        fixture_text("no-such-fixture")


@pytest.mark.parametrize("name", names())
def test_gallery_verdicts_match_expectations(name):
    fx = fixture(name)
    sf = fx.load()
    results = run(sf, Options())
    got = {r.spec.label: r.verdict for r in results}
    assert got == fx.expected


def test_check_exit_codes(capsys):
    assert cli.main(["check", "std-contact-r3"]) == 0
    assert cli.main(["check", "broken-cocycle"]) == 1
    assert cli.main(["check", "no-such-file.toml"]) == 2
    out = capsys.readouterr()
    assert "summary:" in out.out


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.toml"
    p.write_text(SMALL.replace('pi = "d/dx^d/dy"', 'pi = "x^-1*d/dx^d/dy"'))
    assert cli.main(["check", str(p)]) == 2
    err = capsys.readouterr().err
    assert "line 12, column 9" in err
    assert "^" in err


def test_unknown_check_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.toml"
    p.write_text(SMALL.replace('name = "cocycle"', 'name = "frobnicate"'))
    assert cli.main(["check", str(p)]) == 2
    assert "frobnicate" in capsys.readouterr().err


def test_bad_toml_exit_code(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text("vars = [\n")
    assert cli.main(["check", str(p)]) == 2


def test_samples_dimension_mismatch(capsys):
    assert cli.main(["check", "std-contact-r3", "--samples", "(0,0)"]) == 2


def test_json_report_schema_and_determinism(capsys):
    cli.main(["check", "broken-cocycle", "--format", "json"])
    first = capsys.readouterr().out
    cli.main(["check", "broken-cocycle", "--format", "json"])
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["schema"] == "jacobi-qn-report/1"
    assert doc["passed"] is False
    assert doc["summary"]["checks"] == len(doc["checks"])
    failing = [c for c in doc["checks"] if c["verdict"] == "fail"]
    assert failing and failing[0]["report"]


def test_timing_goes_to_stderr(capsys):
    cli.main(["check", "symplectic-r2", "--timing"])
    out = capsys.readouterr()
    assert "timing:" in out.err and "timing:" not in out.out


def test_gallery_command(tmp_path, capsys):
    assert cli.main(["gallery"]) == 0
    assert "std-contact-r3" in capsys.readouterr().out
    assert cli.main(["gallery", "std-contact-r3"]) == 0
    assert "[[checks]]" in capsys.readouterr().out
    assert cli.main(["gallery", "nope"]) == 2
    assert cli.main(["gallery", "--export", str(tmp_path)]) == 0
    assert len(list(tmp_path.glob("*.toml"))) == len(names())


def test_identities_command(capsys):
    assert cli.main(["identities", "--cases", "2", "--bivectors", "5"]) == 0
    assert "suites pass" in capsys.readouterr().out


def test_form_labels_are_accepted_for_bivectors():
    sf = parse_structure(SMALL.replace('pi = "d/dx^d/dy"', 'pi = "dx^dy"'), "plane")
    assert sf.objects["pi"] == parse_structure(SMALL, "plane").objects["pi"]


def test_use_alone_loads_the_fixture(tmp_path):
    p = tmp_path / "contact.toml"
    p.write_text('use = "std-contact-r3"\n')
    sf = load_structure(str(p))
    assert sf.objects == load_structure("std-contact-r3").objects
    assert all(r.verdict == "pass" for r in run(sf, Options()))
