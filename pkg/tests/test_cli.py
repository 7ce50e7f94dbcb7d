import json
import random
from fractions import Fraction

import pytest

from darboux import cli
from darboux.cli import (
    SpecError, parse_form_term, parse_poly, parse_rational, parse_spec,
    serialize_spec,
)
from darboux.polyforms import Poly
from darboux.verifier import StructureSpec
from darboux import normal_form as nf
from conftest import transform_instance


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if isinstance(doc, dict) else doc,
                    encoding="utf-8")
    return str(path)


SYMPLECTIC_DOC = {
    "version": 1, "kind": "symplectic", "dim": 4,
    "two_forms": [[{"indices": [1, 2], "coeff": "1"},
                   {"indices": [3, 4], "coeff": "1"}]],
}

CHART_DOC = {
    "version": 1, "kind": "chart", "chart": ["x", "y"],
    "forms": [{"name": "omega", "terms": ["(x^2 + y^2) * dx∧dy"]}],
    "points": [["0", "0"], ["1", "0"]],
}

CONNECTION_DOC = {
    "version": 1, "kind": "connection", "chart": ["t", "x", "p"],
    "christoffel": [{"upper": "t", "lower": ["p", "x"], "value": "-1"}],
    "forms": [{"name": "eta", "terms": ["1 * dt", "-p * dx"]}],
}


def test_parse_rational_and_errors():
    assert parse_rational("-3/4", "$") == Fraction(-3, 4)
    assert parse_rational(2, "$") == 2
    with pytest.raises(SpecError):
        parse_rational("1/0", "$")
    with pytest.raises(SpecError):
        parse_rational("0.5", "$")


def test_parse_poly_grammar():
    chart = ("x", "y")
    x, y = Poly.variable(chart, "x"), Poly.variable(chart, "y")
    assert parse_poly(chart, "x^2 - 2*y + 1/2", "$") == \
        x * x - y.scale(2) + Poly.constant(chart, Fraction(1, 2))
    assert parse_poly(chart, "-(x + y)*(x - y)", "$") == y * y - x * x
    with pytest.raises(SpecError):
        parse_poly(chart, "x +", "$")
    with pytest.raises(SpecError):
        parse_poly(chart, "z", "$")


def test_parse_form_term_syntax():
    chart = ("x", "y", "z")
    key, coeff = parse_form_term(chart, "(x + y) * dx∧dz", "$")
    assert key == (1, 3)
    assert coeff == Poly.variable(chart, "x") + Poly.variable(chart, "y")
    with pytest.raises(SpecError):
        parse_form_term(chart, "x * dw", "$")


def test_linear_spec_round_trip_through_serializer():
    rng = random.Random(101)
    templates = [
        nf.CanonicalTemplate.symplectic(2),
        nf.CanonicalTemplate.cosymplectic(1),
        nf.CanonicalTemplate.k_symplectic(2, 2),
        nf.CanonicalTemplate.k_precosymplectic(2, 2, (2, 1), 1,
                                               ((1, 2), (1,))),
    ]
    for tpl in templates:
        ones, twos, V, g, _ = transform_instance(tpl, rng)
        splitting = None
        if tpl.kind == "k_precosymplectic":
            splitting = nf.compute_splitting(twos, V, g)
        spec = StructureSpec(tpl.kind, tpl.dim, tuple(ones), tuple(twos),
                             None, V, splitting, g)
        assert parse_spec(serialize_spec(spec)) == spec


def test_strict_parsing_rejects_unknown_and_missing_fields():
    with pytest.raises(SpecError):
        parse_spec(json.dumps({**SYMPLECTIC_DOC, "bogus": 1}))
    with pytest.raises(SpecError):
        parse_spec(json.dumps({"version": 1, "kind": "symplectic"}))
    with pytest.raises(SpecError):
        parse_spec(json.dumps({**SYMPLECTIC_DOC, "version": 2}))
    with pytest.raises(SpecError):
        parse_spec("not json")
    with pytest.raises(SpecError):
        parse_spec(json.dumps({**SYMPLECTIC_DOC, "kind": "mystery"}))


def test_classify_command_exit_codes_and_machine_format(tmp_path, capsys):
    path = write(tmp_path, "s.json", SYMPLECTIC_DOC)
    assert cli.main(["classify", path, "--format", "machine"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["version"] == 1
    assert out["report"]["verdict"]["accepted"] is True

    degenerate = dict(SYMPLECTIC_DOC)
    degenerate["two_forms"] = [[{"indices": [1, 2], "coeff": "1"}]]
    path = write(tmp_path, "d.json", degenerate)
    assert cli.main(["classify", path, "--format", "machine"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["report"]["verdict"]["accepted"] is False


def test_input_errors_exit_with_code_two(tmp_path, capsys):
    bad = dict(SYMPLECTIC_DOC)
    bad["two_forms"] = [[{"indices": [1, 2], "coeff": "1/0"}]]
    path = write(tmp_path, "bad.json", bad)
    assert cli.main(["classify", path]) == 2
    assert "input error" in capsys.readouterr().err
    assert cli.main(["classify", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_normalform_command_with_and_without_self_test(tmp_path, capsys):
    path = write(tmp_path, "s.json", SYMPLECTIC_DOC)
    assert cli.main(["normalform", path, "--format", "machine"]) == 0
    out = json.loads(capsys.readouterr().out)
    report = out["report"]
    assert report["verified"] is True
    assert report["template"]["params"] == {"n": 2}
    assert report["randomized_self_test"] is False

    assert cli.main(["normalform", path, "--seed", "7",
                     "--format", "machine"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["report"]["randomized_self_test"] is True
    assert out["report"]["verified"] is True


def test_normalform_reports_the_violated_clause(tmp_path, capsys):
    degenerate = dict(SYMPLECTIC_DOC)
    degenerate["two_forms"] = [[{"indices": [1, 2], "coeff": "1"}]]
    path = write(tmp_path, "d.json", degenerate)
    assert cli.main(["normalform", path, "--format", "machine"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["report"]["accepted"] is False
    assert out["report"]["clause"] == "degenerate"


def test_chart_check_command(tmp_path, capsys):
    path = write(tmp_path, "c.json", CHART_DOC)
    assert cli.main(["chart-check", path, "--format", "machine"]) == 0
    out = json.loads(capsys.readouterr().out)
    form = out["report"]["forms"][0]
    assert form["closed"] is True
    assert form["generic_rank"] == 2
    assert form["rank_profile"] == [0, 2]
    assert form["kernel_dims"] == [2, 0]


def test_chart_check_point_override(tmp_path, capsys):
    path = write(tmp_path, "c.json", CHART_DOC)
    assert cli.main(["chart-check", path, "--points", "2,0",
                     "--format", "machine"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["report"]["forms"][0]["rank_profile"] == [2]
    assert cli.main(["chart-check", path, "--points", "1"]) == 2
    capsys.readouterr()


def test_connection_check_command(tmp_path, capsys):
    path = write(tmp_path, "n.json", CONNECTION_DOC)
    assert cli.main(["connection-check", path, "--format", "machine"]) == 0
    out = json.loads(capsys.readouterr().out)
    report = out["report"]
    assert report["flat"] is True
    assert report["torsion_free"] is False
    assert report["forms"][0]["parallel"] is True
    assert report["forms"][0]["closed"] is False


def test_corpus_exits_zero_and_machine_output_is_deterministic(capsys):
    assert cli.main(["corpus", "--format", "machine"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["corpus", "--format", "machine"]) == 0
    second = capsys.readouterr().out
    assert first == second
    report = json.loads(first)["report"]
    assert report["passed"] == report["total"] == 6


def test_corpus_filter(capsys):
    assert cli.main(["corpus", "--filter", "immersion",
                     "--format", "machine"]) == 0
    report = json.loads(capsys.readouterr().out)["report"]
    assert report["total"] == 1


def test_human_format_renders_flat_text(tmp_path, capsys):
    path = write(tmp_path, "s.json", SYMPLECTIC_DOC)
    assert cli.main(["classify", path]) == 0
    out = capsys.readouterr().out
    assert "accepted: yes" in out
