"""Command-line front end.

Commands: classify, normalform, chart-check, connection-check, corpus.
Input files are strict JSON documents (unknown fields rejected, rational
coefficients as exact strings).  Reports come in a human-readable rendering
or a deterministic machine-readable JSON line (`--format machine`).

Exit codes: 0 success, 1 structural rejection, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from .linalg import Mat, Subspace, inverse, rank, vector
from .exterior import AltForm, pullback
from . import normal_form as nf
from .verifier import StructureSpec, Verdict, classify
from .polyforms import (
    Poly,
    PolyForm,
    PolyVectorField,
    frobenius_involutive,
    generic_rank,
    is_closed,
    kernel_distribution,
    rank_profile,
)
from .connection import Connection, curvature, is_flat, is_parallel, torsion
from .corpus import run_corpus


class SpecError(ValueError):
    """Malformed input document; reported with the offending field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


# ---------------------------------------------------------------- rationals

def parse_rational(text, path) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise SpecError(path, f"expected a rational string, got {text!r}")
    if not re.fullmatch(r"\s*[+-]?\d+(/\d+)?\s*", text):
        raise SpecError(path, f"bad rational {text!r}: expected 'p' or 'p/q'")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(path, f"bad rational {text!r}: {exc}") from exc
    return value


# ---------------------------------------------------------- polynomial text

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def _tokenize(text, path):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise SpecError(path, f"unexpected character {text[pos]!r} "
                                f"at offset {pos}")
            break
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    return out


class _PolyParser:
    def __init__(self, chart, tokens, path):
        self.chart = chart
        self.tokens = tokens
        self.i = 0
        self.path = path

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise SpecError(self.path, f"expected {op!r}, got {val!r}")

    def parse(self) -> Poly:
        p = self.expr()
        if self.i != len(self.tokens):
            raise SpecError(self.path, "trailing input in polynomial")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Poly:
        p = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise SpecError(self.path, "exponent must be a nonnegative "
                                "integer")
            out = Poly.constant(self.chart, 1)
            for _ in range(val):
                out = out * p
            return out
        return p

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            num = val
            if self.peek() == ("op", "/"):
                self.take()
                k2, den = self.take()
                if k2 != "num":
                    raise SpecError(self.path, "denominator must be an integer")
                if den == 0:
                    raise SpecError(self.path, "zero denominator")
                return Poly.constant(self.chart, Fraction(num, den))
            return Poly.constant(self.chart, num)
        if kind == "name":
            if val not in self.chart:
                raise SpecError(self.path, f"unknown variable {val!r}")
            return Poly.variable(self.chart, val)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise SpecError(self.path, f"unexpected token {val!r}")


def parse_poly(chart, text, path) -> Poly:
    if not isinstance(text, str):
        raise SpecError(path, "polynomial must be a string")
    return _PolyParser(tuple(chart), _tokenize(text, path), path).parse()


_WEDGE_TAIL = re.compile(
    r"(d[A-Za-z_][A-Za-z_0-9]*(?:\s*∧\s*d[A-Za-z_][A-Za-z_0-9]*)*)\s*$")


def parse_form_term(chart, text, path) -> tuple[tuple[int, ...], Poly]:
    """One additive term 'coeff * dx∧dy' (coefficient optional)."""
    if not isinstance(text, str):
        raise SpecError(path, "form term must be a string")
    m = _WEDGE_TAIL.search(text)
    if not m:
        raise SpecError(path, "form term needs a trailing wedge of "
                        "differentials like 'dx∧dy'")
    names = [part.strip()[1:] for part in m.group(1).split("∧")]
    indices = []
    for name in names:
        if name not in chart:
            raise SpecError(path, f"differential of unknown variable {name!r}")
        indices.append(chart.index(name) + 1)
    prefix = text[:m.start()].strip()
    if prefix.endswith("*"):
        prefix = prefix[:-1].strip()
    coeff = parse_poly(chart, prefix, path) if prefix else Poly.constant(chart, 1)
    return tuple(indices), coeff


def parse_poly_form(chart, terms, path) -> PolyForm:
    if not isinstance(terms, list) or not terms:
        raise SpecError(path, "form must be a non-empty list of term strings")
    parsed = [parse_form_term(chart, t, f"{path}[{i}]")
              for i, t in enumerate(terms)]
    degree = len(parsed[0][0])
    for i, (idx, _) in enumerate(parsed):
        if len(idx) != degree:
            raise SpecError(f"{path}[{i}]", "mixed degrees in one form")
    return PolyForm.build(chart, degree, parsed)


# ------------------------------------------------------------ strict JSON

def _check_keys(obj, allowed, required, path):
    if not isinstance(obj, dict):
        raise SpecError(path, "expected an object")
    for key in obj:
        if key not in allowed:
            raise SpecError(f"{path}.{key}", "unknown field")
    for key in required:
        if key not in obj:
            raise SpecError(f"{path}.{key}", "missing required field")


def parse_alt_form(dim, degree, records, path) -> AltForm:
    if not isinstance(records, list):
        raise SpecError(path, "expected a list of term records")
    items = []
    seen = set()
    for i, rec in enumerate(records):
        _check_keys(rec, {"indices", "coeff"}, {"indices", "coeff"},
                    f"{path}[{i}]")
        idx = rec["indices"]
        if (not isinstance(idx, list)
                or any(not isinstance(j, int) for j in idx)):
            raise SpecError(f"{path}[{i}].indices", "expected integer list")
        key = tuple(idx)
        if key in seen:
            raise SpecError(f"{path}[{i}].indices",
                            f"duplicate index tuple {key}")
        seen.add(key)
        if degree is not None and len(key) != degree:
            raise SpecError(f"{path}[{i}].indices",
                            f"expected {degree} indices")
        items.append((key, parse_rational(rec["coeff"], f"{path}[{i}].coeff")))
    if degree is None:
        degree = len(items[0][0]) if items else 0
    try:
        return AltForm.build(dim, degree, items)
    except ValueError as exc:
        raise SpecError(path, str(exc)) from exc


def parse_vectors(dim, rows, path):
    if not isinstance(rows, list):
        raise SpecError(path, "expected a list of vectors")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise SpecError(f"{path}[{i}]", f"expected {dim} entries")
        out.append(vector([parse_rational(x, f"{path}[{i}][{j}]")
                           for j, x in enumerate(row)]))
    return out


def parse_matrix(rows, path) -> Mat:
    if not isinstance(rows, list) or not rows:
        raise SpecError(path, "expected a non-empty list of rows")
    width = len(rows[0])
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width:
            raise SpecError(f"{path}[{i}]", "ragged matrix")
        parsed.append([parse_rational(x, f"{path}[{i}][{j}]")
                       for j, x in enumerate(row)])
    return Mat.from_rows(parsed)


LINEAR_KINDS = ("symplectic", "presymplectic", "cosymplectic",
                "precosymplectic", "k_symplectic", "k_presymplectic",
                "k_cosymplectic", "k_precosymplectic", "multisymplectic",
                "unknown")

_LINEAR_KEYS = {"version", "kind", "dim", "one_forms", "two_forms",
                "big_form", "distribution", "splitting", "metric",
                "parameters"}


def parse_spec(text: str):
    """Parse a JSON document into a structure spec / chart bundle /
    connection bundle, strictly."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno} column {exc.colno}", exc.msg)
    if not isinstance(doc, dict):
        raise SpecError("$", "top level must be an object")
    kind = doc.get("kind")
    if kind == "chart":
        return _parse_chart_doc(doc)
    if kind == "connection":
        return _parse_connection_doc(doc)
    if kind in LINEAR_KINDS:
        return _parse_linear_doc(doc)
    raise SpecError("$.kind", f"unknown kind {kind!r}")


def _parse_linear_doc(doc) -> StructureSpec:
    _check_keys(doc, _LINEAR_KEYS, {"version", "kind", "dim"}, "$")
    if doc["version"] != 1:
        raise SpecError("$.version", "unsupported version")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise SpecError("$.dim", "dimension must be a nonnegative integer")
    etas = tuple(parse_alt_form(dim, 1, rec, f"$.one_forms[{i}]")
                 for i, rec in enumerate(doc.get("one_forms", [])))
    omegas = tuple(parse_alt_form(dim, 2, rec, f"$.two_forms[{i}]")
                   for i, rec in enumerate(doc.get("two_forms", [])))
    big = None
    if "big_form" in doc:
        _check_keys(doc["big_form"], {"degree", "terms"},
                    {"degree", "terms"}, "$.big_form")
        big = parse_alt_form(dim, doc["big_form"]["degree"],
                             doc["big_form"]["terms"], "$.big_form.terms")
    V = None
    if "distribution" in doc:
        V = Subspace.spanned_by(
            dim, parse_vectors(dim, doc["distribution"], "$.distribution"))
    splitting = None
    if "splitting" in doc:
        _check_keys(doc["splitting"], {"components", "kernel_part"},
                    {"components", "kernel_part"}, "$.splitting")
        comps = tuple(
            Subspace.spanned_by(dim, parse_vectors(
                dim, rows, f"$.splitting.components[{i}]"))
            for i, rows in enumerate(doc["splitting"]["components"]))
        D = Subspace.spanned_by(dim, parse_vectors(
            dim, doc["splitting"]["kernel_part"], "$.splitting.kernel_part"))
        splitting = (comps, D)
    g = parse_matrix(doc["metric"], "$.metric") if "metric" in doc else None
    params = doc.get("parameters", {})
    if not isinstance(params, dict):
        raise SpecError("$.parameters", "expected an object")
    try:
        return StructureSpec(doc["kind"], dim, etas, omegas, big, V,
                             splitting, g, dict(params))
    except ValueError as exc:
        raise SpecError("$", str(exc)) from exc


def serialize_spec(spec: StructureSpec) -> str:
    """Inverse of parse_spec for linear documents."""
    doc = {"version": 1, "kind": spec.kind, "dim": spec.dim}
    if spec.etas:
        doc["one_forms"] = [f.to_records() for f in spec.etas]
    if spec.omegas:
        doc["two_forms"] = [f.to_records() for f in spec.omegas]
    if spec.big_form is not None:
        doc["big_form"] = {"degree": spec.big_form.degree,
                           "terms": spec.big_form.to_records()}
    if spec.V is not None:
        doc["distribution"] = [[str(x) for x in row] for row in spec.V.basis]
    if spec.splitting is not None:
        comps, D = spec.splitting
        doc["splitting"] = {
            "components": [[[str(x) for x in row] for row in c.basis]
                           for c in comps],
            "kernel_part": [[str(x) for x in row] for row in D.basis]}
    if spec.g is not None:
        doc["metric"] = [[str(spec.g[i, j]) for j in range(spec.g.cols)]
                         for i in range(spec.g.rows)]
    if spec.params:
        doc["parameters"] = spec.params
    return json.dumps(doc, sort_keys=True, ensure_ascii=False)


def _parse_chart_doc(doc):
    _check_keys(doc, {"version", "kind", "chart", "forms", "vector_fields",
                      "points"}, {"version", "kind", "chart"}, "$")
    if doc["version"] != 1:
        raise SpecError("$.version", "unsupported version")
    chart = doc["chart"]
    if (not isinstance(chart, list) or not chart
            or any(not isinstance(v, str) for v in chart)):
        raise SpecError("$.chart", "expected a list of variable names")
    chart = tuple(chart)
    forms = []
    for i, rec in enumerate(doc.get("forms", [])):
        _check_keys(rec, {"name", "terms"}, {"name", "terms"}, f"$.forms[{i}]")
        forms.append((rec["name"],
                      parse_poly_form(chart, rec["terms"],
                                      f"$.forms[{i}].terms")))
    fields = []
    for i, rec in enumerate(doc.get("vector_fields", [])):
        _check_keys(rec, {"name", "components"}, {"name", "components"},
                    f"$.vector_fields[{i}]")
        comps = rec["components"]
        if not isinstance(comps, list) or len(comps) != len(chart):
            raise SpecError(f"$.vector_fields[{i}].components",
                            f"expected {len(chart)} component polynomials")
        fields.append((rec["name"], PolyVectorField.build(
            chart, [parse_poly(chart, c,
                               f"$.vector_fields[{i}].components[{j}]")
                    for j, c in enumerate(comps)])))
    points = [tuple(parse_rational(x, f"$.points[{i}][{j}]")
                    for j, x in enumerate(pt))
              for i, pt in enumerate(doc.get("points", []))]
    for i, pt in enumerate(points):
        if len(pt) != len(chart):
            raise SpecError(f"$.points[{i}]", "point does not match the chart")
    return {"kind": "chart", "chart": chart, "forms": forms,
            "fields": fields, "points": points}


def _parse_connection_doc(doc):
    _check_keys(doc, {"version", "kind", "chart", "christoffel", "forms"},
                {"version", "kind", "chart", "christoffel"}, "$")
    if doc["version"] != 1:
        raise SpecError("$.version", "unsupported version")
    chart = doc["chart"]
    if (not isinstance(chart, list) or not chart
            or any(not isinstance(v, str) for v in chart)):
        raise SpecError("$.chart", "expected a list of variable names")
    chart = tuple(chart)
    entries = []
    for i, rec in enumerate(doc["christoffel"]):
        _check_keys(rec, {"upper", "lower", "value"},
                    {"upper", "lower", "value"}, f"$.christoffel[{i}]")
        names = [rec["upper"]] + list(rec["lower"])
        if len(names) != 3:
            raise SpecError(f"$.christoffel[{i}].lower",
                            "expected two lower indices")
        for name in names:
            if name not in chart:
                raise SpecError(f"$.christoffel[{i}]",
                                f"unknown variable {name!r}")
        key = tuple(chart.index(name) for name in names)
        entries.append((key, parse_poly(chart, rec["value"],
                                        f"$.christoffel[{i}].value")))
    forms = []
    for i, rec in enumerate(doc.get("forms", [])):
        _check_keys(rec, {"name", "terms"}, {"name", "terms"}, f"$.forms[{i}]")
        forms.append((rec["name"],
                      parse_poly_form(chart, rec["terms"],
                                      f"$.forms[{i}].terms")))
    return {"kind": "connection", "chart": chart,
            "connection": Connection.build(chart, entries), "forms": forms}


# ------------------------------------------------------------- rendering

def _render_value(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Mat):
        return [[str(x[i, j]) for j in range(x.cols)] for i in range(x.rows)]
    if isinstance(x, Subspace):
        return [[str(v) for v in row] for row in x.basis]
    if isinstance(x, tuple):
        return [_render_value(v) for v in x]
    if isinstance(x, list):
        return [_render_value(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _render_value(v) for k, v in x.items()}
    return x


def _verdict_dict(v: Verdict):
    return {
        "kind": v.kind,
        "accepted": v.accepted,
        "params": _render_value(v.params),
        "clauses": [{"name": c.name, "statement": c.statement,
                     "passed": c.passed,
                     "witness": _render_value(c.witness)}
                    for c in v.clauses],
    }


def _report(args, payload) -> str:
    if args.format == "machine":
        return json.dumps({"version": 1, "report": _render_value(payload)},
                          sort_keys=True, ensure_ascii=False)
    return _human(payload)


def _human(payload, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(_human(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_human_scalar(value)}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_human(value, indent + 1))
            else:
                lines.append(f"{pad}- {_human_scalar(value)}")
    else:
        lines.append(f"{pad}{_human_scalar(payload)}")
    return "\n".join(lines)


def _human_scalar(value):
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    return str(value)


# -------------------------------------------------------------- commands

def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SpecError(path, str(exc)) from exc


def _cmd_classify(args) -> int:
    spec = parse_spec(_load(args.spec))
    if not isinstance(spec, StructureSpec):
        raise SpecError("$.kind", "classify expects a linear structure spec")
    try:
        result = classify(spec)
    except ValueError as exc:
        raise SpecError("$", str(exc)) from exc
    if isinstance(result, dict):
        payload = {"command": "classify", "kind": "unknown",
                   "verdicts": {k: _verdict_dict(v) for k, v in result.items()}}
        accepted = any(v.accepted for v in result.values())
    else:
        payload = {"command": "classify", "verdict": _verdict_dict(result)}
        accepted = result.accepted
    print(_report(args, payload))
    return 0 if accepted else 1


def _random_invertible(dim, rng) -> Mat:
    while True:
        L = Mat.from_rows([[Fraction(rng.randint(-5, 5)) for _ in range(dim)]
                           for _ in range(dim)])
        if rank(L) == dim:
            return L


def _transform_spec(spec: StructureSpec, L: Mat) -> StructureSpec:
    """Pull every datum of a linear spec back through the invertible map L."""
    Li = inverse(L)
    etas = tuple(pullback(Li, f) for f in spec.etas)
    omegas = tuple(pullback(Li, f) for f in spec.omegas)
    big = pullback(Li, spec.big_form) if spec.big_form else None

    def push(S):
        return Subspace.spanned_by(spec.dim, [L.apply(b) for b in S.basis])

    V = push(spec.V) if spec.V is not None else None
    splitting = None
    if spec.splitting is not None:
        comps, D = spec.splitting
        splitting = (tuple(push(c) for c in comps), push(D))
    g = None
    if spec.g is not None:
        g = Li.transpose().matmul(spec.g).matmul(Li)
    return StructureSpec(spec.kind, spec.dim, etas, omegas, big, V,
                         splitting, g, dict(spec.params))


def _run_normal_form(spec: StructureSpec) -> nf.DarbouxReport:
    kind = spec.kind
    if kind == "symplectic":
        return nf.symplectic_darboux(spec.omegas[0])
    if kind == "presymplectic":
        return nf.presymplectic_darboux(spec.omegas[0])
    if kind == "cosymplectic":
        return nf.cosymplectic_darboux(spec.etas[0], spec.omegas[0])
    if kind == "precosymplectic":
        return nf.precosymplectic_darboux(spec.etas[0], spec.omegas[0])
    if spec.V is None:
        raise SpecError("$.distribution",
                        f"{kind} needs an explicit distribution")
    g = spec.g if spec.g is not None else Mat.identity(spec.dim)
    if kind == "k_symplectic":
        return nf.k_symplectic_darboux(list(spec.omegas), spec.V)
    if kind == "k_presymplectic":
        splitting = spec.splitting or nf.compute_splitting(
            list(spec.omegas), spec.V, g)
        return nf.k_presymplectic_darboux(list(spec.omegas), spec.V,
                                          splitting, g)
    if kind == "k_cosymplectic":
        return nf.k_cosymplectic_darboux(list(spec.etas), list(spec.omegas),
                                         spec.V)
    if kind == "k_precosymplectic":
        splitting = spec.splitting or nf.compute_splitting(
            list(spec.omegas), spec.V, g)
        return nf.k_precosymplectic_darboux(list(spec.etas),
                                            list(spec.omegas), spec.V,
                                            splitting, g)
    raise SpecError("$.kind", f"no normal form operation for kind {kind!r}")


def _cmd_normalform(args) -> int:
    spec = parse_spec(_load(args.spec))
    if not isinstance(spec, StructureSpec):
        raise SpecError("$.kind", "normalform expects a linear structure spec")
    transformed = False
    if args.seed is not None:
        rng = random.Random(args.seed)
        spec = _transform_spec(spec, _random_invertible(spec.dim, rng))
        transformed = True
    try:
        report = _run_normal_form(spec)
    except nf.PreconditionError as exc:
        print(_report(args, {"command": "normalform", "accepted": False,
                             "clause": exc.clause, "detail": exc.detail}))
        return 1
    except ValueError as exc:
        print(_report(args, {"command": "normalform", "accepted": False,
                             "clause": "unsolvable", "detail": str(exc)}))
        return 1
    payload = {
        "command": "normalform",
        "accepted": True,
        "randomized_self_test": transformed,
        "template": {"kind": report.template.kind,
                     "dim": report.template.dim,
                     "params": _render_value(report.template.params)},
        "frame": _render_value(report.frame.change),
        "verified": report.verified,
    }
    if report.index_sets is not None:
        payload["index_sets"] = [list(s) for s in report.index_sets]
    if report.reeb is not None:
        payload["reeb"] = _render_value(report.reeb)
        payload["reeb_freedom_dim"] = report.reeb_freedom.dim
    print(_report(args, payload))
    return 0 if report.verified else 1


def _cmd_chart_check(args) -> int:
    bundle = parse_spec(_load(args.spec))
    if not isinstance(bundle, dict) or bundle.get("kind") != "chart":
        raise SpecError("$.kind", "chart-check expects a chart spec")
    points = bundle["points"]
    if args.points:
        points = []
        for i, text in enumerate(args.points):
            entries = text.split(",")
            if len(entries) != len(bundle["chart"]):
                raise SpecError(f"--points[{i}]",
                                "point does not match the chart")
            points.append(tuple(parse_rational(e.strip(), f"--points[{i}]")
                                for e in entries))
    form_reports = []
    for name, form in bundle["forms"]:
        entry = {"name": name, "degree": form.degree,
                 "closed": is_closed(form)}
        if form.degree == 2:
            entry["generic_rank"] = generic_rank(form)
            entry["rank_profile"] = rank_profile(form, points)
            entry["kernel_dims"] = [kernel_distribution(form, pt).dim
                                    for pt in points]
        form_reports.append(entry)
    payload = {"command": "chart-check",
               "chart": list(bundle["chart"]),
               "points": _render_value(points),
               "forms": form_reports}
    if bundle["fields"]:
        flags, generic = frobenius_involutive(
            [f for _, f in bundle["fields"]], points)
        payload["distribution"] = {
            "generators": [name for name, _ in bundle["fields"]],
            "involutive_at_points": flags,
            "involutive_generically": generic,
        }
    print(_report(args, payload))
    return 0


def _cmd_connection_check(args) -> int:
    bundle = parse_spec(_load(args.spec))
    if not isinstance(bundle, dict) or bundle.get("kind") != "connection":
        raise SpecError("$.kind", "connection-check expects a connection spec")
    nabla = bundle["connection"]
    T = torsion(nabla)
    payload = {
        "command": "connection-check",
        "chart": list(bundle["chart"]),
        "torsion_free": T.is_zero(),
        "flat": is_flat(nabla),
        "curvature_zero": curvature(nabla).is_zero(),
        "forms": [{"name": name,
                   "parallel": is_parallel(nabla, form),
                   "closed": is_closed(form)}
                  for name, form in bundle["forms"]],
    }
    print(_report(args, payload))
    return 0


def _cmd_corpus(args) -> int:
    results = run_corpus(args.filter)
    payload = {
        "command": "corpus",
        "total": len(results),
        "passed": sum(1 for r in results if r.passed),
        "examples": [{"name": r.name, "statement": r.statement,
                      "passed": r.passed, "details": _render_value(r.details)}
                     for r in results],
    }
    print(_report(args, payload))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darboux",
        description="Exact normal forms, structure checks, and chart-level "
                    "calculus for linear geometric structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("human", "machine"),
                       default="human")

    p = sub.add_parser("classify", help="run the structure checkers")
    p.add_argument("spec")
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("normalform", help="construct a certified normal form")
    p.add_argument("spec")
    p.add_argument("--seed", type=int, default=None,
                   help="push the input through a seeded random invertible "
                        "map first (self-test)")
    common(p)
    p.set_defaults(fn=_cmd_normalform)

    p = sub.add_parser("chart-check",
                       help="closedness / rank / involutivity on a chart")
    p.add_argument("spec")
    p.add_argument("--points", nargs="*", default=None,
                   help="override sample points, each as 'x,y,...'")
    common(p)
    p.set_defaults(fn=_cmd_chart_check)

    p = sub.add_parser("connection-check",
                       help="parallelism, torsion, and curvature reports")
    p.add_argument("spec")
    common(p)
    p.set_defaults(fn=_cmd_connection_check)

    p = sub.add_parser("corpus", help="run the embedded example corpus")
    p.add_argument("--filter", default=None)
    common(p)
    p.set_defaults(fn=_cmd_corpus)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SpecError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
