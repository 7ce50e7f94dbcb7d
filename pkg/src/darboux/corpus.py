"""Embedded regression corpus of worked chart-level examples.

Each example states a concrete mathematical claim and checks it with exact
arithmetic; the CLI `corpus` command runs all of them and reports per-example
results.  No external files are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Mat, Subspace, unit_vector
from .exterior import AltForm
from .normal_form import PreconditionError, compute_splitting, \
    k_presymplectic_darboux, reeb_solve
from .verifier import check_k_cosymplectic, check_k_presymplectic
from .polyforms import (
    Poly,
    PolyForm,
    PolyMap,
    exterior_derivative,
    is_closed,
    kernel_distribution,
    pullback_map,
    rank_profile,
)
from .connection import Connection, is_flat, is_parallel, torsion


@dataclass(frozen=True)
class ExampleResult:
    name: str
    statement: str
    passed: bool
    details: dict


def _immersion_pullback() -> ExampleResult:
    src = ("x", "p")
    tgt = ("x", "px", "y", "py")
    x = Poly.variable(src, "x")
    p = Poly.variable(src, "p")
    phi = PolyMap.build(src, tgt, (x, p * p.scale(Fraction(1, 2)),
                                   Poly.constant(src, 0), p))
    omega = PolyForm.build(tgt, 2, [((1, 2), Poly.constant(tgt, 1)),
                                    ((3, 4), Poly.constant(tgt, 1))])
    pulled = pullback_map(phi, omega)
    expected = PolyForm.build(src, 2, [((1, 2), p)])
    k0 = kernel_distribution(pulled, (0, 0)).dim
    k1 = kernel_distribution(pulled, (0, 1)).dim
    passed = pulled == expected and k0 == 2 and k1 == 0
    return ExampleResult(
        "immersion-pullback",
        "pulling the canonical two-form of a four-dimensional cotangent space "
        "back along (x, p) -> (x, p^2/2, 0, p) gives p dx^dp, whose kernel is "
        "everything at p = 0 and trivial at p = 1",
        passed, {"kernel_dim_at_p0": k0, "kernel_dim_at_p1": k1})


def _nonconstant_rank() -> ExampleResult:
    chart = ("x", "y")
    x = Poly.variable(chart, "x")
    y = Poly.variable(chart, "y")
    omega = PolyForm.build(chart, 2, [((1, 2), x * x + y * y)])
    closed = is_closed(omega)
    ranks = rank_profile(omega, [(0, 0), (1, 0)])
    passed = closed and ranks == [0, 2]
    return ExampleResult(
        "nonconstant-rank",
        "(x^2+y^2) dx^dy is closed but its rank jumps from 0 at the origin "
        "to 2 at (1, 0), so constant rank is a genuine hypothesis",
        passed, {"closed": closed, "ranks": ranks})


def _degenerate_pair_rejection() -> ExampleResult:
    # pointwise data at lambda = 1 for the pair (dl^dy1, 2l dl^dy1) with
    # distribution spanned by the first and third directions
    chart = ("l", "y1", "y2")
    l = Poly.variable(chart, "l")
    one = Poly.constant(chart, 1)
    w1 = PolyForm.build(chart, 2, [((1, 2), one)])
    w2 = PolyForm.build(chart, 2, [((1, 2), l.scale(2))])
    closed = is_closed(w1) and is_closed(w2)
    point = (1, 0, 0)
    a1, a2 = w1.at(point), w2.at(point)
    V = Subspace.spanned_by(3, [unit_vector(3, 0), unit_vector(3, 2)])
    verdict = check_k_presymplectic([a1, a2], V)
    rejected = not verdict.accepted
    failed_clauses = [c.name for c in verdict.failures()]
    try:
        splitting = compute_splitting([a1, a2], V, Mat.identity(3))
        k_presymplectic_darboux([a1, a2], V, splitting, Mat.identity(3))
        normal_form_failed = False
        clause = None
    except PreconditionError as exc:
        normal_form_failed = True
        clause = exc.clause
    passed = closed and rejected and normal_form_failed
    return ExampleResult(
        "degenerate-pair-rejection",
        "two proportional closed two-forms with coinciding kernels are not a "
        "2-presymplectic structure: the checker rejects the splitting and the "
        "normal-form construction fails with a named clause",
        passed, {"checker_failures": failed_clauses,
                 "normal_form_clause": clause})


def _section_pullback_identity() -> ExampleResult:
    base = ("x", "y")
    total = ("x", "y", "a1", "b1", "a2", "b2")
    x = Poly.variable(base, "x")
    y = Poly.variable(base, "y")
    zero = Poly.constant(base, 0)
    one6 = Poly.constant(total, 1)
    # omegas of the doubled cotangent space: dx^da_i + dy^db_i
    omegas = [PolyForm.build(total, 2, [((1, 3), one6), ((2, 4), one6)]),
              PolyForm.build(total, 2, [((1, 5), one6), ((2, 6), one6)])]
    # section induced by the one-forms theta1 = x dy, theta2 = y dx
    thetas = [PolyForm.build(base, 1, [((2,), x)]),
              PolyForm.build(base, 1, [((1,), y)])]
    section = PolyMap.build(base, total, (x, y, zero, x, y, zero))
    passed = True
    checks = {}
    for a in range(2):
        lhs = pullback_map(section, omegas[a])
        rhs = exterior_derivative(thetas[a]).scale(-1)
        checks[f"omega_{a + 1}"] = lhs == rhs
        passed = passed and lhs == rhs
    return ExampleResult(
        "section-pullback-identity",
        "for the section of a doubled cotangent space induced by one-forms "
        "theta^a, the pullback of each canonical two-form equals -d theta^a; "
        "closedness of the pulled-back forms therefore forces d theta^a = 0",
        passed, checks)


def _contact_connection() -> ExampleResult:
    chart = ("t", "x", "p")
    one = Poly.constant(chart, 1)
    p = Poly.variable(chart, "p")
    nabla = Connection.build(chart, [((0, 2, 1), one.scale(-1))])
    eta = PolyForm.build(chart, 1, [((1,), one), ((2,), -p)])
    parallel = is_parallel(nabla, eta)
    T = torsion(nabla)
    t_xp = T.component(0, 1, 2)
    t_px = T.component(0, 2, 1)
    flat = is_flat(nabla)
    closed = is_closed(eta)
    passed = (parallel and flat and not closed
              and t_xp == Poly.constant(chart, 1)
              and t_px == Poly.constant(chart, -1))
    return ExampleResult(
        "contact-connection",
        "dt - p dx is parallel for the flat connection whose only Christoffel "
        "symbol is Gamma^t_{px} = -1; the torsion components are "
        "T^t_{xp} = 1 and T^t_{px} = -1 and the form is not closed, so "
        "non-closed parallel forms require torsion",
        passed, {"parallel": parallel, "flat": flat, "eta_closed": closed})


def _canonical_two_cosymplectic() -> ExampleResult:
    etas = [AltForm.basis_covector(5, 1), AltForm.basis_covector(5, 2)]
    omegas = [AltForm.build(5, 2, [((3, 4), 1)]),
              AltForm.build(5, 2, [((3, 5), 1)])]
    V = Subspace.spanned_by(5, [unit_vector(5, 3), unit_vector(5, 4)])
    verdict = check_k_cosymplectic(etas, omegas, V)
    base, freedom = reeb_solve(etas, omegas)
    expected = (unit_vector(5, 0), unit_vector(5, 1))
    passed = (verdict.accepted and base == expected and freedom.dim == 0)
    return ExampleResult(
        "canonical-two-cosymplectic",
        "the five-dimensional model (e^1, e^2, e^3^e^4, e^3^e^5) with "
        "distribution span{e_4, e_5} is accepted, with unique dual vectors "
        "(e_1, e_2) and no residual freedom",
        passed, {"accepted": verdict.accepted, "freedom_dim": freedom.dim})


EXAMPLES = (
    _immersion_pullback,
    _nonconstant_rank,
    _degenerate_pair_rejection,
    _section_pullback_identity,
    _contact_connection,
    _canonical_two_cosymplectic,
)


def run_corpus(name_filter: str | None = None) -> list[ExampleResult]:
    results = []
    for fn in EXAMPLES:
        result = fn()
        if name_filter and name_filter not in result.name:
            continue
        results.append(result)
    return results
