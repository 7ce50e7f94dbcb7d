import random
from fractions import Fraction
from itertools import combinations

from darboux.connection import (
    Connection, covariant_derivative_form, curvature, is_flat, is_parallel,
    torsion,
)
from darboux.polyforms import Poly, PolyForm, exterior_derivative, is_closed
from conftest import random_fraction


CHART = ("t", "x", "p")


def constant_form(chart, degree, rng):
    items = []
    for key in combinations(range(1, len(chart) + 1), degree):
        c = random_fraction(rng)
        if c:
            items.append((key, Poly.constant(chart, c)))
    return PolyForm.build(chart, degree, items)


def random_symmetric_connection(chart, rng):
    n = len(chart)
    entries = []
    for c in range(n):
        for a in range(n):
            for b in range(a, n):
                v = Fraction(rng.randint(-2, 2))
                if v:
                    p = Poly.constant(chart, v)
                    entries.append(((c, a, b), p))
                    if a != b:
                        entries.append(((c, b, a), p))
    return Connection.build(chart, entries)


def test_flat_connection_reduces_covariant_derivative_to_partials():
    rng = random.Random(91)
    nabla = Connection.flat(CHART)
    assert torsion(nabla).is_zero() and is_flat(nabla)
    for _ in range(50):
        a = constant_form(CHART, rng.randint(1, 2), rng)
        assert is_parallel(nabla, a)
        assert is_closed(a)


def test_torsion_free_and_parallel_implies_closed():
    # Build torsion-free connections that genuinely admit parallel forms:
    # transport the flat connection through a unipotent triangular polynomial
    # change of coordinates y = phi(x), whose inverse Jacobian stays
    # polynomial, and transport a constant form the same way.
    from darboux.polyforms import PolyMap, pullback_map

    rng = random.Random(92)
    chart = ("x", "y", "z")
    x, y, _ = (Poly.variable(chart, v) for v in chart)
    for _ in range(100):
        q2 = random_poly_in(chart, ("x",), rng)
        q3 = random_poly_in(chart, ("x", "y"), rng)
        comps = [Poly.variable(chart, "x"),
                 Poly.variable(chart, "y") + q2,
                 Poly.variable(chart, "z") + q3]
        # Inverse Jacobian of the unipotent map, as polynomials in x.
        inv_rows = [
            [Poly.constant(chart, 1), Poly.constant(chart, 0),
             Poly.constant(chart, 0)],
            [-q2.diff("x"), Poly.constant(chart, 1), Poly.constant(chart, 0)],
            [-q3.diff("x") + q3.diff("y") * q2.diff("x"), -q3.diff("y"),
             Poly.constant(chart, 1)],
        ]
        entries = []
        for c in range(3):
            for a_i, va in enumerate(chart):
                for b_i, vb in enumerate(chart):
                    gamma = (inv_rows[c][1] * q2.diff(va).diff(vb)
                             + inv_rows[c][2] * q3.diff(va).diff(vb))
                    if not gamma.is_zero():
                        entries.append(((c, a_i, b_i), gamma))
        nabla = Connection.build(chart, entries)
        assert torsion(nabla).is_zero()
        phi = PolyMap.build(chart, chart, comps)
        form = pullback_map(phi, constant_form(chart, rng.randint(1, 2), rng))
        assert is_parallel(nabla, form)
        assert is_closed(form)


def random_poly_in(chart, variables, rng):
    items = []
    for _ in range(rng.randint(1, 3)):
        expo = tuple(rng.randint(0, 2) if v in variables else 0
                     for v in chart)
        items.append((expo, random_fraction(rng)))
    return Poly.build(chart, items)


def test_contact_connection_has_the_expected_torsion_and_parallel_form():
    # eta = dt - p dx is parallel for Gamma^t_{px} = -1 but not closed;
    # the torsion obstruction is exactly what the closedness argument needs.
    chart = ("t", "x", "p")
    p = Poly.variable(chart, "p")
    minus_one = Poly.constant(chart, -1)
    nabla = Connection.build(chart, [((0, 2, 1), minus_one)])
    eta = PolyForm.build(chart, 1, [((1,), Poly.constant(chart, 1)),
                                    ((2,), -p)])
    assert is_parallel(nabla, eta)
    assert is_flat(nabla)
    T = torsion(nabla)
    assert T.component(0, 1, 2) == Poly.constant(chart, 1)
    assert T.component(0, 2, 1) == Poly.constant(chart, -1)
    assert not is_closed(eta)


def test_covariant_derivative_of_a_one_form_componentwise():
    chart = ("x", "y")
    x = Poly.variable(chart, "x")
    nabla = Connection.flat(chart)
    a = PolyForm.build(chart, 1, [((1,), x * x)])
    D = covariant_derivative_form(nabla, a)
    assert D.component(0, 0) == (x + x)
    assert D.component(0, 1).is_zero()


def test_curvature_detects_a_non_flat_connection():
    chart = ("x", "y")
    y = Poly.variable(chart, "y")
    # Gamma^x_{yy} = x makes R^x_{yxy} nonzero.
    xv = Poly.variable(chart, "x")
    nabla = Connection.build(chart, [((0, 1, 1), xv)])
    assert not is_flat(nabla)
    R = curvature(nabla)
    assert not R.is_zero()


def test_curvature_first_bianchi_for_symmetric_connections():
    rng = random.Random(93)
    for _ in range(100):
        nabla = random_symmetric_connection(("x", "y"), rng)
        assert torsion(nabla).is_zero()
        R = curvature(nabla)
        n = 2
        for d in range(n):
            for a in range(n):
                for b in range(n):
                    for c in range(n):
                        total = (R.component(d, c, a, b)
                                 + R.component(d, a, b, c)
                                 + R.component(d, b, c, a))
                        assert total.is_zero()
