import random
from fractions import Fraction
from itertools import combinations

from darboux.polyforms import (
    Poly, PolyForm, PolyMap, PolyVectorField, exterior_derivative,
    frobenius_involutive, generic_rank, is_closed, kernel_distribution,
    lie_bracket, poly_divexact, poly_matrix_rank, pullback_map, rank_profile,
    wedge_poly,
)
from conftest import random_fraction


CHART2 = ("x", "y")
CHART3 = ("x", "y", "z")


def random_poly(chart, rng, max_degree=2):
    items = []
    for _ in range(rng.randint(0, 4)):
        expo = tuple(rng.randint(0, max_degree) for _ in chart)
        items.append((expo, random_fraction(rng)))
    return Poly.build(chart, items)


def random_poly_form(chart, degree, rng):
    items = []
    for key in combinations(range(1, len(chart) + 1), degree):
        if rng.random() < 0.7:
            items.append((key, random_poly(chart, rng)))
    return PolyForm.build(chart, degree, items)


def test_poly_ring_axioms_and_evaluation():
    rng = random.Random(71)
    for _ in range(100):
        a = random_poly(CHART3, rng)
        b = random_poly(CHART3, rng)
        c = random_poly(CHART3, rng)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        pt = tuple(random_fraction(rng) for _ in CHART3)
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
        assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


def test_poly_diff_leibniz_and_commuting_partials():
    rng = random.Random(72)
    for _ in range(100):
        a = random_poly(CHART3, rng)
        b = random_poly(CHART3, rng)
        assert (a * b).diff("x") == a.diff("x") * b + a * b.diff("x")
        assert a.diff("x").diff("y") == a.diff("y").diff("x")


def test_poly_substitute_is_composition():
    rng = random.Random(73)
    for _ in range(50):
        a = random_poly(CHART2, rng)
        args = [random_poly(CHART3, rng, max_degree=1) for _ in CHART2]
        composed = a.substitute(CHART3, args)
        pt = tuple(random_fraction(rng) for _ in CHART3)
        inner = tuple(q.evaluate(pt) for q in args)
        assert composed.evaluate(pt) == a.evaluate(inner)


def test_poly_divexact_inverts_multiplication():
    rng = random.Random(74)
    done = 0
    while done < 50:
        a = random_poly(CHART2, rng)
        b = random_poly(CHART2, rng)
        if b.is_zero():
            continue
        assert poly_divexact(a * b, b) == a
        done += 1


def test_poly_matrix_rank_matches_evaluation_at_generic_points():
    x = Poly.variable(CHART2, "x")
    y = Poly.variable(CHART2, "y")
    zero = Poly.constant(CHART2, 0)
    assert poly_matrix_rank([[x, y], [y, x]]) == 2
    assert poly_matrix_rank([[x, y], [x, y]]) == 1
    assert poly_matrix_rank([[zero]]) == 0


def test_exterior_derivative_squares_to_zero():
    rng = random.Random(75)
    charts = [CHART2, CHART3, ("x", "y", "z", "w")]
    for _ in range(500):
        chart = rng.choice(charts)
        degree = rng.randint(0, len(chart) - 1)
        a = random_poly_form(chart, degree, rng)
        assert exterior_derivative(exterior_derivative(a)).is_zero()


def test_exterior_derivative_is_an_antiderivation():
    rng = random.Random(76)
    for _ in range(100):
        chart = ("x", "y", "z", "w")
        p = rng.randint(0, 2)
        q = rng.randint(0, 2)
        a = random_poly_form(chart, p, rng)
        b = random_poly_form(chart, q, rng)
        lhs = exterior_derivative(wedge_poly(a, b))
        rhs = wedge_poly(exterior_derivative(a), b) + \
            wedge_poly(a, exterior_derivative(b)).scale(Fraction((-1) ** p))
        assert lhs == rhs


def test_pullback_commutes_with_exterior_derivative():
    rng = random.Random(77)
    for _ in range(100):
        degree = rng.randint(0, 1)
        a = random_poly_form(CHART2, degree, rng)
        phi = PolyMap.build(CHART3, CHART2,
                            [random_poly(CHART3, rng, max_degree=1)
                             for _ in CHART2])
        lhs = pullback_map(phi, exterior_derivative(a))
        rhs = exterior_derivative(pullback_map(phi, a))
        assert lhs == rhs


def test_pullback_through_identity_is_identity():
    rng = random.Random(78)
    for _ in range(30):
        a = random_poly_form(CHART3, rng.randint(0, 2), rng)
        assert pullback_map(PolyMap.identity(CHART3), a) == a


def test_pointwise_evaluation_commutes_with_wedge():
    from darboux.exterior import wedge
    rng = random.Random(79)
    for _ in range(50):
        a = random_poly_form(CHART3, 1, rng)
        b = random_poly_form(CHART3, 1, rng)
        pt = tuple(random_fraction(rng) for _ in CHART3)
        assert wedge_poly(a, b).at(pt) == wedge(a.at(pt), b.at(pt))


def test_lie_bracket_satisfies_jacobi_and_antisymmetry():
    rng = random.Random(80)
    zero = tuple(Poly.constant(CHART3, 0) for _ in CHART3)
    for _ in range(100):
        X = PolyVectorField.build(CHART3, [random_poly(CHART3, rng, 1)
                                           for _ in CHART3])
        Y = PolyVectorField.build(CHART3, [random_poly(CHART3, rng, 1)
                                           for _ in CHART3])
        Z = PolyVectorField.build(CHART3, [random_poly(CHART3, rng, 1)
                                           for _ in CHART3])
        assert lie_bracket(X, Y).components == tuple(
            -c for c in lie_bracket(Y, X).components)
        jac = [a + b + c for a, b, c in zip(
            lie_bracket(X, lie_bracket(Y, Z)).components,
            lie_bracket(Y, lie_bracket(Z, X)).components,
            lie_bracket(Z, lie_bracket(X, Y)).components)]
        assert all(p.is_zero() for p in jac)


def test_frobenius_involutive_examples():
    x = Poly.variable(CHART3, "x")
    one = Poly.constant(CHART3, 1)
    zero = Poly.constant(CHART3, 0)
    # Coordinate plane distribution: involutive everywhere.
    X = PolyVectorField.build(CHART3, [one, zero, zero])
    Y = PolyVectorField.build(CHART3, [zero, one, zero])
    flags, generic = frobenius_involutive([X, Y], [(0, 0, 0), (1, 2, 3)])
    assert flags == [True, True] and generic
    # Contact-type distribution: never involutive.
    Y2 = PolyVectorField.build(CHART3, [zero, one, x])
    flags, generic = frobenius_involutive([X, Y2], [(0, 0, 0)])
    assert not generic


def test_generic_rank_and_rank_profile():
    x = Poly.variable(CHART2, "x")
    y = Poly.variable(CHART2, "y")
    coeff = x * x + y * y
    omega = PolyForm.build(CHART2, 2, [((1, 2), coeff)])
    assert is_closed(omega)
    assert generic_rank(omega) == 2
    assert rank_profile(omega, [(0, 0), (1, 0)]) == [0, 2]
    assert kernel_distribution(omega, (0, 0)).dim == 2
    assert kernel_distribution(omega, (1, 0)).dim == 0
