import random
from fractions import Fraction

import pytest

from darboux.linalg import (
    Mat, Subspace, annihilator, complement_basis, determinant, intersect,
    intersect_all, inverse, is_spd, kernel_basis, orthogonal_complement,
    rank, relative_orthogonal_complement, solve, subspace_sum, unit_vector,
)
from conftest import random_invertible, random_fraction


def rand_mat(r, c, rng):
    return Mat.from_rows([[random_fraction(rng) for _ in range(c)]
                          for _ in range(r)])


def test_rank_rref_agree_with_known_values():
    m = Mat.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    assert rank(Mat.identity(4)) == 4
    assert rank(Mat.zero(3, 5)) == 0


def test_kernel_basis_dimension_matches_rank_deficiency():
    rng = random.Random(11)
    for _ in range(100):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = rand_mat(r, c, rng)
        ker = kernel_basis(m)
        assert ker.dim == c - rank(m)
        for v in ker.basis:
            assert all(x == 0 for x in m.apply(v))


def test_inverse_and_determinant():
    rng = random.Random(12)
    for _ in range(50):
        n = rng.randint(1, 5)
        L = random_invertible(n, rng)
        assert L.matmul(inverse(L)) == Mat.identity(n)
        assert determinant(L) != 0
    singular = Mat.from_rows([[1, 2], [2, 4]])
    assert determinant(singular) == 0
    with pytest.raises(ValueError):
        inverse(singular)


def test_solve_reproduces_known_solutions():
    rng = random.Random(13)
    for _ in range(50):
        n = rng.randint(1, 5)
        A = random_invertible(n, rng)
        x = tuple(random_fraction(rng) for _ in range(n))
        b = A.apply(x)
        assert solve(A, b) == x
    assert solve(Mat.from_rows([[1, 0], [0, 0]]), (0, 1)) is None


def test_subspace_canonical_basis_is_representation_independent():
    rng = random.Random(14)
    for _ in range(50):
        n = rng.randint(1, 5)
        k = rng.randint(1, n)
        vs = [tuple(random_fraction(rng) for _ in range(n)) for _ in range(k)]
        S = Subspace.spanned_by(n, vs)
        mixed = [tuple(a + b for a, b in zip(vs[i], vs[(i + 1) % k]))
                 for i in range(k)] + vs
        assert Subspace.spanned_by(n, mixed) == S
        for v in vs:
            assert S.contains(v)


def test_intersection_and_sum_dimension_formula():
    rng = random.Random(15)
    for _ in range(100):
        n = rng.randint(1, 5)
        A = Subspace.spanned_by(n, [
            tuple(random_fraction(rng) for _ in range(n))
            for _ in range(rng.randint(0, n))])
        B = Subspace.spanned_by(n, [
            tuple(random_fraction(rng) for _ in range(n))
            for _ in range(rng.randint(0, n))])
        total, direct = subspace_sum(A, B)
        meet = intersect(A, B)
        assert total.dim == A.dim + B.dim - meet.dim
        assert direct == (meet.dim == 0)
        assert total.contains_subspace(A) and total.contains_subspace(B)
        assert A.contains_subspace(meet) and B.contains_subspace(meet)


def test_intersect_all_handles_empty_family():
    assert intersect_all([], 4) == Subspace.full(4)
    S = Subspace.spanned_by(3, [(1, 0, 0)])
    assert intersect_all([S, Subspace.full(3)]) == S


def test_annihilator_and_complement():
    rng = random.Random(16)
    for _ in range(50):
        n = rng.randint(1, 5)
        S = Subspace.spanned_by(n, [
            tuple(random_fraction(rng) for _ in range(n))
            for _ in range(rng.randint(0, n))])
        ann = annihilator(S)
        assert ann.dim == n - S.dim
        for a in ann.basis:
            for v in S.basis:
                assert sum(x * y for x, y in zip(a, v)) == 0
        comp = complement_basis(S)
        total, direct = subspace_sum(S, Subspace.spanned_by(n, comp))
        assert direct and total.dim == n


def test_orthogonal_complements_with_respect_to_a_metric():
    rng = random.Random(17)
    for _ in range(50):
        n = rng.randint(1, 4)
        L = random_invertible(n, rng)
        g = L.transpose().matmul(L)
        assert is_spd(g)
        S = Subspace.spanned_by(n, [
            tuple(random_fraction(rng) for _ in range(n))
            for _ in range(rng.randint(0, n))])
        C = orthogonal_complement(S, g)
        assert C.dim == n - S.dim
        assert intersect(S, C).dim == 0
        T = Subspace.full(n)
        R = relative_orthogonal_complement(S, T, g)
        assert R == C


def test_is_spd_rejects_indefinite_matrices():
    assert not is_spd(Mat.from_rows([[1, 0], [0, -1]]))
    assert not is_spd(Mat.from_rows([[0, 1], [1, 0]]))
    assert is_spd(Mat.from_rows([[2, 1], [1, 2]]))


def test_matmul_matches_schoolbook_product():
    rng = random.Random(18)
    for _ in range(30):
        r, k, c = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)
        A = rand_mat(r, k, rng)
        B = rand_mat(k, c, rng)
        P = A.matmul(B)
        for i in range(r):
            for j in range(c):
                expected = sum((A[i, t] * B[t, j] for t in range(k)),
                               Fraction(0))
                assert P[i, j] == expected


def test_unit_vector_and_indexing():
    assert unit_vector(3, 1) == (0, 1, 0)
    m = Mat.from_rows([[1, 2], [3, 4]])
    assert m[1, 0] == 3 and m.col(1) == (2, 4)
