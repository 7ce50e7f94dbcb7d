"""Shared helpers for building randomized exact-arithmetic test instances."""

import random
from fractions import Fraction

from darboux.linalg import Mat, Subspace, inverse, rank
from darboux.exterior import AltForm, pullback


def random_invertible(dim: int, rng: random.Random, bound: int = 5) -> Mat:
    while True:
        L = Mat.from_rows([[Fraction(rng.randint(-bound, bound))
                            for _ in range(dim)] for _ in range(dim)])
        if dim == 0 or rank(L) == dim:
            return L


def random_fraction(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_alt_form(dim: int, degree: int, rng: random.Random,
                    density: float = 0.6) -> AltForm:
    from itertools import combinations
    items = []
    for key in combinations(range(1, dim + 1), degree):
        if rng.random() < density:
            c = random_fraction(rng)
            if c:
                items.append((key, c))
    return AltForm.build(dim, degree, items)


def transform_instance(template, rng: random.Random):
    """Push a canonical template through a random invertible map.

    Returns (one_forms, two_forms, distribution, metric, L) where the metric
    is the pushforward of the identity inner product.
    """
    m = template.dim
    L = random_invertible(m, rng)
    Li = inverse(L)
    ones = [pullback(Li, f) for f in template.one_forms]
    twos = [pullback(Li, f) for f in template.two_forms]
    V = None
    if template.distribution is not None:
        V = Subspace.spanned_by(
            m, [L.apply(v) for v in template.distribution.basis])
    g = Li.transpose().matmul(Li)
    return ones, twos, V, g, L


def push_subspace(S: Subspace, L: Mat) -> Subspace:
    return Subspace.spanned_by(S.ambient_dim, [L.apply(v) for v in S.basis])
