"""Exact alternating multilinear algebra over the rationals.

Forms are stored as sparse maps from strictly increasing index tuples
(1-based) to rational coefficients; insertion normalises index order and
sign, so equality of forms is literal equality of the term maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .linalg import (
    DimensionMismatch,
    Mat,
    Subspace,
    Vector,
    kernel_basis,
    rank,
    vector,
)


def _sort_with_sign(indices: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    A repeated index yields sign 0.
    """
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return tuple(idx), 0
    return tuple(idx), sign


@dataclass(frozen=True)
class AltForm:
    """Alternating k-form on Q^dim with exact rational coefficients."""

    dim: int
    degree: int
    terms: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        for key in self.terms:
            if len(key) != self.degree:
                raise ValueError(f"key {key} does not match degree {self.degree}")
            if any(not 1 <= i <= self.dim for i in key):
                raise ValueError(f"index out of range in {key}")
            if list(key) != sorted(set(key)):
                raise ValueError(f"key {key} not strictly increasing")

    @staticmethod
    def build(dim: int, degree: int, items: Iterable[tuple[Sequence[int], Fraction | int]]) -> "AltForm":
        """Assemble a form from possibly unsorted/repeated index tuples."""
        if degree > dim or degree < 0:
            return AltForm(dim, max(degree, 0), {})
        acc: dict[tuple[int, ...], Fraction] = {}
        for raw, coeff in items:
            key, sign = _sort_with_sign(raw)
            if sign == 0:
                continue
            c = Fraction(coeff) * sign
            acc[key] = acc.get(key, Fraction(0)) + c
        return AltForm(dim, degree, {k: v for k, v in acc.items() if v != 0})

    @staticmethod
    def zero(dim: int, degree: int) -> "AltForm":
        return AltForm(dim, degree, {})

    @staticmethod
    def basis_covector(dim: int, i: int) -> "AltForm":
        return AltForm(dim, 1, {(i,): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, indices: Sequence[int]) -> Fraction:
        key, sign = _sort_with_sign(indices)
        if sign == 0:
            return Fraction(0)
        return sign * self.terms.get(key, Fraction(0))

    def __add__(self, other: "AltForm") -> "AltForm":
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise DimensionMismatch("adding forms of different shape")
        return AltForm.build(self.dim, self.degree,
                             list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "AltForm") -> "AltForm":
        return self + other.scale(-1)

    def scale(self, c) -> "AltForm":
        c = Fraction(c)
        if c == 0:
            return AltForm.zero(self.dim, self.degree)
        return AltForm(self.dim, self.degree,
                       {k: c * v for k, v in self.terms.items()})

    def __neg__(self) -> "AltForm":
        return self.scale(-1)

    def matrix(self) -> Mat:
        """Antisymmetric matrix view A[i][j] = form(e_{i+1}, e_{j+1}); degree 2 only."""
        if self.degree != 2:
            raise ValueError("matrix view is only defined for degree-2 forms")
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in self.terms.items():
            rows[i - 1][j - 1] = c
            rows[j - 1][i - 1] = -c
        return Mat.from_rows(rows)

    @staticmethod
    def from_matrix(m: Mat) -> "AltForm":
        if m.rows != m.cols or m != -m.transpose():
            raise ValueError("matrix is not antisymmetric")
        items = [((i + 1, j + 1), m[i, j])
                 for i in range(m.rows) for j in range(i + 1, m.cols)]
        return AltForm.build(m.rows, 2, items)

    def apply(self, vectors: Sequence[Sequence]) -> Fraction:
        """Evaluate the form on exactly `degree` vectors."""
        if len(vectors) != self.degree:
            raise DimensionMismatch("wrong number of arguments")
        a = self
        for v in vectors:
            a = interior(vector(v), a)
        assert a.degree == 0
        return a.terms.get((), Fraction(0))

    def to_records(self) -> list[dict]:
        """Interchange format: list of {indices, coeff} with exact strings."""
        return [{"indices": list(k), "coeff": str(v)}
                for k, v in sorted(self.terms.items())]

    @staticmethod
    def from_records(dim: int, degree: int, records: Sequence[Mapping]) -> "AltForm":
        items = []
        seen = set()
        for rec in records:
            key = tuple(rec["indices"])
            if key in seen:
                raise ValueError(f"duplicate index tuple {key}")
            seen.add(key)
            items.append((key, Fraction(rec["coeff"])))
        return AltForm.build(dim, degree, items)


def wedge(a: AltForm, b: AltForm) -> AltForm:
    if a.dim != b.dim:
        raise DimensionMismatch("wedge of forms on different spaces")
    deg = a.degree + b.degree
    if deg > a.dim:
        return AltForm.zero(a.dim, deg)
    items = []
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            if set(ka) & set(kb):
                continue
            items.append((ka + kb, ca * cb))
    return AltForm.build(a.dim, deg, items)


def wedge_all(forms: Sequence[AltForm]) -> AltForm:
    if not forms:
        raise ValueError("empty wedge")
    acc = forms[0]
    for f in forms[1:]:
        acc = wedge(acc, f)
    return acc


def interior(v: Sequence, a: AltForm) -> AltForm:
    """Interior product: (interior(v, a))(u1..) = a(v, u1..)."""
    if a.degree == 0:
        raise ValueError("interior product of a degree-0 form")
    v = vector(v)
    if len(v) != a.dim:
        raise DimensionMismatch("vector length != form dimension")
    items = []
    for key, c in a.terms.items():
        for pos, idx in enumerate(key):
            if v[idx - 1] != 0:
                items.append((key[:pos] + key[pos + 1:],
                              c * v[idx - 1] * (-1) ** pos))
    return AltForm.build(a.dim, a.degree - 1, items)


def pullback(L: Mat, a: AltForm) -> AltForm:
    """Pullback along the linear map L: Q^cols -> Q^rows = Q^{a.dim}.

    (pullback(L, a))(v1..vk) = a(L v1, .., L vk).
    """
    if L.rows != a.dim:
        raise DimensionMismatch("map target dimension != form dimension")
    m = L.cols
    if a.degree == 0:
        return AltForm(m, 0, dict(a.terms))
    if a.degree == 1:
        row = [a.terms.get((i + 1,), Fraction(0)) for i in range(a.dim)]
        pulled = [sum(row[i] * L[i, j] for i in range(a.dim))
                  for j in range(m)]
        return AltForm.build(m, 1, [((j + 1,), c) for j, c in enumerate(pulled)
                                    if c != 0])
    if a.degree == 2:
        return AltForm.from_matrix(L.transpose().matmul(a.matrix()).matmul(L))
    pulled_cov = [AltForm.build(m, 1, [((j + 1,), L[i, j]) for j in range(m)])
                  for i in range(a.dim)]
    out = AltForm.zero(m, a.degree)
    for key, c in a.terms.items():
        out = out + wedge_all([pulled_cov[i - 1] for i in key]).scale(c)
    return out


def restrict(a: AltForm, basis: Sequence[Vector]) -> AltForm:
    """Restriction of a to the span of `basis`, in basis coordinates."""
    if not basis:
        return AltForm.zero(0, a.degree)
    return pullback(Mat.from_cols(basis), a)


def one_kernel(a: AltForm) -> Subspace:
    """{v : interior(v, a) = 0}."""
    if a.degree == 0:
        raise ValueError("one-kernel of a degree-0 form")
    n = a.dim
    if a.is_zero():
        return Subspace.full(n)
    if a.degree == 2:
        return kernel_basis(a.matrix())
    contractions = [interior(vector([1 if j == i else 0 for j in range(n)]), a)
                    for i in range(n)]
    keys = sorted({k for c in contractions for k in c.terms})
    rows = [[c.terms.get(key, Fraction(0)) for c in contractions] for key in keys]
    return kernel_basis(Mat.from_rows(rows))


def one_kernel_of_covector(a: AltForm) -> Subspace:
    """Kernel of a degree-1 form viewed as a linear functional."""
    if a.degree != 1:
        raise ValueError("expected a one-form")
    row = [a.terms.get((i + 1,), Fraction(0)) for i in range(a.dim)]
    return kernel_basis(Mat.from_rows([row]))


def r_orthogonal(W: Subspace, a: AltForm, r: int) -> Subspace:
    """{v : a(v, w1, .., wr, ..) = 0 for all wi in W}.

    Enumerates only strictly increasing r-tuples of W's basis, which
    suffices by multilinearity and antisymmetry.
    """
    if not 1 <= r <= a.degree - 1:
        raise ValueError(f"r={r} out of range for degree {a.degree}")
    if W.ambient_dim != a.dim:
        raise DimensionMismatch("subspace and form dimensions differ")
    if W.dim == 0:
        return Subspace.full(a.dim)
    n = a.dim
    rows: list[list[Fraction]] = []
    for combo in combinations(W.basis, r):
        # coefficient of v_i in a(v, w1, .., wr, rest..): contract e_i then ws
        cols = []
        for i in range(n):
            b = interior(vector([1 if j == i else 0 for j in range(n)]), a)
            for w in combo:
                b = interior(w, b)
            cols.append(b)
        keys = sorted({k for c in cols for k in c.terms})
        for key in keys:
            rows.append([c.terms.get(key, Fraction(0)) for c in cols])
    if not rows:
        return Subspace.full(n)
    return kernel_basis(Mat.from_rows(rows))


@dataclass(frozen=True)
class Frame:
    """Invertible change of basis; columns are new basis vectors in the old one."""

    dim: int
    change: Mat

    def __post_init__(self):
        if self.change.rows != self.dim or self.change.cols != self.dim:
            raise DimensionMismatch("frame matrix is not square of the right size")
        if rank(self.change) != self.dim:
            raise ValueError("frame matrix is singular")

    @staticmethod
    def from_columns(columns: Sequence[Vector]) -> "Frame":
        return Frame(len(columns), Mat.from_cols(columns))

    @staticmethod
    def identity(dim: int) -> "Frame":
        return Frame(dim, Mat.identity(dim))

    def column(self, j: int) -> Vector:
        return self.change.col(j)
