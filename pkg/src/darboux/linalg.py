"""Exact rational linear algebra: ranks, kernels, complements, annihilators.

Everything operates on `fractions.Fraction` entries; no floating point is
used anywhere.  Returned bases are canonicalised (reduced row echelon form
of the stacked basis vectors) so that span equality is literal equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction

Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(entries: Iterable) -> Vector:
    return tuple(_frac(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_scale(c, a: Vector) -> Vector:
    c = _frac(c)
    return tuple(c * x for x in a)


def dot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


@dataclass(frozen=True)
class Mat:
    """Dense rational matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[Vector, ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Mat":
        rs = tuple(vector(r) for r in rows)
        ncols = len(rs[0]) if rs else 0
        if any(len(r) != ncols for r in rs):
            raise DimensionMismatch("ragged rows")
        return Mat(len(rs), ncols, rs)

    @staticmethod
    def from_cols(cols: Sequence[Sequence]) -> "Mat":
        cs = [vector(c) for c in cols]
        nrows = len(cs[0]) if cs else 0
        return Mat.from_rows([[c[i] for c in cs] for i in range(nrows)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat.from_rows([unit_vector(n, i) for i in range(n)])

    @staticmethod
    def zero(r: int, c: int) -> "Mat":
        return Mat(r, c, tuple(zero_vector(c) for _ in range(r)))

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   tuple(self.col(j) for j in range(self.cols)))

    def matmul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"matmul shapes {self.rows}x{self.cols} and "
                f"{other.rows}x{other.cols}")
        # Scale both factors to integer entries so the inner products run on
        # plain ints; divide the common scale back out at the end.
        da = lcm(*(x.denominator for row in self.entries for x in row)) \
            if self.rows and self.cols else 1
        db = lcm(*(x.denominator for row in other.entries for x in row)) \
            if other.rows and other.cols else 1
        ia = [[x.numerator * (da // x.denominator) for x in row]
              for row in self.entries]
        ib = [[x.numerator * (db // x.denominator) for x in row]
              for row in other.entries]
        ibt = list(zip(*ib)) if ib else []
        scale = da * db
        return Mat(self.rows, other.cols,
                   tuple(tuple(Fraction(sum(a * b for a, b in zip(r, c)),
                                        scale)
                               for c in ibt)
                         for r in ia))

    def apply(self, v: Vector) -> Vector:
        if self.cols != len(v):
            raise DimensionMismatch("matrix-vector size mismatch")
        return tuple(dot(r, v) for r in self.entries)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols,
                   tuple(tuple(-x for x in r) for r in self.entries))


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns).

    Works over scaled integer rows internally (cheap big-int arithmetic with
    gcd normalisation) and divides by the pivots only at the end.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    m: list[list[int]] = []
    for row in rows:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        m.append([x.numerator * (mult // x.denominator) for x in row])
    pivots: list[int] = []
    pr = 0
    for pc in range(nc):
        sel = next((i for i in range(pr, nr) if m[i][pc] != 0), None)
        if sel is None:
            continue
        m[pr], m[sel] = m[sel], m[pr]
        g = gcd(*m[pr]) if nc > 1 else abs(m[pr][pc])
        if g > 1:
            m[pr] = [x // g for x in m[pr]]
        pv = m[pr][pc]
        for i in range(nr):
            if i != pr and m[i][pc] != 0:
                f = m[i][pc]
                new = [x * pv - f * y for x, y in zip(m[i], m[pr])]
                g = gcd(*new) if nc > 1 else abs(new[pc])
                if g > 1:
                    new = [x // g for x in new]
                m[i] = new
        pivots.append(pc)
        pr += 1
        if pr == nr:
            break
    out: list[list[Fraction]] = []
    for r, row in enumerate(m):
        if r < len(pivots):
            pv = row[pivots[r]]
            out.append([Fraction(x, pv) for x in row])
        else:
            out.append([Fraction(x) for x in row])
    return out, pivots


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) forward elimination on an integer matrix.

    Returns the echelon matrix and the pivot column list.  Divisions are
    exact, which bounds intermediate coefficient growth.
    """
    m = [r[:] for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    prev = 1
    pr = 0
    for pc in range(nc):
        sel = next((i for i in range(pr, nr) if m[i][pc] != 0), None)
        if sel is None:
            continue
        m[pr], m[sel] = m[sel], m[pr]
        for i in range(pr + 1, nr):
            for j in range(pc + 1, nc):
                m[i][j] = (m[pr][pc] * m[i][j] - m[i][pc] * m[pr][j]) // prev
            m[i][pc] = 0
        prev = m[pr][pc]
        pivots.append(pc)
        pr += 1
        if pr == nr:
            break
    return m, pivots


def _integerised(m: Mat) -> list[list[int]]:
    out = []
    for r in m.entries:
        mult = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * mult) for x in r])
    return out


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = _bareiss_echelon(_integerised(m))
    return len(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n given by a canonical (RREF) basis.

    Basis vectors are the rows of the reduced row echelon form of any
    spanning set, so two subspaces are span-equal iff they are equal.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @staticmethod
    def spanned_by(ambient_dim: int, vectors: Sequence[Sequence]) -> "Subspace":
        vs = [list(vector(v)) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector length != ambient dimension")
        if not vs:
            return Subspace(ambient_dim, ())
        rows, pivots = _rref(vs)
        return Subspace(ambient_dim,
                        tuple(tuple(rows[i]) for i in range(len(pivots))))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace.spanned_by(
            ambient_dim, [unit_vector(ambient_dim, i) for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vector) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length != ambient dimension")
        enlarged = Subspace.spanned_by(self.ambient_dim, list(self.basis) + [list(v)])
        return enlarged.dim == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates_of(self, v: Vector) -> Vector | None:
        """Coefficients of v over the canonical basis, or None if outside."""
        if not self.basis:
            return () if all(x == 0 for x in v) else None
        return solve(Mat.from_cols(self.basis), v)

    def matrix(self) -> Mat:
        """Basis vectors stacked as rows."""
        return Mat(self.dim, self.ambient_dim, self.basis)


def kernel_basis(m: Mat) -> Subspace:
    """Basis of the right null space; m.apply(v) == 0 for every basis vector."""
    if m.cols == 0:
        return Subspace(0, ())
    if m.rows == 0:
        return Subspace.full(m.cols)
    rows = [list(r) for r in m.entries]
    rows, pivots = _rref(rows)
    pivot_set = set(pivots)
    free_cols = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(v)
    return Subspace.spanned_by(m.cols, basis)


def solve(a: Mat, b: Vector) -> Vector | None:
    """One exact solution of a x = b (free variables set to 0), or None."""
    if a.rows != len(b):
        raise DimensionMismatch("rhs length != row count")
    rows = [list(r) + [bv] for r, bv in zip(a.entries, b)]
    if not rows:
        return zero_vector(a.cols)
    rows, pivots = _rref(rows)
    if a.cols in pivots:
        return None
    x = [Fraction(0)] * a.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][a.cols]
    return tuple(x)


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of non-square matrix")
    n = m.rows
    rows = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.entries)]
    rows, pivots = _rref(rows)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat.from_rows([r[n:] for r in rows])


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b, via the kernel of the stacked annihilators."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    ann = list(annihilator(a).basis) + list(annihilator(b).basis)
    if not ann:
        return Subspace.full(a.ambient_dim)
    return kernel_basis(Mat.from_rows(ann))


def intersect_all(spaces: Sequence[Subspace], ambient_dim: int | None = None) -> Subspace:
    if not spaces:
        if ambient_dim is None:
            raise ValueError("empty intersection with no ambient dimension")
        return Subspace.full(ambient_dim)
    acc = spaces[0]
    for s in spaces[1:]:
        acc = intersect(acc, s)
    return acc


def subspace_sum(a: Subspace, b: Subspace) -> tuple[Subspace, bool]:
    """Span of the union of the bases; the flag is True iff the sum is direct."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    s = Subspace.spanned_by(a.ambient_dim, list(a.basis) + list(b.basis))
    return s, s.dim == a.dim + b.dim


def is_spd(g: Mat) -> bool:
    """Symmetric positive definite, by leading principal minors."""
    if g.rows != g.cols or not g.is_symmetric():
        return False
    n = g.rows
    for k in range(1, n + 1):
        sub = Mat.from_rows([[g[i, j] for j in range(k)] for i in range(k)])
        if determinant(sub) <= 0:
            return False
    return True


def determinant(m: Mat) -> Fraction:
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of non-square matrix")
    if m.rows == 0:
        return Fraction(1)
    rows = [list(r) for r in m.entries]
    det = Fraction(1)
    n = m.rows
    for c in range(n):
        sel = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if sel is None:
            return Fraction(0)
        if sel != c:
            rows[c], rows[sel] = rows[sel], rows[c]
            det = -det
        det *= rows[c][c]
        inv = Fraction(1) / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def orthogonal_complement(s: Subspace, g: Mat) -> Subspace:
    """{v : g(v, s) = 0} for a symmetric positive-definite g."""
    if g.rows != s.ambient_dim or g.cols != s.ambient_dim:
        raise DimensionMismatch("metric size != ambient dimension")
    if not is_spd(g):
        raise ValueError("metric is not symmetric positive definite")
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    rows = [g.apply(v) for v in s.basis]
    return kernel_basis(Mat.from_rows(rows))


def relative_orthogonal_complement(t: Subspace, s: Subspace, g: Mat) -> Subspace:
    """{v in s : g(v, t) = 0}; complement of t within s when g is definite."""
    if t.dim == 0:
        return s
    rows = [g.apply(v) for v in t.basis]
    constraints = Mat.from_rows(rows)
    return intersect(s, kernel_basis(constraints))


def annihilator(s: Subspace) -> Subspace:
    """Covectors vanishing on s (dual space identified with Q^n)."""
    if s.dim == 0:
        return Subspace.full(s.ambient_dim)
    return kernel_basis(s.matrix())


def complement_basis(s: Subspace) -> list[Vector]:
    """Standard basis vectors completing s to the full space (deterministic)."""
    n = s.ambient_dim
    pivots = set()
    for v in s.basis:
        pivots.add(next(j for j in range(n) if v[j] != 0))
    return [unit_vector(n, j) for j in range(n) if j not in pivots]
