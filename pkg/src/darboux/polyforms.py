"""Differential forms and vector fields with multivariate polynomial
coefficients on a fixed chart, all over exact rational arithmetic.

Charts are ordered tuples of variable names; objects on different charts
never unify silently.  Evaluating at a rational point hands results off to
the constant-coefficient layer (AltForm, Subspace), so both layers can
cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import Mat, Subspace, kernel_basis, rank, vector
from .exterior import AltForm, _sort_with_sign


@dataclass(frozen=True)
class Poly:
    """Sparse multivariate polynomial: exponent tuple -> rational coefficient."""

    chart: tuple[str, ...]
    terms: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    @staticmethod
    def build(chart, items) -> "Poly":
        chart = tuple(chart)
        acc: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != len(chart):
                raise ValueError("exponent vector does not match the chart")
            c = Fraction(coeff)
            acc[exps] = acc.get(exps, Fraction(0)) + c
        return Poly(chart, {e: c for e, c in acc.items() if c != 0})

    @staticmethod
    def constant(chart, value) -> "Poly":
        chart = tuple(chart)
        value = Fraction(value)
        if value == 0:
            return Poly(chart, {})
        return Poly(chart, {(0,) * len(chart): value})

    @staticmethod
    def variable(chart, name) -> "Poly":
        chart = tuple(chart)
        i = chart.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(chart)))
        return Poly(chart, {exps: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.chart), Fraction(0))

    def _same_chart(self, other: "Poly"):
        if self.chart != other.chart:
            raise ValueError("polynomials live on different charts")

    def __add__(self, other: "Poly") -> "Poly":
        self._same_chart(other)
        return Poly.build(self.chart,
                          list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly(self.chart, {})
        return Poly(self.chart, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_chart(other)
        items = []
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                items.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return Poly.build(self.chart, items)

    def diff(self, var: str) -> "Poly":
        i = self.chart.index(var)
        items = []
        for exps, c in self.terms.items():
            if exps[i] == 0:
                continue
            new = list(exps)
            new[i] -= 1
            items.append((tuple(new), c * exps[i]))
        return Poly.build(self.chart, items)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != len(self.chart):
            raise ValueError("point does not match the chart")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(pt, exps):
                term *= x ** e
            total += term
        return total

    def substitute(self, chart, args: Sequence["Poly"]) -> "Poly":
        """Compose: replace each variable by the matching polynomial."""
        if len(args) != len(self.chart):
            raise ValueError("need one argument polynomial per variable")
        chart = tuple(chart)
        out = Poly.constant(chart, 0)
        for exps, c in self.terms.items():
            term = Poly.constant(chart, c)
            for arg, e in zip(args, exps):
                for _ in range(e):
                    term = term * arg
            out = out + term
        return out

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Lexicographically largest exponent tuple and its coefficient."""
        key = max(self.terms)
        return key, self.terms[key]


def poly_divexact(num: Poly, den: Poly) -> Poly:
    """Exact polynomial division (raises if the division leaves a remainder)."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    quotient = Poly.constant(num.chart, 0)
    rem = num
    d_exp, d_coeff = den.leading()
    while not rem.is_zero():
        r_exp, r_coeff = rem.leading()
        q_exp = tuple(a - b for a, b in zip(r_exp, d_exp))
        if any(e < 0 for e in q_exp):
            raise ArithmeticError("polynomial division is not exact")
        piece = Poly(num.chart, {q_exp: r_coeff / d_coeff})
        quotient = quotient + piece
        rem = rem - piece * den
    return quotient


def poly_matrix_rank(rows: list[list[Poly]]) -> int:
    """Generic rank of a polynomial matrix via fraction-free elimination."""
    if not rows or not rows[0]:
        return 0
    chart = rows[0][0].chart
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    prev = Poly.constant(chart, 1)
    piv_row = 0
    for col in range(ncols):
        if piv_row >= nrows:
            break
        pivot = None
        for r in range(piv_row, nrows):
            if not m[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        m[piv_row], m[pivot] = m[pivot], m[piv_row]
        for r in range(piv_row + 1, nrows):
            for c in range(col + 1, ncols):
                num = m[piv_row][col] * m[r][c] - m[r][col] * m[piv_row][c]
                m[r][c] = poly_divexact(num, prev)
            m[r][col] = Poly.constant(chart, 0)
        prev = m[piv_row][col]
        piv_row += 1
    return piv_row


@dataclass(frozen=True)
class PolyForm:
    """Alternating k-form with polynomial coefficients on a chart."""

    chart: tuple[str, ...]
    degree: int
    terms: Mapping[tuple[int, ...], Poly] = field(default_factory=dict)

    @staticmethod
    def build(chart, degree, items) -> "PolyForm":
        chart = tuple(chart)
        acc: dict[tuple[int, ...], Poly] = {}
        for raw, coeff in items:
            key, sign = _sort_with_sign(tuple(raw))
            if sign == 0:
                continue
            if any(not 1 <= i <= len(chart) for i in key):
                raise ValueError(f"index out of range in {raw}")
            p = coeff.scale(sign)
            acc[key] = acc[key] + p if key in acc else p
        return PolyForm(chart, degree,
                        {k: v for k, v in acc.items() if not v.is_zero()})

    @staticmethod
    def zero(chart, degree) -> "PolyForm":
        return PolyForm(tuple(chart), degree, {})

    def is_zero(self) -> bool:
        return not self.terms

    def _same_chart(self, other):
        if self.chart != other.chart or self.degree != other.degree:
            raise ValueError("forms have different charts or degrees")

    def __add__(self, other: "PolyForm") -> "PolyForm":
        self._same_chart(other)
        return PolyForm.build(self.chart, self.degree,
                              list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        return self + other.scale(-1)

    def scale(self, c) -> "PolyForm":
        return PolyForm(self.chart, self.degree,
                        {k: v.scale(c) for k, v in self.terms.items()}
                        if c != 0 else {})

    def at(self, point: Sequence) -> AltForm:
        """Evaluate all coefficients at a rational point."""
        return AltForm.build(len(self.chart), self.degree,
                             [(k, p.evaluate(point))
                              for k, p in self.terms.items()])

    def matrix(self) -> list[list[Poly]]:
        """Polynomial coefficient matrix of a degree-2 form."""
        if self.degree != 2:
            raise ValueError("matrix view needs a degree-2 form")
        n = len(self.chart)
        zero = Poly.constant(self.chart, 0)
        rows = [[zero] * n for _ in range(n)]
        for (i, j), p in self.terms.items():
            rows[i - 1][j - 1] = p
            rows[j - 1][i - 1] = -p
        return rows


def wedge_poly(a: PolyForm, b: PolyForm) -> PolyForm:
    if a.chart != b.chart:
        raise ValueError("forms live on different charts")
    items = []
    for ka, pa in a.terms.items():
        for kb, pb in b.terms.items():
            if set(ka) & set(kb):
                continue
            items.append((ka + kb, pa * pb))
    return PolyForm.build(a.chart, a.degree + b.degree, items)


def exterior_derivative(a: PolyForm) -> PolyForm:
    items = []
    for key, p in a.terms.items():
        for i, var in enumerate(a.chart):
            dp = p.diff(var)
            if dp.is_zero():
                continue
            items.append(((i + 1,) + key, dp))
    return PolyForm.build(a.chart, a.degree + 1, items)


def is_closed(a: PolyForm) -> bool:
    return exterior_derivative(a).is_zero()


@dataclass(frozen=True)
class PolyVectorField:
    chart: tuple[str, ...]
    components: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) != len(self.chart):
            raise ValueError("component count must equal the chart size")

    @staticmethod
    def build(chart, components) -> "PolyVectorField":
        return PolyVectorField(tuple(chart), tuple(components))

    def evaluate(self, point) -> tuple[Fraction, ...]:
        return vector([p.evaluate(point) for p in self.components])


def lie_bracket(X: PolyVectorField, Y: PolyVectorField) -> PolyVectorField:
    if X.chart != Y.chart:
        raise ValueError("vector fields live on different charts")
    chart = X.chart
    comps = []
    for i in range(len(chart)):
        acc = Poly.constant(chart, 0)
        for j, var in enumerate(chart):
            acc = acc + X.components[j] * Y.components[i].diff(var)
            acc = acc - Y.components[j] * X.components[i].diff(var)
        comps.append(acc)
    return PolyVectorField(chart, tuple(comps))


def frobenius_involutive(fields: Sequence[PolyVectorField],
                         points: Sequence[Sequence] = ()) -> tuple[list[bool], bool]:
    """Involutivity of the span of the fields: pointwise flags and a generic
    verdict (every pairwise bracket stays inside the span, by rank comparison)."""
    if not fields:
        return [True for _ in points], True
    chart = fields[0].chart
    for f in fields:
        if f.chart != chart:
            raise ValueError("vector fields live on different charts")
    brackets = []
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            brackets.append(lie_bracket(fields[i], fields[j]))
    base_rows = [list(f.components) for f in fields]
    generic = True
    base_rank = poly_matrix_rank(base_rows)
    for b in brackets:
        if poly_matrix_rank(base_rows + [list(b.components)]) != base_rank:
            generic = False
            break
    flags = []
    for pt in points:
        rows = [[p.evaluate(pt) for p in f.components] for f in fields]
        rk = rank(Mat.from_rows(rows)) if rows else 0
        ok = True
        for b in brackets:
            extra = [p.evaluate(pt) for p in b.components]
            if rank(Mat.from_rows(rows + [extra])) != rk:
                ok = False
                break
        flags.append(ok)
    return flags, generic


@dataclass(frozen=True)
class PolyMap:
    source: tuple[str, ...]
    target: tuple[str, ...]
    components: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) != len(self.target):
            raise ValueError("need one component per target variable")
        for p in self.components:
            if p.chart != self.source:
                raise ValueError("components must live on the source chart")

    @staticmethod
    def build(source, target, components) -> "PolyMap":
        return PolyMap(tuple(source), tuple(target), tuple(components))

    @staticmethod
    def identity(chart) -> "PolyMap":
        chart = tuple(chart)
        return PolyMap(chart, chart,
                       tuple(Poly.variable(chart, v) for v in chart))


def pullback_map(phi: PolyMap, a: PolyForm) -> PolyForm:
    """Pullback of a form on the target chart along a polynomial map."""
    if a.chart != phi.target:
        raise ValueError("form does not live on the map's target chart")
    src = phi.source
    # each target covector dx^i pulls back to the i-th Jacobian row
    jac_rows = []
    for comp in phi.components:
        jac_rows.append(PolyForm.build(
            src, 1, [((j + 1,), comp.diff(var))
                     for j, var in enumerate(src)]))
    out = PolyForm.zero(src, a.degree)
    for key, p in a.terms.items():
        piece = PolyForm.build(src, 0, [((), p.substitute(src, phi.components))])
        for i in key:
            piece = wedge_poly(piece, jac_rows[i - 1])
        out = out + piece
    return out


def generic_rank(omega: PolyForm) -> int:
    return poly_matrix_rank(omega.matrix())


def rank_profile(omega: PolyForm, points: Sequence[Sequence]) -> list[int]:
    return [rank(omega.at(pt).matrix()) for pt in points]


def kernel_distribution(omega: PolyForm, point: Sequence) -> Subspace:
    return kernel_basis(omega.at(point).matrix())
