"""Linear connections on a chart with polynomial Christoffel symbols.

Supports covariant derivatives of forms, torsion, curvature, and flatness.
Connections are not assumed torsion-free: torsion is a property to compute,
not an invariant to enforce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .polyforms import Poly, PolyForm


@dataclass(frozen=True)
class Connection:
    """Christoffel symbols Gamma^c_{ab}, sparse; absent entries are zero."""

    chart: tuple[str, ...]
    christoffel: Mapping[tuple[int, int, int], Poly] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.chart)
        for (c, a, b), p in self.christoffel.items():
            if not all(0 <= i < n for i in (c, a, b)):
                raise ValueError("Christoffel index out of range")
            if p.chart != self.chart:
                raise ValueError("Christoffel symbol on the wrong chart")

    @staticmethod
    def build(chart, entries) -> "Connection":
        """entries: iterable of ((upper, lower1, lower2), Poly), 0-based."""
        chart = tuple(chart)
        table = {}
        for key, p in entries:
            if not p.is_zero():
                table[tuple(key)] = p
        return Connection(chart, table)

    @staticmethod
    def flat(chart) -> "Connection":
        return Connection(tuple(chart), {})

    def gamma(self, c: int, a: int, b: int) -> Poly:
        return self.christoffel.get((c, a, b), Poly.constant(self.chart, 0))


@dataclass(frozen=True)
class TensorField:
    """Dense component array indexed by full index tuples (0-based)."""

    chart: tuple[str, ...]
    covariant: int
    contravariant: int
    components: Mapping[tuple[int, ...], Poly] = field(default_factory=dict)

    @staticmethod
    def build(chart, covariant, contravariant, items) -> "TensorField":
        chart = tuple(chart)
        comp = {}
        for key, p in items:
            if p.is_zero():
                continue
            key = tuple(key)
            comp[key] = comp[key] + p if key in comp else p
        return TensorField(chart, covariant, contravariant,
                           {k: v for k, v in comp.items() if not v.is_zero()})

    def component(self, *key) -> Poly:
        return self.components.get(tuple(key), Poly.constant(self.chart, 0))

    def is_zero(self) -> bool:
        return not self.components


def covariant_derivative_form(nabla: Connection, a: PolyForm) -> TensorField:
    """(nabla a)_{b; a1..ak} = d_b a_{a1..ak} - sum_j Gamma^c_{b a_j} a_{a1..c..ak}.

    The derivative index is the leading covariant slot.
    """
    if a.chart != nabla.chart:
        raise ValueError("form and connection live on different charts")
    chart = a.chart
    n = len(chart)
    k = a.degree

    def coeff(indices) -> Poly:
        # form coefficient with arbitrary (possibly unsorted) 1-based indices
        total = Poly.constant(chart, 0)
        from .exterior import _sort_with_sign
        key, sign = _sort_with_sign(indices)
        if sign == 0:
            return total
        p = a.terms.get(key)
        return p.scale(sign) if p is not None else total

    items = []
    for key in product(range(n), repeat=k + 1):
        b, rest = key[0], key[1:]
        indices = tuple(i + 1 for i in rest)
        entry = coeff(indices).diff(chart[b])
        for j in range(k):
            for c in range(n):
                gam = nabla.gamma(c, b, rest[j])
                if gam.is_zero():
                    continue
                swapped = indices[:j] + (c + 1,) + indices[j + 1:]
                entry = entry - gam * coeff(swapped)
        items.append((key, entry))
    return TensorField.build(chart, k + 1, 0, items)


def is_parallel(nabla: Connection, a: PolyForm) -> bool:
    return covariant_derivative_form(nabla, a).is_zero()


def torsion(nabla: Connection) -> TensorField:
    """T^c_{ab} = Gamma^c_{ab} - Gamma^c_{ba}; key layout (c, a, b)."""
    n = len(nabla.chart)
    items = []
    for c in range(n):
        for a in range(n):
            for b in range(n):
                items.append(((c, a, b),
                              nabla.gamma(c, a, b) - nabla.gamma(c, b, a)))
    return TensorField.build(nabla.chart, 2, 1, items)


def curvature(nabla: Connection) -> TensorField:
    """R^d_{cab} = d_a G^d_{bc} - d_b G^d_{ac} + G^d_{ae}G^e_{bc} - G^d_{be}G^e_{ac};
    key layout (d, c, a, b)."""
    chart = nabla.chart
    n = len(chart)
    items = []
    for d in range(n):
        for c in range(n):
            for a in range(n):
                for b in range(n):
                    entry = (nabla.gamma(d, b, c).diff(chart[a])
                             - nabla.gamma(d, a, c).diff(chart[b]))
                    for e in range(n):
                        entry = entry + nabla.gamma(d, a, e) * nabla.gamma(e, b, c)
                        entry = entry - nabla.gamma(d, b, e) * nabla.gamma(e, a, c)
                    items.append(((d, c, a, b), entry))
    return TensorField.build(chart, 3, 1, items)


def is_flat(nabla: Connection) -> bool:
    return curvature(nabla).is_zero()
