"""Constructive normal forms for linear (pre/co)symplectic-type structures.

Every routine returns a DarbouxReport carrying a Frame whose columns are the
new basis vectors expressed in the input basis, together with the canonical
template the input is brought to.  The report is self-certifying: verified is
true iff pulling every input form back through the frame reproduces the
template form with exact coefficient equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .linalg import (
    Mat,
    Subspace,
    Vector,
    annihilator,
    complement_basis,
    intersect,
    intersect_all,
    inverse,
    is_spd,
    kernel_basis,
    rank,
    relative_orthogonal_complement,
    solve,
    subspace_sum,
    unit_vector,
    vec_add,
    vec_scale,
    vector,
    zero_vector,
)
from .exterior import (
    AltForm,
    Frame,
    interior,
    one_kernel,
    one_kernel_of_covector,
    pullback,
    restrict,
    wedge_all,
)


class PreconditionError(ValueError):
    """A named structural hypothesis failed on the input data."""

    def __init__(self, clause: str, detail: str):
        self.clause = clause
        self.detail = detail
        super().__init__(f"{clause}: {detail}")


@dataclass(frozen=True)
class CanonicalTemplate:
    """A model structure on Q^dim with its defining forms spelled out."""

    kind: str
    dim: int
    params: dict
    one_forms: tuple[AltForm, ...] = ()
    two_forms: tuple[AltForm, ...] = ()
    distribution: Subspace | None = None

    @staticmethod
    def symplectic(n: int) -> "CanonicalTemplate":
        dim = 2 * n
        omega = AltForm.build(dim, 2, [((2 * i + 1, 2 * i + 2), 1) for i in range(n)])
        return CanonicalTemplate("symplectic", dim, {"n": n}, (), (omega,))

    @staticmethod
    def presymplectic(r: int, d: int) -> "CanonicalTemplate":
        dim = 2 * r + d
        omega = AltForm.build(dim, 2, [((2 * i + 1, 2 * i + 2), 1) for i in range(r)])
        return CanonicalTemplate("presymplectic", dim, {"r": r, "d": d}, (), (omega,))

    @staticmethod
    def cosymplectic(n: int) -> "CanonicalTemplate":
        dim = 2 * n + 1
        omega = AltForm.build(dim, 2, [((2 * i + 1, 2 * i + 2), 1) for i in range(n)])
        eta = AltForm.basis_covector(dim, dim)
        return CanonicalTemplate("cosymplectic", dim, {"n": n}, (eta,), (omega,))

    @staticmethod
    def precosymplectic(r: int, d: int) -> "CanonicalTemplate":
        dim = 2 * r + d + 1
        omega = AltForm.build(dim, 2, [((2 * i + 1, 2 * i + 2), 1) for i in range(r)])
        eta = AltForm.basis_covector(dim, dim)
        return CanonicalTemplate("precosymplectic", dim, {"r": r, "d": d}, (eta,), (omega,))

    @staticmethod
    def k_symplectic(k: int, n: int) -> "CanonicalTemplate":
        dim = n * (k + 1)
        omegas = tuple(
            AltForm.build(dim, 2, [((i + 1, n + beta * n + i + 1), 1) for i in range(n)])
            for beta in range(k))
        V = Subspace.spanned_by(dim, [unit_vector(dim, j) for j in range(n, dim)])
        return CanonicalTemplate("k_symplectic", dim, {"k": k, "n": n}, (), omegas, V)

    @staticmethod
    def k_presymplectic(k: int, n: int, r_list: tuple[int, ...], d: int,
                        index_sets: tuple[tuple[int, ...], ...]) -> "CanonicalTemplate":
        r = sum(r_list)
        dim = n + r + d
        offsets = []
        off = n
        for r_a in r_list:
            offsets.append(off)
            off += r_a
        omegas = tuple(
            AltForm.build(dim, 2, [((mu, offsets[a] + j + 1), 1)
                                   for j, mu in enumerate(index_sets[a])])
            for a in range(k))
        V = Subspace.spanned_by(dim, [unit_vector(dim, j) for j in range(n, dim)])
        params = {"k": k, "n": n, "r_list": tuple(r_list), "d": d,
                  "index_sets": tuple(tuple(s) for s in index_sets)}
        return CanonicalTemplate("k_presymplectic", dim, params, (), omegas, V)

    @staticmethod
    def k_cosymplectic(k: int, n: int) -> "CanonicalTemplate":
        dim = n * (k + 1) + k
        etas = tuple(AltForm.basis_covector(dim, a + 1) for a in range(k))
        omegas = tuple(
            AltForm.build(dim, 2, [((k + i + 1, k + n + beta * n + i + 1), 1)
                                   for i in range(n)])
            for beta in range(k))
        V = Subspace.spanned_by(dim, [unit_vector(dim, j) for j in range(k + n, dim)])
        return CanonicalTemplate("k_cosymplectic", dim, {"k": k, "n": n}, etas, omegas, V)

    @staticmethod
    def k_precosymplectic(k: int, n: int, r_list: tuple[int, ...], d: int,
                          index_sets: tuple[tuple[int, ...], ...]) -> "CanonicalTemplate":
        r = sum(r_list)
        dim = k + n + r + d
        etas = tuple(AltForm.basis_covector(dim, a + 1) for a in range(k))
        offsets = []
        off = k + n
        for r_a in r_list:
            offsets.append(off)
            off += r_a
        omegas = tuple(
            AltForm.build(dim, 2, [((k + mu, offsets[a] + j + 1), 1)
                                   for j, mu in enumerate(index_sets[a])])
            for a in range(k))
        V = Subspace.spanned_by(dim, [unit_vector(dim, j) for j in range(k + n, dim)])
        params = {"k": k, "n": n, "r_list": tuple(r_list), "d": d,
                  "index_sets": tuple(tuple(s) for s in index_sets)}
        return CanonicalTemplate("k_precosymplectic", dim, params, etas, omegas, V)


@dataclass(frozen=True)
class DarbouxReport:
    frame: Frame
    template: CanonicalTemplate
    index_sets: tuple[tuple[int, ...], ...] | None = None
    reeb: tuple[Vector, ...] | None = None
    reeb_freedom: Subspace | None = None
    splitting: dict = field(default_factory=dict)
    verified: bool = False

    def input_one_forms(self) -> tuple[AltForm, ...]:
        """The one-forms the frame certifies, reconstructed from the template."""
        inv = inverse(self.frame.change)
        return tuple(pullback(inv, a) for a in self.template.one_forms)


def _verify(frame: Frame, one_forms, two_forms, template: CanonicalTemplate) -> bool:
    for given, model in zip(one_forms, template.one_forms):
        if pullback(frame.change, given) != model:
            return False
    for given, model in zip(two_forms, template.two_forms):
        if pullback(frame.change, given) != model:
            return False
    return True


def _symplectic_columns(omega: AltForm) -> list[Vector]:
    """Darboux basis (u1, v1, u2, v2, ...) for a nondegenerate two-form."""
    m = omega.dim
    if m == 0:
        return []
    u = unit_vector(m, 0)
    a = interior(u, omega)
    j = min(key[0] for key in a.terms)
    v = vec_scale(Fraction(1) / a.terms[(j,)], unit_vector(m, j - 1))
    b = interior(v, omega)
    rows = [[a.coeff((i + 1,)) for i in range(m)],
            [b.coeff((i + 1,)) for i in range(m)]]
    comp = kernel_basis(Mat.from_rows(rows))
    B = Mat.from_cols(comp.basis) if comp.basis else None
    cols = [u, v]
    if B is not None:
        sub = pullback(B, omega)
        for c in _symplectic_columns(sub):
            cols.append(B.apply(c))
    return cols


def symplectic_darboux(omega: AltForm) -> DarbouxReport:
    if omega.degree != 2:
        raise PreconditionError("degree", "expected a two-form")
    if omega.dim % 2 != 0:
        raise PreconditionError("odd_dimension", f"dimension {omega.dim} is odd")
    if one_kernel(omega).dim != 0:
        raise PreconditionError("degenerate", "two-form has a nontrivial kernel")
    cols = _symplectic_columns(omega)
    frame = Frame.from_columns(cols)
    template = CanonicalTemplate.symplectic(omega.dim // 2)
    return DarbouxReport(frame, template,
                         verified=_verify(frame, (), (omega,), template))


def presymplectic_darboux(omega: AltForm) -> DarbouxReport:
    if omega.degree != 2:
        raise PreconditionError("degree", "expected a two-form")
    K = one_kernel(omega)
    d = K.dim
    r2 = omega.dim - d
    assert r2 % 2 == 0
    comp = complement_basis(K)
    cols: list[Vector] = []
    if comp:
        B = Mat.from_cols(comp)
        sub = pullback(B, omega)
        cols = [B.apply(c) for c in _symplectic_columns(sub)]
    cols.extend(K.basis)
    frame = Frame.from_columns(cols) if cols else Frame.identity(0)
    template = CanonicalTemplate.presymplectic(r2 // 2, d)
    return DarbouxReport(frame, template, splitting={"D": K},
                         verified=_verify(frame, (), (omega,), template))


def reeb_solve(etas, omegas) -> tuple[tuple[Vector, ...], Subspace]:
    """Solve for dual vectors: eta^b(R_a) = delta, interior(R_a, omega^b) = 0.

    Returns one particular solution per index and the shared homogeneous
    solution space (the intersection of all eta- and omega-kernels).
    """
    if len(etas) != len(omegas) or not etas:
        raise ValueError("need equally many one-forms and two-forms, at least one")
    m = etas[0].dim
    rows = []
    for eta in etas:
        rows.append([eta.coeff((i + 1,)) for i in range(m)])
    for omega in omegas:
        Amat = omega.matrix()
        rows.extend(Amat.row(i) for i in range(m))
    M = Mat.from_rows(rows)
    k = len(etas)
    base = []
    for a in range(k):
        rhs = [Fraction(1) if i == a else Fraction(0) for i in range(k)]
        rhs += [Fraction(0)] * (len(rows) - k)
        sol = solve(M, vector(rhs))
        if sol is None:
            raise ValueError(f"no Reeb vectors exist: system for index {a + 1} "
                             "is inconsistent")
        base.append(sol)
    return tuple(base), kernel_basis(M)


def cosymplectic_darboux(eta: AltForm, omega: AltForm) -> DarbouxReport:
    if eta.degree != 1 or omega.degree != 2:
        raise PreconditionError("degree", "expected a one-form and a two-form")
    if eta.is_zero():
        raise PreconditionError("eta_zero", "the one-form vanishes")
    H = one_kernel_of_covector(eta)
    K = one_kernel(omega)
    total, direct = subspace_sum(H, K)
    if not direct or total.dim != eta.dim:
        raise PreconditionError(
            "kernel_splitting",
            "kernel of the one-form and kernel of the two-form do not split "
            "the space as a direct sum")
    B = Mat.from_cols(H.basis) if H.basis else None
    cols: list[Vector] = []
    if B is not None:
        sub = pullback(B, omega)
        cols = [B.apply(c) for c in _symplectic_columns(sub)]
    base, freedom = reeb_solve([eta], [omega])
    assert freedom.dim == 0
    cols.append(base[0])
    frame = Frame.from_columns(cols)
    template = CanonicalTemplate.cosymplectic((eta.dim - 1) // 2)
    return DarbouxReport(frame, template, reeb=base, reeb_freedom=freedom,
                         verified=_verify(frame, (eta,), (omega,), template))


def precosymplectic_darboux(eta: AltForm, omega: AltForm) -> DarbouxReport:
    if eta.degree != 1 or omega.degree != 2:
        raise PreconditionError("degree", "expected a one-form and a two-form")
    if eta.is_zero():
        raise PreconditionError("eta_zero", "the one-form vanishes")
    H = one_kernel_of_covector(eta)
    K = one_kernel(omega)
    D = intersect(H, K)
    if D.dim == K.dim:
        raise PreconditionError(
            "kernel_containment",
            "kernel of the two-form is contained in the kernel of the one-form")
    base, freedom = reeb_solve([eta], [omega])
    cols: list[Vector] = []
    r = d = 0
    if H.basis:
        B = Mat.from_cols(H.basis)
        sub_report = presymplectic_darboux(pullback(B, omega))
        cols = [B.apply(sub_report.frame.column(j)) for j in range(H.dim)]
        r = sub_report.template.params["r"]
        d = sub_report.template.params["d"]
    cols.append(base[0])
    frame = Frame.from_columns(cols)
    template = CanonicalTemplate.precosymplectic(r, d)
    return DarbouxReport(frame, template, reeb=base, reeb_freedom=freedom,
                         splitting={"D": D},
                         verified=_verify(frame, (eta,), (omega,), template))


def _check_two_forms(omegas):
    if not omegas:
        raise PreconditionError("empty_family", "need at least one two-form")
    m = omegas[0].dim
    for w in omegas:
        if w.degree != 2 or w.dim != m:
            raise PreconditionError("degree", "expected two-forms on one space")
    return m


def k_symplectic_darboux(omegas, V: Subspace) -> DarbouxReport:
    m = _check_two_forms(omegas)
    k = len(omegas)
    if V.ambient_dim != m:
        raise PreconditionError("dimension_mismatch",
                                "distribution lives in a different space")
    if m % (k + 1) != 0:
        raise PreconditionError("dimension_mismatch",
                                f"dimension {m} is not a multiple of {k + 1}")
    n = m // (k + 1)
    if V.dim != n * k:
        raise PreconditionError("distribution_rank",
                                f"distribution has rank {V.dim}, expected {n * k}")
    for a, w in enumerate(omegas):
        if not restrict(w, V.basis).is_zero():
            raise PreconditionError("not_isotropic",
                                    f"two-form {a + 1} does not vanish on the "
                                    "distribution")
    kernels = [one_kernel(w) for w in omegas]
    if intersect_all(kernels, m).dim != 0:
        raise PreconditionError("common_kernel",
                                "the two-forms share a nonzero kernel vector")

    if k == 1:
        V_parts = [V]
    else:
        V_parts = []
        for b in range(k):
            others = [kernels[a] for a in range(k) if a != b]
            V_parts.append(intersect_all(others, m))
    for b, Vb in enumerate(V_parts):
        if Vb.dim != n or not V.contains_subspace(Vb):
            raise PreconditionError(
                "polarisation",
                f"component {b + 1} of the distribution has the wrong shape")

    # Dual side: covectors annihilating V give the e^i, one-forms e^1..e^n.
    ann = annihilator(V)
    covs = [AltForm.build(m, 1, [((i + 1,), c) for i, c in enumerate(row)])
            for row in ann.basis]

    f_cols: list[list[Vector]] = []
    for b in range(k):
        Bb = Mat.from_cols(V_parts[b].basis)
        block = []
        for i in range(n):
            # coefficients x with interior(Bb x, omega^b) = -e^i
            rows, rhs = [], []
            cont = [interior(col, omegas[b]) for col in V_parts[b].basis]
            for pos in range(m):
                rows.append([c.coeff((pos + 1,)) for c in cont])
                rhs.append(-covs[i].coeff((pos + 1,)))
            x = solve(Mat.from_rows(rows), vector(rhs))
            if x is None:
                raise PreconditionError("polarisation",
                                        "pairing between the distribution and "
                                        "its annihilator is degenerate")
            block.append(Bb.apply(x))
        f_cols.append(block)

    ann_rows = Mat.from_rows(ann.basis)
    u_cols = []
    for i in range(n):
        u = solve(ann_rows, unit_vector(n, i))
        assert u is not None
        u_cols.append(u)

    e_cols = []
    for i in range(n):
        E = u_cols[i]
        for b in range(k):
            for j in range(n):
                c = omegas[b].apply([u_cols[i], u_cols[j]])
                if c != 0:
                    E = vec_add(E, vec_scale(c / 2, f_cols[b][j]))
        e_cols.append(E)

    cols = e_cols + [col for block in f_cols for col in block]
    frame = Frame.from_columns(cols)
    template = CanonicalTemplate.k_symplectic(k, n)
    splitting = {"V": V}
    for b in range(k):
        splitting[f"V_{b + 1}"] = V_parts[b]
    return DarbouxReport(frame, template, splitting=splitting,
                         verified=_verify(frame, (), tuple(omegas), template))


def compute_splitting(omegas, V: Subspace, g: Mat):
    """One candidate decomposition (V_1..V_k, D) of a degenerate family.

    D is the shared kernel of the two-forms; each V_a is the g-orthogonal
    complement of D inside V intersected with the kernels of the other forms.
    """
    m = _check_two_forms(omegas)
    if not is_spd(g):
        raise PreconditionError("metric_not_spd", "metric is not symmetric "
                                "positive definite")
    kernels = [one_kernel(w) for w in omegas]
    D = intersect(intersect_all(kernels, m), V)
    parts = []
    for a in range(len(omegas)):
        others = [kernels[b] for b in range(len(omegas)) if b != a]
        K = intersect_all(others, m) if others else Subspace.full(m)
        K = intersect(K, V)
        parts.append(relative_orthogonal_complement(D, K, g))
    return tuple(parts), D


def _adapted_dual_basis(spans: list[Subspace], ambient: Subspace, gstar: Mat):
    """Basis of `ambient` adapted to every subspace in `spans`, if one exists.

    Works over the lattice of intersections, largest first, extending by
    gstar-orthogonal complements; the result is checked and None is returned
    when no common adapted basis can be produced this way.
    """
    k = len(spans)
    chosen: list[Vector] = []
    order = sorted((subset for size in range(k, 0, -1)
                    for subset in combinations(range(k), size)),
                   key=lambda t: (-len(t), t))
    m = ambient.ambient_dim
    for subset in order:
        S = intersect_all([spans[a] for a in subset], m)
        have = intersect(Subspace.spanned_by(m, chosen), S)
        new = relative_orthogonal_complement(have, S, gstar)
        chosen.extend(new.basis)
    rest = relative_orthogonal_complement(Subspace.spanned_by(m, chosen),
                                          ambient, gstar)
    chosen.extend(rest.basis)
    if len(chosen) != ambient.dim:
        return None
    for S in spans:
        inside = [v for v in chosen if S.contains(v)]
        if Subspace.spanned_by(m, inside) != S:
            return None
    return chosen


def k_presymplectic_darboux(omegas, V: Subspace, splitting, g: Mat) -> DarbouxReport:
    m = _check_two_forms(omegas)
    k = len(omegas)
    V_parts, D = splitting
    if len(V_parts) != k:
        raise PreconditionError("splitting_shape", "need one component per form")
    if not is_spd(g):
        raise PreconditionError("metric_not_spd",
                                "metric is not symmetric positive definite")
    kernels = [one_kernel(w) for w in omegas]
    if D != intersect_all(kernels, m):
        raise PreconditionError("common_kernel_mismatch",
                                "D is not the shared kernel of the two-forms")
    d = D.dim
    r_list = []
    for a, w in enumerate(omegas):
        rk = rank(w.matrix())
        if rk != 2 * V_parts[a].dim:
            raise PreconditionError(
                "rank_mismatch",
                f"two-form {a + 1} has rank {rk}, expected twice the rank "
                f"{V_parts[a].dim} of its distribution component")
        r_list.append(rk // 2)
    r = sum(r_list)
    n = m - r - d
    if n < 0:
        raise PreconditionError("dimension_mismatch",
                                "rank bookkeeping exceeds the dimension")
    total = D
    for part in V_parts:
        total, direct = subspace_sum(total, part)
        if not direct:
            raise PreconditionError("splitting_not_direct",
                                    "the components and D do not form a "
                                    "direct sum")
    if total != V:
        raise PreconditionError("splitting_not_direct",
                                "the components and D do not sum to the "
                                "distribution")
    if k > 1:
        for a in range(k):
            others = [kernels[b] for b in range(k) if b != a]
            target = intersect(intersect_all(others, m), V)
            cand, _ = subspace_sum(D, V_parts[a])
            if cand != target:
                raise PreconditionError(
                    "splitting_condition",
                    f"component {a + 1} plus D differs from the distribution "
                    "cut by the other kernels")
    for a, w in enumerate(omegas):
        if not restrict(w, V.basis).is_zero():
            raise PreconditionError("not_isotropic",
                                    f"two-form {a + 1} does not vanish on the "
                                    "distribution")

    ann = annihilator(V)
    # image of each component under its own two-form, inside the annihilator
    spans = []
    for a in range(k):
        imgs = []
        for col in V_parts[a].basis:
            c = interior(col, omegas[a])
            imgs.append(vector([c.coeff((i + 1,)) for i in range(m)]))
        S = Subspace.spanned_by(m, imgs)
        if S.dim != r_list[a] or not ann.contains_subspace(S):
            raise PreconditionError(
                "pairing_degenerate",
                f"two-form {a + 1} does not pair its component injectively "
                "against the distribution")
        spans.append(S)
    gstar = inverse(g)
    covrows = _adapted_dual_basis(spans, ann, gstar)
    if covrows is None:
        raise PreconditionError(
            "no_adapted_basis",
            "no basis of the annihilator is simultaneously adapted to every "
            "two-form image; the family admits no indexed normal form with "
            "this splitting")
    index_sets = tuple(
        tuple(mu + 1 for mu, row in enumerate(covrows) if spans[a].contains(row))
        for a in range(k))
    covered = sorted({mu for s in index_sets for mu in s})
    if covered != list(range(1, n + 1)):
        raise PreconditionError(
            "index_coverage",
            "the two-form images do not jointly span the annihilator of the "
            "distribution")

    covs = [AltForm.build(m, 1, [((i + 1,), c) for i, c in enumerate(row)])
            for row in covrows]
    f_cols: list[list[Vector]] = []
    for a in range(k):
        Ba = Mat.from_cols(V_parts[a].basis) if V_parts[a].basis else None
        block = []
        cont = [interior(col, omegas[a]) for col in V_parts[a].basis]
        for mu in index_sets[a]:
            rows, rhs = [], []
            for pos in range(m):
                rows.append([c.coeff((pos + 1,)) for c in cont])
                rhs.append(-covs[mu - 1].coeff((pos + 1,)))
            x = solve(Mat.from_rows(rows), vector(rhs))
            assert x is not None
            block.append(Ba.apply(x))
        f_cols.append(block)

    cov_rows_mat = Mat.from_rows(covrows)
    u_cols = [solve(cov_rows_mat, unit_vector(n, i)) for i in range(n)]
    e_cols = []
    for i in range(n):
        E = u_cols[i]
        for a in range(k):
            I = index_sets[a]
            for j, mu in enumerate(I):
                c = omegas[a].apply([u_cols[i], u_cols[mu - 1]])
                if c == 0:
                    continue
                coeff = c / 2 if (i + 1) in I else c
                E = vec_add(E, vec_scale(coeff, f_cols[a][j]))
        e_cols.append(E)

    cols = e_cols + [col for block in f_cols for col in block] + list(D.basis)
    frame = Frame.from_columns(cols)
    template = CanonicalTemplate.k_presymplectic(k, n, tuple(r_list), d, index_sets)
    split = {"V": V, "D": D}
    for a in range(k):
        split[f"V_{a + 1}"] = V_parts[a]
    return DarbouxReport(frame, template, index_sets=index_sets, splitting=split,
                         verified=_verify(frame, (), tuple(omegas), template))


def _check_eta_family(etas, omegas):
    if len(etas) != len(omegas) or not etas:
        raise PreconditionError("family_shape",
                                "need equally many one-forms and two-forms")
    m = _check_two_forms(omegas)
    for eta in etas:
        if eta.degree != 1 or eta.dim != m:
            raise PreconditionError("degree", "expected one-forms on the "
                                    "same space")
    if wedge_all(list(etas)).is_zero():
        raise PreconditionError("eta_dependent",
                                "the one-forms are linearly dependent")
    return m


def _horizontal_data(etas, omegas, V):
    """Coordinates of the structure on the joint kernel of the one-forms."""
    m = etas[0].dim
    H = intersect_all([one_kernel_of_covector(e) for e in etas], m)
    for a, eta in enumerate(etas):
        if any(not H.contains(col) for col in V.basis):
            raise PreconditionError("eta_on_distribution",
                                    f"one-form {a + 1} does not vanish on the "
                                    "distribution")
    B = Mat.from_cols(H.basis)
    sub_omegas = [pullback(B, w) for w in omegas]
    V_coords = [H.coordinates_of(col) for col in V.basis]
    sub_V = Subspace.spanned_by(H.dim, V_coords)
    return H, B, sub_omegas, sub_V


def k_cosymplectic_darboux(etas, omegas, V: Subspace) -> DarbouxReport:
    m = _check_eta_family(etas, omegas)
    k = len(etas)
    for a, w in enumerate(omegas):
        if not restrict(w, V.basis).is_zero():
            raise PreconditionError("not_isotropic",
                                    f"two-form {a + 1} does not vanish on the "
                                    "distribution")
    joint = intersect_all(
        [intersect(one_kernel_of_covector(etas[a]), one_kernel(omegas[a]))
         for a in range(k)], m)
    if joint.dim != 0:
        raise PreconditionError("joint_kernel",
                                "the pairs share a nonzero kernel vector")
    core = intersect_all([one_kernel(w) for w in omegas], m)
    if core.dim != k:
        raise PreconditionError("kernel_rank",
                                f"shared kernel of the two-forms has rank "
                                f"{core.dim}, expected {k}")
    if (m - k) % (k + 1) != 0 or V.dim != (m - k) // (k + 1) * k:
        raise PreconditionError("dimension_mismatch",
                                "dimensions do not match the model"
                                f" (dim {m}, distribution rank {V.dim})")
    H, B, sub_omegas, sub_V = _horizontal_data(etas, omegas, V)
    inner = k_symplectic_darboux(sub_omegas, sub_V)
    base, freedom = reeb_solve(etas, omegas)
    assert freedom.dim == 0
    cols = list(base)
    cols += [B.apply(inner.frame.column(j)) for j in range(H.dim)]
    frame = Frame.from_columns(cols)
    n = inner.template.params["n"]
    template = CanonicalTemplate.k_cosymplectic(k, n)
    split = {"V": V}
    for a in range(k):
        part = inner.splitting[f"V_{a + 1}"]
        split[f"V_{a + 1}"] = Subspace.spanned_by(
            m, [B.apply(col) for col in part.basis])
    return DarbouxReport(frame, template, reeb=base, reeb_freedom=freedom,
                         splitting=split,
                         verified=_verify(frame, tuple(etas), tuple(omegas),
                                          template))


def k_precosymplectic_darboux(etas, omegas, V: Subspace, splitting,
                              g: Mat) -> DarbouxReport:
    m = _check_eta_family(etas, omegas)
    k = len(etas)
    V_parts, D = splitting
    for a, w in enumerate(omegas):
        if not restrict(w, V.basis).is_zero():
            raise PreconditionError("not_isotropic",
                                    f"two-form {a + 1} does not vanish on the "
                                    "distribution")
    kernels = [one_kernel(w) for w in omegas]
    core = intersect_all(kernels, m)
    joint = intersect_all(
        [intersect(one_kernel_of_covector(etas[a]), kernels[a])
         for a in range(k)], m)
    d = joint.dim
    if core.dim != k + d:
        raise PreconditionError("kernel_rank",
                                f"shared kernel of the two-forms has rank "
                                f"{core.dim}, expected {k + d}")
    if D != joint:
        raise PreconditionError("common_kernel_mismatch",
                                "D is not the joint kernel of the pairs")
    H, B, sub_omegas, sub_V = _horizontal_data(etas, omegas, V)
    sub_parts = tuple(
        Subspace.spanned_by(H.dim, [H.coordinates_of(col) for col in part.basis])
        for part in V_parts)
    sub_D = Subspace.spanned_by(H.dim,
                                [H.coordinates_of(col) for col in D.basis])
    sub_g = B.transpose().matmul(g).matmul(B)
    inner = k_presymplectic_darboux(sub_omegas, sub_V, (sub_parts, sub_D), sub_g)
    base, freedom = reeb_solve(etas, omegas)
    cols = list(base)
    cols += [B.apply(inner.frame.column(j)) for j in range(H.dim)]
    frame = Frame.from_columns(cols)
    p = inner.template.params
    template = CanonicalTemplate.k_precosymplectic(
        k, p["n"], p["r_list"], p["d"], p["index_sets"])
    split = {"V": V, "D": D}
    for a in range(k):
        part = inner.splitting[f"V_{a + 1}"]
        split[f"V_{a + 1}"] = Subspace.spanned_by(
            m, [B.apply(col) for col in part.basis])
    return DarbouxReport(frame, template, index_sets=p["index_sets"],
                         reeb=base, reeb_freedom=freedom, splitting=split,
                         verified=_verify(frame, tuple(etas), tuple(omegas),
                                          template))
