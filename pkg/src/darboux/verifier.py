"""Machine-checkable predicates for the linear structure definitions.

Each checker returns a Verdict listing every defining clause with a
self-contained statement, a pass/fail flag, and (on failure) a concrete
witness that violates the clause.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .linalg import (
    Mat,
    Subspace,
    Vector,
    intersect,
    intersect_all,
    is_spd,
    kernel_basis,
    rank,
    subspace_sum,
    unit_vector,
    vector,
)
from .exterior import (
    AltForm,
    interior,
    one_kernel,
    one_kernel_of_covector,
    r_orthogonal,
    restrict,
    wedge_all,
)
from .normal_form import PreconditionError, compute_splitting


@dataclass(frozen=True)
class Clause:
    name: str
    statement: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class Verdict:
    kind: str
    accepted: bool
    clauses: tuple[Clause, ...]
    params: dict = field(default_factory=dict)

    @staticmethod
    def from_clauses(kind, clauses, params=None) -> "Verdict":
        return Verdict(kind, all(c.passed for c in clauses), tuple(clauses),
                       params or {})

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.passed]


@dataclass(frozen=True)
class StructureSpec:
    """Input bundle for the classifier.

    kind is one of the eight Darboux families, "multisymplectic", or
    "unknown" (try everything the given data shapes allow).
    """

    kind: str
    dim: int
    etas: tuple[AltForm, ...] = ()
    omegas: tuple[AltForm, ...] = ()
    big_form: AltForm | None = None
    V: Subspace | None = None
    splitting: tuple[tuple[Subspace, ...], Subspace] | None = None
    g: Mat | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for f in list(self.etas) + list(self.omegas) + (
                [self.big_form] if self.big_form else []):
            if f.dim != self.dim:
                raise ValueError("all forms must live on the same space")
        for eta in self.etas:
            if eta.degree != 1:
                raise ValueError("eta entries must be one-forms")
        for w in self.omegas:
            if w.degree != 2:
                raise ValueError("omega entries must be two-forms")
        if self.V is not None and self.V.ambient_dim != self.dim:
            raise ValueError("distribution has the wrong ambient dimension")


def check_symplectic(omega: AltForm) -> Verdict:
    ker = one_kernel(omega)
    clauses = [
        Clause("even_dimension", "the space has even dimension",
               omega.dim % 2 == 0),
        Clause("nondegenerate",
               "contraction with the two-form has trivial kernel",
               ker.dim == 0, ker.basis[0] if ker.basis else None),
    ]
    return Verdict.from_clauses("symplectic", clauses, {"n": omega.dim // 2})


def check_presymplectic(omega: AltForm) -> Verdict:
    r2 = omega.dim - one_kernel(omega).dim
    clauses = [Clause("two_form", "a two-form always has even rank",
                      r2 % 2 == 0)]
    return Verdict.from_clauses("presymplectic", clauses,
                                {"r": r2 // 2, "d": omega.dim - r2})


def check_cosymplectic(eta: AltForm, omega: AltForm) -> Verdict:
    clauses = [Clause("eta_nonzero", "the one-form does not vanish",
                      not eta.is_zero())]
    if eta.is_zero():
        return Verdict.from_clauses("cosymplectic", clauses)
    H = one_kernel_of_covector(eta)
    K = one_kernel(omega)
    total, direct = subspace_sum(H, K)
    ok = direct and total.dim == eta.dim
    witness = None
    if not ok:
        overlap = intersect(H, K)
        witness = overlap.basis[0] if overlap.basis else None
    clauses.append(Clause(
        "kernel_splitting",
        "the kernels of the one-form and the two-form span the space as a "
        "direct sum", ok, witness))
    return Verdict.from_clauses("cosymplectic", clauses,
                                {"n": (eta.dim - 1) // 2})


def check_precosymplectic(eta: AltForm, omega: AltForm) -> Verdict:
    clauses = [Clause("eta_nonzero", "the one-form does not vanish",
                      not eta.is_zero())]
    if eta.is_zero():
        return Verdict.from_clauses("precosymplectic", clauses)
    K = one_kernel(omega)
    D = intersect(one_kernel_of_covector(eta), K)
    clauses.append(Clause(
        "strict_kernel_inclusion",
        "the joint kernel of both forms is strictly smaller than the kernel "
        "of the two-form", D.dim < K.dim))
    r = (eta.dim - 1 - D.dim) // 2
    return Verdict.from_clauses("precosymplectic", clauses,
                                {"r": r, "d": D.dim})


def check_k_symplectic(omegas, V: Subspace, n: int | None = None,
                       k: int | None = None) -> Verdict:
    m = omegas[0].dim
    k = len(omegas) if k is None else k
    clauses = [Clause("family_size", "as many two-forms as declared",
                      k == len(omegas))]
    if n is None:
        n = m // (k + 1) if m % (k + 1) == 0 else -1
    clauses.append(Clause("dimension",
                          "the dimension equals n(k+1)", m == n * (k + 1)))
    clauses.append(Clause("polarisation_rank",
                          "the distribution has rank nk", V.dim == n * k))
    for a, w in enumerate(omegas):
        bad = _isotropy_witness(w, V)
        clauses.append(Clause(
            f"isotropic_{a + 1}",
            f"two-form {a + 1} vanishes on pairs from the distribution",
            bad is None, bad))
    core = intersect_all([one_kernel(w) for w in omegas], m)
    clauses.append(Clause(
        "trivial_common_kernel", "the two-forms share no nonzero kernel vector",
        core.dim == 0, core.basis[0] if core.basis else None))
    return Verdict.from_clauses("k_symplectic", clauses, {"k": k, "n": n})


def _isotropy_witness(omega: AltForm, V: Subspace):
    for i, u in enumerate(V.basis):
        for v in V.basis[i + 1:]:
            if omega.apply([u, v]) != 0:
                return (u, v)
    return None


def _eta_witness(eta: AltForm, V: Subspace):
    for u in V.basis:
        if interior(u, eta).terms:
            return u
    return None


def check_k_presymplectic(omegas, V: Subspace,
                          splitting=None, g: Mat | None = None) -> Verdict:
    m = omegas[0].dim
    k = len(omegas)
    clauses = []
    kernels = [one_kernel(w) for w in omegas]
    r_list = []
    ranks_even = True
    for w in omegas:
        rk = rank(w.matrix())
        ranks_even = ranks_even and rk % 2 == 0
        r_list.append(rk // 2)
    r = sum(r_list)
    if g is None:
        g = Mat.identity(m)
    if splitting is None:
        try:
            splitting = compute_splitting(omegas, V, g)
        except PreconditionError as exc:
            clauses.append(Clause("splitting", str(exc), False))
            return Verdict.from_clauses("k_presymplectic", clauses)
    parts, D = splitting
    d = D.dim
    n = m - r - d
    clauses.append(Clause("dimension", "the dimension equals n + r + d with "
                          "n nonnegative", n >= 0))
    core = intersect_all(kernels, m)
    clauses.append(Clause(
        "common_kernel",
        "D is the part of the shared two-form kernel inside the distribution",
        D == intersect(core, V) and core.dim == d))
    for a in range(k):
        clauses.append(Clause(
            f"component_rank_{a + 1}",
            f"component {a + 1} has rank equal to half the rank of "
            f"two-form {a + 1}", parts[a].dim == r_list[a]))
    total = D
    direct = True
    for part in parts:
        total, step = subspace_sum(total, part)
        direct = direct and step
    clauses.append(Clause(
        "splitting_direct",
        "the components and D decompose the distribution as a direct sum",
        direct and total == V))
    if k > 1:
        for a in range(k):
            others = [kernels[b] for b in range(k) if b != a]
            target = intersect(intersect_all(others, m), V)
            cand, _ = subspace_sum(D, parts[a])
            clauses.append(Clause(
                f"splitting_condition_{a + 1}",
                f"component {a + 1} plus D equals the distribution cut by the "
                "kernels of the other two-forms", cand == target))
    for a, w in enumerate(omegas):
        bad = _isotropy_witness(w, V)
        clauses.append(Clause(
            f"isotropic_{a + 1}",
            f"two-form {a + 1} vanishes on pairs from the distribution",
            bad is None, bad))
    params = {"k": k, "n": n, "r_list": tuple(r_list), "d": d}
    return Verdict.from_clauses("k_presymplectic", clauses, params)


def check_k_cosymplectic(etas, omegas, V: Subspace, n: int | None = None,
                         k: int | None = None) -> Verdict:
    m = omegas[0].dim
    k = len(omegas) if k is None else k
    clauses = [Clause("family_size", "as many one-forms as two-forms",
                      len(etas) == len(omegas) == k)]
    clauses.append(Clause("eta_independent",
                          "the wedge of all one-forms does not vanish",
                          not wedge_all(list(etas)).is_zero()))
    for a, eta in enumerate(etas):
        bad = _eta_witness(eta, V)
        clauses.append(Clause(
            f"eta_vanishes_on_V_{a + 1}",
            f"one-form {a + 1} vanishes on the distribution", bad is None, bad))
    for a, w in enumerate(omegas):
        bad = _isotropy_witness(w, V)
        clauses.append(Clause(
            f"isotropic_{a + 1}",
            f"two-form {a + 1} vanishes on pairs from the distribution",
            bad is None, bad))
    joint = intersect_all(
        [intersect(one_kernel_of_covector(etas[a]), one_kernel(omegas[a]))
         for a in range(len(omegas))], m)
    clauses.append(Clause(
        "joint_kernel_trivial",
        "no nonzero vector lies in every pair's joint kernel",
        joint.dim == 0, joint.basis[0] if joint.basis else None))
    core = intersect_all([one_kernel(w) for w in omegas], m)
    clauses.append(Clause(
        "kernel_rank", "the shared kernel of the two-forms has rank k",
        core.dim == k))
    if n is None:
        n = (m - k) // (k + 1) if (m - k) % (k + 1) == 0 else -1
    clauses.append(Clause("dimension", "the dimension equals n(k+1) + k",
                          m == n * (k + 1) + k and V.dim == n * k))
    return Verdict.from_clauses("k_cosymplectic", clauses, {"k": k, "n": n})


def check_k_precosymplectic(spec: StructureSpec) -> Verdict:
    etas, omegas, V = spec.etas, spec.omegas, spec.V
    m = spec.dim
    k = len(omegas)
    clauses = [Clause("family_size", "as many one-forms as two-forms",
                      len(etas) == k and k > 0)]
    clauses.append(Clause("eta_independent",
                          "the wedge of all one-forms does not vanish",
                          not wedge_all(list(etas)).is_zero()))
    for a, eta in enumerate(etas):
        bad = _eta_witness(eta, V)
        clauses.append(Clause(
            f"eta_vanishes_on_V_{a + 1}",
            f"one-form {a + 1} vanishes on the distribution", bad is None, bad))
    for a, w in enumerate(omegas):
        bad = _isotropy_witness(w, V)
        clauses.append(Clause(
            f"isotropic_{a + 1}",
            f"two-form {a + 1} vanishes on pairs from the distribution",
            bad is None, bad))
    kernels = [one_kernel(w) for w in omegas]
    joint = intersect_all(
        [intersect(one_kernel_of_covector(etas[a]), kernels[a])
         for a in range(k)], m)
    d = spec.params.get("d", joint.dim)
    clauses.append(Clause(
        "joint_kernel_rank",
        "the joint kernel of the pairs has rank d", joint.dim == d))
    core = intersect_all(kernels, m)
    clauses.append(Clause(
        "kernel_rank", "the shared kernel of the two-forms has rank k + d",
        core.dim == k + d))
    r_list = []
    ranks_ok = True
    for w in omegas:
        rk = rank(w.matrix())
        ranks_ok = ranks_ok and rk % 2 == 0
        r_list.append(rk // 2)
    r = sum(r_list)
    n = m - k - r - d
    clauses.append(Clause("dimension",
                          "the dimension equals k + n + r + d with n "
                          "nonnegative", ranks_ok and n >= 0))
    if k > 1 and spec.splitting is None:
        clauses.append(Clause(
            "splitting",
            "a decomposition of the distribution is required when k > 1",
            False))
    elif spec.splitting is not None:
        parts, D = spec.splitting
        clauses.append(Clause(
            "splitting_kernel",
            "D equals the joint kernel of the pairs", D == joint))
        total = D
        direct = True
        for part in parts:
            total, step = subspace_sum(total, part)
            direct = direct and step
        clauses.append(Clause(
            "splitting_direct",
            "the components and D decompose the distribution as a direct sum",
            direct and total == V))
        for a in range(k):
            clauses.append(Clause(
                f"component_rank_{a + 1}",
                f"component {a + 1} has rank equal to half the rank of "
                f"two-form {a + 1}", parts[a].dim == r_list[a]))
            if k > 1:
                others = [kernels[b] for b in range(k) if b != a]
                target = intersect(intersect_all(others, m), V)
                cand, _ = subspace_sum(D, parts[a])
                clauses.append(Clause(
                    f"splitting_condition_{a + 1}",
                    f"component {a + 1} plus D equals the distribution cut by "
                    "the kernels of the other two-forms", cand == target))
    params = {"k": k, "n": n, "r_list": tuple(r_list), "d": d}
    return Verdict.from_clauses("k_precosymplectic", clauses, params)


def check_multisymplectic(big: AltForm) -> Verdict:
    if big.degree < 2:
        raise ValueError("multisymplectic forms have degree at least 2")
    ker = one_kernel(big)
    clauses = [Clause(
        "one_nondegenerate",
        "contraction with the form has trivial kernel", ker.dim == 0,
        ker.basis[0] if ker.basis else None)]
    return Verdict.from_clauses("multisymplectic", clauses,
                                {"degree": big.degree,
                                 "kernel_dim": ker.dim})


def isotropy_type(W: Subspace, big: AltForm, r: int) -> str:
    perp = r_orthogonal(W, big, r)
    if W == perp:
        return f"{r}-Lagrangian"
    if perp.contains_subspace(W):
        return f"{r}-isotropic"
    if W.contains_subspace(perp):
        return f"{r}-coisotropic"
    return "none"


def check_standard_nplectic(big: AltForm) -> Verdict:
    """Decide whether a one-nondegenerate form is a standard model.

    Searches deterministically for a subspace W on which all double
    contractions vanish and tests whether contraction maps W isomorphically
    onto the alternating n-forms of the quotient.
    """
    if big.degree < 3:
        raise ValueError("standard-form test requires degree at least 3 "
                         "(the distinguished subspace is only unique there)")
    n = big.degree - 1
    m = big.dim
    ker = one_kernel(big)
    clauses = [Clause(
        "one_nondegenerate",
        "contraction with the form has trivial kernel", ker.dim == 0,
        ker.basis[0] if ker.basis else None)]
    if ker.dim != 0:
        return Verdict.from_clauses("standard_nplectic", clauses,
                                    {"degree": big.degree})
    W = Subspace.zero(m)
    while True:
        X = Subspace.full(m) if W.dim == 0 else r_orthogonal(W, big, 1)
        grown = False
        for v in X.basis:
            if not W.contains(v):
                W = Subspace.spanned_by(m, list(W.basis) + [v])
                grown = True
                break
        if not grown:
            break
    w = W.dim
    candidates = [c for c in range(m + 1) if c == comb(m - c, n)]
    clauses.append(Clause(
        "isotropic_dimension",
        "the double-contraction-isotropic subspace has the dimension of the "
        "n-forms on the quotient", w in candidates, W))
    iso = False
    if w in candidates:
        from .linalg import complement_basis
        comp = complement_basis(W)
        keyspace = list(_sorted_tuples(len(comp), n))
        cols = []
        for u in W.basis:
            contracted = interior(u, big)
            sub = restrict(contracted, comp) if comp else contracted
            cols.append([sub.terms.get(key, Fraction(0)) for key in keyspace])
        if cols and keyspace:
            Mmat = Mat.from_rows(cols).transpose()
            iso = rank(Mmat) == w and len(keyspace) == w
        else:
            iso = w == 0 and not keyspace
    clauses.append(Clause(
        "sharp_isomorphism",
        "contraction maps the subspace isomorphically onto the n-forms of "
        "the quotient", iso, W))
    return Verdict.from_clauses("standard_nplectic", clauses,
                                {"degree": big.degree, "W": W})


def _sorted_tuples(m, n):
    from itertools import combinations
    return combinations(range(1, m + 1), n)


_SINGLE_OMEGA_KINDS = ("symplectic", "presymplectic")
_ETA_OMEGA_KINDS = ("cosymplectic", "precosymplectic")


def classify(spec: StructureSpec) -> Verdict | dict[str, Verdict]:
    """Run the checker matching spec.kind; for "unknown", try every kind
    the provided data shapes support and return a mapping of verdicts."""
    kind = spec.kind
    if kind == "symplectic":
        return check_symplectic(_single(spec.omegas, "two-form"))
    if kind == "presymplectic":
        return check_presymplectic(_single(spec.omegas, "two-form"))
    if kind == "cosymplectic":
        return check_cosymplectic(_single(spec.etas, "one-form"),
                                  _single(spec.omegas, "two-form"))
    if kind == "precosymplectic":
        return check_precosymplectic(_single(spec.etas, "one-form"),
                                     _single(spec.omegas, "two-form"))
    if kind == "k_symplectic":
        _need_V(spec)
        return check_k_symplectic(spec.omegas, spec.V,
                                  spec.params.get("n"), spec.params.get("k"))
    if kind == "k_presymplectic":
        _need_V(spec)
        return check_k_presymplectic(spec.omegas, spec.V, spec.splitting,
                                     spec.g)
    if kind == "k_cosymplectic":
        _need_V(spec)
        return check_k_cosymplectic(spec.etas, spec.omegas, spec.V,
                                    spec.params.get("n"), spec.params.get("k"))
    if kind == "k_precosymplectic":
        _need_V(spec)
        return check_k_precosymplectic(spec)
    if kind == "multisymplectic":
        if spec.big_form is None:
            raise ValueError("multisymplectic check needs a single form")
        return check_multisymplectic(spec.big_form)
    if kind == "unknown":
        return _classify_unknown(spec)
    raise ValueError(f"unknown structure kind: {spec.kind!r}")


def _single(forms, label):
    if len(forms) != 1:
        raise ValueError(f"expected exactly one {label}")
    return forms[0]


def _need_V(spec):
    if spec.V is None:
        raise ValueError(f"{spec.kind} requires an explicit distribution; "
                         "polarisations are data, never inferred")


def _classify_unknown(spec: StructureSpec) -> dict[str, Verdict]:
    out: dict[str, Verdict] = {}
    if len(spec.omegas) == 1 and not spec.etas:
        out["symplectic"] = check_symplectic(spec.omegas[0])
        out["presymplectic"] = check_presymplectic(spec.omegas[0])
    if len(spec.omegas) == 1 and len(spec.etas) == 1:
        out["cosymplectic"] = check_cosymplectic(spec.etas[0], spec.omegas[0])
        out["precosymplectic"] = check_precosymplectic(spec.etas[0],
                                                       spec.omegas[0])
    if spec.omegas and not spec.etas and spec.V is not None:
        out["k_symplectic"] = check_k_symplectic(spec.omegas, spec.V)
        out["k_presymplectic"] = check_k_presymplectic(
            spec.omegas, spec.V, spec.splitting, spec.g)
    if spec.omegas and spec.etas and spec.V is not None:
        out["k_cosymplectic"] = check_k_cosymplectic(spec.etas, spec.omegas,
                                                     spec.V)
        out["k_precosymplectic"] = check_k_precosymplectic(spec)
    if spec.big_form is not None and spec.big_form.degree >= 2:
        out["multisymplectic"] = check_multisymplectic(spec.big_form)
    return out
