"""K₀ engine: graded K₀ of graded division rings (free on shift cosets),
ungraded K₀ of finite-dimensional algebras (free on simple blocks), Dade's
route for strongly graded algebras, the map induced by the base inclusion,
kernel/cokernel torsion reports and the D-functor axiom checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AlgebraError, GradedAlgebra, degree_zero_part, matrix_shift, subalgebra
from .constructions import from_provenance
from .grade_group import CosetSpace, GroupElement, Subgroup, coset_space
from .linalg import Subspace, integer_solve, smith_normal_form, solve, transpose
from .modules import gamma_star_membership
from .structure import (DEFAULT_MAX_ENUM, Decision, base_algebra, check_base, commutative_local_blocks,
                        count_simple_blocks, homogeneous_base_basis, invertible_support,
                        is_graded_division_ring, jacobson_radical)


class UnsupportedRouteError(AlgebraError):
    """No decidable graded-projective classification for this algebra shape."""


class HypothesisError(AlgebraError):
    """A result's hypotheses fail for this input."""


@dataclass
class K0Group:
    rank: int
    labels: list[str]
    torsion: list[int] = field(default_factory=list)

    def __post_init__(self):
        if len(self.labels) != self.rank or len(set(self.labels)) != self.rank:
            raise ValueError("K0 labels must be distinct, one per generator")

    def to_json(self) -> dict:
        return {"rank": self.rank, "generators": list(self.labels), "torsion": list(self.torsion)}


@dataclass
class K0Map:
    domain: K0Group
    codomain: K0Group
    matrix: list[list[int]]  # codomain.rank x domain.rank; column c = image of generator c
    route: str = ""

    def __post_init__(self):
        if len(self.matrix) != self.codomain.rank or any(len(r) != self.domain.rank for r in self.matrix):
            raise ValueError("K0 map matrix shape does not match the ranks")

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "codomain": self.codomain.to_json(),
                "matrix": self.matrix, "route": self.route}


# ---------------------------------------------------------------- groups

def _unit_subgroup(D: GradedAlgebra, max_enum: int) -> Subgroup:
    inv = invertible_support(D, max_enum)
    if inv.undetermined:
        raise UnsupportedRouteError("invertible support undetermined")
    return Subgroup(D.group, sorted(inv.elements))


def _cosets(D: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> CosetSpace:
    if is_graded_division_ring(D, max_enum).verdict is not True:
        raise UnsupportedRouteError("not (decidably) a graded division ring")
    return coset_space(D.group, _unit_subgroup(D, max_enum))


def _coset_labels(cs: CosetSpace) -> list[str]:
    return [f"{r}+Γ*" for r in cs]


def k0gr_graded_division(D: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> K0Group:
    """Free abelian group on the cosets Γ / Γ_D^*."""
    cs = _cosets(D, max_enum)
    return K0Group(len(cs), _coset_labels(cs))


def k0_ungraded(A: GradedAlgebra) -> K0Group:
    """Free abelian group on the simple blocks of A / J(A)."""
    r = count_simple_blocks(A)
    return K0Group(r, [f"block{i}" for i in range(r)])


def is_strongly_graded(A: GradedAlgebra) -> Decision:
    """1 ∈ A_γ A_{-γ} for every γ in the whole grade group (so an infinite
    group never qualifies for a finite-dimensional algebra)."""
    G = A.group
    if not G.is_finite:
        # a finite-dimensional algebra has finite support; find a degree outside it
        step = G.gens()[0]
        g = step
        while g in A.components:
            g = g + step
        return Decision(False, {"kind": "missing_degree", "degree": list(g.coords)},
                        f"A_{g} = 0 in an infinite grade group")
    F = A.field
    witnesses = []
    for g in G.elements():
        pairs = [(i, j) for i in A.components.get(g, []) for j in A.components.get(-g, [])]
        prods = [A.mul(A.basis_vector(i), A.basis_vector(j)) for i, j in pairs]
        coeffs = solve(F, transpose(prods), A.unit) if prods else None
        if coeffs is None:
            return Decision(False, {"kind": "missing_degree", "degree": list(g.coords)},
                            f"1 is not in A_{g} A_{-g}")
        # 1 = sum c * b_i b_j with deg b_i = γ, deg b_j = -γ
        witnesses.append({"degree": list(g.coords),
                          "terms": [[i, j, *F.pair(c)] for (i, j), c in zip(pairs, coeffs) if c != 0]})
    return Decision(True, {"kind": "unit_decompositions", "witnesses": witnesses}, "1 ∈ A_γ A_{-γ} for every γ")


def k0gr_via_dade(A: GradedAlgebra) -> K0Group:
    """K₀^gr(A) ≅ K₀(A_0) for strongly graded A."""
    s = is_strongly_graded(A)
    if s.verdict is not True:
        raise HypothesisError(f"not strongly graded: {s.reason}")
    k = k0_ungraded(degree_zero_part(A))
    return K0Group(k.rank, [f"A0-{l}" for l in k.labels])


@dataclass
class MatrixShape:
    """A = M_n(D)(e) for a graded division ring D."""
    division: GradedAlgebra
    shifts: list[GroupElement]


def matrix_shape(A: GradedAlgebra) -> MatrixShape | None:
    prov = A.provenance
    if not prov or prov.get("kind") != "matrix_shift":
        return None
    D = from_provenance(A.field, prov["of"])
    shifts = [D.group(s) for s in prov["shifts"]]
    if not matrix_shift(D, shifts).same_table(A):
        raise AlgebraError("provenance does not reproduce the structure constants")
    return MatrixShape(D, shifts)


def k0gr(A: GradedAlgebra, route: str | None = None, max_enum: int = DEFAULT_MAX_ENUM) -> K0Group:
    """Graded K₀ by the requested (or first applicable) route:
    ``division``, ``matrix`` (Morita transport to D) or ``dade``."""
    route = route or _auto_route(A, max_enum)
    if route == "division":
        return k0gr_graded_division(A, max_enum)
    if route == "matrix":
        shape = matrix_shape(A)
        if shape is None:
            raise UnsupportedRouteError("no matrix-over-division provenance")
        return k0gr_graded_division(shape.division, max_enum)
    if route == "dade":
        return k0gr_via_dade(A)
    raise UnsupportedRouteError(f"unknown route {route!r}")


def _auto_route(A: GradedAlgebra, max_enum: int) -> str:
    if matrix_shape(A) is not None:
        return "matrix"
    if is_graded_division_ring(A, max_enum).verdict is True:
        return "division"
    if is_strongly_graded(A).verdict is True:
        return "dade"
    raise UnsupportedRouteError("no supported K₀ route: not division, matrix-over-division or strongly graded")


# ------------------------------------------------------------------ maps

def _shift_classes(A: GradedAlgebra, route: str, max_enum: int):
    """For coset-presented shapes: (cosets, function γ -> image vector of [A(γ)])."""
    if route == "division":
        cs = _cosets(A, max_enum)
        return cs, lambda g: _unit_vec(len(cs), cs.position(g))
    shape = matrix_shape(A)
    cs = _cosets(shape.division, max_enum)

    def image(g):
        v = [0] * len(cs)
        for e in shape.shifts:  # A(γ) ↦ D^n(-e)(γ) = ⊕ D(γ - e_i)
            v[cs.position(g - e)] += 1
        return v

    return cs, image


def _unit_vec(n, i):
    v = [0] * n
    v[i] = 1
    return v


def k0gr_map(A: GradedAlgebra, route: str | None = None, max_enum: int = DEFAULT_MAX_ENUM) -> K0Map:
    """K₀^gr(R) -> K₀^gr(A) induced by the designated base R: [R(γ)] ↦ [A(γ)]."""
    R = base_algebra(A)
    csR = _cosets(R, max_enum)
    dom = K0Group(len(csR), _coset_labels(csR))
    route = route or _auto_route(A, max_enum)
    if route in ("division", "matrix"):
        if route == "matrix" and matrix_shape(A) is None:
            raise UnsupportedRouteError("no matrix-over-division provenance")
        cs, image = _shift_classes(A, route, max_enum)
        cod = K0Group(len(cs), _coset_labels(cs))
        cols = [image(g) for g in csR]
    elif route == "dade":
        cod = k0gr_via_dade(A)
        cols = [_dade_image(A, g) for g in csR]
    else:
        raise UnsupportedRouteError(f"unknown route {route!r}")
    matrix = [[cols[c][r] for c in range(dom.rank)] for r in range(cod.rank)]
    return K0Map(dom, cod, matrix, route)


def _dade_image(A: GradedAlgebra, g: GroupElement) -> list[int]:
    """[A(γ)] ↦ [A(γ)_0] = [A_γ] in K₀(A_0); needs A_0 commutative semisimple,
    where A_γ ≅ ⊕ B_j^{m_j} over the field blocks B_j of A_0."""
    A0 = degree_zero_part(A)
    if not A0.is_commutative() or jacobson_radical(A0).dim:
        raise UnsupportedRouteError("Dade-route maps need a commutative semisimple degree-zero part")
    idx0 = A.components.get(A.group.zero, [])
    out = []
    for e0 in commutative_local_blocks(A0):
        e = A.combination(e0, [A.basis_vector(i) for i in idx0])
        block_dim = Subspace(A.field, A.dim, [A.mul(e, A.basis_vector(i)) for i in idx0]).dim
        comp = Subspace(A.field, A.dim, [A.mul(e, A.basis_vector(i)) for i in A.components.get(g, [])]).dim
        if comp % block_dim:
            raise AlgebraError("component is not free over its degree-zero block")
        out.append(comp // block_dim)
    return out


# --------------------------------------------------------------- torsion

@dataclass
class TorsionReport:
    kernel_rank: int
    kernel_invariant_factors: list[int]
    cokernel_invariant_factors: list[int]
    cokernel_free_rank: int
    image_invariant_factors: list[int]
    n: int
    is_n2_torsion: bool
    localized_iso: bool

    def to_json(self) -> dict:
        return {"kernel": {"free_rank": self.kernel_rank, "invariant_factors": self.kernel_invariant_factors},
                "cokernel": {"free_rank": self.cokernel_free_rank,
                             "invariant_factors": self.cokernel_invariant_factors},
                "smith_diagonal": self.image_invariant_factors, "n": self.n,
                "is_n2_torsion": self.is_n2_torsion, "localized_iso": self.localized_iso}


def _smooth(d: int, n: int) -> bool:
    d = abs(d)
    while d > 1:
        g = math.gcd(d, n)
        if g == 1:
            return False
        d //= g
    return True


def torsion_report(m: K0Map, n: int) -> TorsionReport:
    dom, cod = m.domain.rank, m.codomain.rank
    if dom and cod:
        _, D, _ = smith_normal_form(m.matrix, dom)
        diag = [D[i][i] for i in range(min(dom, cod)) if D[i][i]]
    else:
        diag = []
    r = len(diag)
    ker_rank = dom - r
    coker_free = cod - r
    coker_tors = [d for d in diag if d > 1]
    n2 = ker_rank == 0 and coker_free == 0 and all((n * n) % d == 0 for d in coker_tors)
    loc = dom == cod == r and all(_smooth(d, n) for d in diag)
    return TorsionReport(ker_rank, [], coker_tors, coker_free, diag, n, n2, loc)


@dataclass
class HypothesisReport:
    graded_azumaya: bool | None
    free_rank: int | None
    basis_degrees: list[GroupElement]
    degrees_in_gamma_star: bool | None
    reason: str = ""

    @property
    def holds(self) -> bool | None:
        parts = [self.graded_azumaya, self.degrees_in_gamma_star]
        if any(p is False for p in parts):
            return False
        if any(p is None for p in parts):
            return None
        return True


def torsion_hypotheses(A: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> HypothesisReport:
    """Graded Azumaya over R, graded free of rank n with homogeneous basis
    degrees (d) such that R^n(d) ≅ R^n."""
    from .azumaya import is_graded_azumaya

    az = is_graded_azumaya(A).verdict
    basis = homogeneous_base_basis(A)
    degs = [A.degree_of(b) for b in basis]
    R = base_algebra(A)
    gs = gamma_star_membership(R, degs, max_enum).verdict
    reason = ""
    if gs is False:
        reason = f"basis degrees {degs} are not in Γ*_(M_{len(degs)}(R))"
    if az is False:
        reason = "not graded Azumaya over the base"
    return HypothesisReport(az, len(basis), degs, gs, reason)


# ------------------------------------------------------------- D-functor

def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def _shift_action(cs: CosetSpace, deltas: Sequence[GroupElement]) -> list[list[int]]:
    """Matrix of X ↦ X^k(-d) = ⊕ X(-δ_i) on the free group on cosets."""
    n = len(cs)
    M = [[0] * n for _ in range(n)]
    for c, g in enumerate(cs):
        for dlt in deltas:
            M[cs.position(g - dlt)][c] += 1
    return M


def _in_image(mu: list[list[int]], v: list[int]) -> bool:
    if not any(v):
        return True
    if not mu or not mu[0]:
        return False
    return integer_solve(mu, v) is not None


@dataclass
class DFunctorReport:
    k: int
    shifts: list[GroupElement]
    hypothesis: bool | None
    axioms: dict
    composite: list[list[int]]

    @property
    def ok(self) -> bool:
        return self.hypothesis is True and all(self.axioms.values())

    def to_json(self) -> dict:
        return {"k": self.k, "shifts": [list(s.coords) for s in self.shifts], "hypothesis": self.hypothesis,
                "axioms": dict(self.axioms), "composite": self.composite}


def dfunctor_axiom_suite(A: GradedAlgebra, k: int, d: Sequence | None = None,
                         max_enum: int = DEFAULT_MAX_ENUM) -> DFunctorReport:
    """Check the three D-functor axioms for F = CK₀ and F = ZK₀ on the computed
    presentations.  K₀^gr(M_k(A)(d)) is identified with K₀^gr(A) through the
    Morita functor Y ↦ A^k(-d) ⊗ Y, in which coordinates X ↦ M_k(A)(d) ⊗ X
    becomes X ↦ X^k(-d)."""
    R = base_algebra(A)
    d = [A.group.zero] * k if d is None else [A.group(x.coords) if isinstance(x, GroupElement) else A.group(x) for x in d]
    if len(d) != k:
        raise AlgebraError("shift tuple length must equal k")
    hyp = gamma_star_membership(R, d, max_enum).verdict
    mu_A = k0gr_map(A, max_enum=max_enum)
    route = mu_A.route
    if route not in ("division", "matrix"):
        raise UnsupportedRouteError("D-functor checks need a shift-class K₀ presentation")
    csR = _cosets(R, max_enum)
    csA, _ = _shift_classes(A, route, max_enum)
    S_R = _shift_action(csR, d)
    S_A = _shift_action(csA, d)
    mu = mu_A.matrix
    mu_M = _matmul(mu, S_R)
    nA, nR = len(csA), len(csR)
    kI = [[k if i == j else 0 for j in range(nA)] for i in range(nA)]
    axioms = {}
    # (1) F(R) trivial: the base map of R over itself is the identity
    mu_R = k0gr_map(R.with_base([R.basis_vector(i) for i in range(R.dim)]), max_enum=max_enum)
    ident = [[int(i == j) for j in range(nR)] for i in range(nR)]
    axioms["1_CK(R)=0"] = mu_R.matrix == ident
    axioms["1_ZK(R)=0"] = mu_R.matrix == ident
    # naturality: μ_M = S_A μ_A (φ on K₀ commutes with the base maps)
    axioms["mu_M_naturality"] = _matmul(S_A, mu) == mu_M
    # (2) composite K₀(A) → K₀(M) → K₀(A) is S_A; on CK it must be multiplication by k
    diff = [[S_A[i][j] - kI[i][j] for j in range(nA)] for i in range(nA)]
    axioms["2_CK_composite_eta_k"] = all(_in_image(mu, [diff[i][j] for i in range(nA)]) for j in range(nA))
    # on ZK: the composite is S_R restricted to ker μ_A; must equal k
    kerA = _kernel_basis_int(mu, nR)
    axioms["2_ZK_composite_eta_k"] = all(
        [sum(S_R[i][j] * v[j] for j in range(nR)) for i in range(nR)] == [k * x for x in v] for v in kerA)
    # ρ well defined: im μ_M ⊆ im μ_A (CK) and S_R(ker μ_M) ⊆ ker μ_A (ZK)
    axioms["rho_CK_well_defined"] = all(_in_image(mu, [mu_M[i][j] for i in range(nA)]) for j in range(nR))
    kerM = _kernel_basis_int(mu_M, nR)
    axioms["rho_ZK_well_defined"] = all(
        not any(sum(mu[i][t] * sum(S_R[t][j] * v[j] for j in range(nR)) for t in range(nR)) for i in range(nA))
        for v in kerM)
    # (3) ker ρ is k-torsion: CK: k·im μ_A ⊆ im μ_M ; ZK: S_R injective on ker μ_M
    axioms["3_CK_ker_rho_k_torsion"] = all(_in_image(mu_M, [k * mu[i][j] for i in range(nA)]) for j in range(nR))
    imgs = [[sum(S_R[i][j] * v[j] for j in range(nR)) for i in range(nR)] for v in kerM]
    axioms["3_ZK_ker_rho_k_torsion"] = _int_rank(imgs, nR) == len(kerM)
    composite = S_A
    return DFunctorReport(k, d, hyp, axioms, composite)


def eta_law(A: GradedAlgebra, d1: Sequence, d2: Sequence, max_enum: int = DEFAULT_MAX_ENUM) -> bool:
    """Composites for k and k' multiply to the composite for k·k' (shift tuple
    of all pairwise sums), which is multiplication by k·k'."""
    r1 = dfunctor_axiom_suite(A, len(d1), d1, max_enum)
    r2 = dfunctor_axiom_suite(A, len(d2), d2, max_enum)
    d12 = [a + b for a in r1.shifts for b in r2.shifts]
    r12 = dfunctor_axiom_suite(A, len(d12), d12, max_enum)
    kk = len(d12)
    n = len(r12.composite)
    scalar = [[kk if i == j else 0 for j in range(n)] for i in range(n)]
    return _matmul(r1.composite, r2.composite) == r12.composite == scalar


def _kernel_basis_int(m: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of the integer kernel of m (columns of V beyond the rank)."""
    if ncols == 0:
        return []
    if not m:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    _, D, V = smith_normal_form(m, ncols)
    r = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    return [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def _int_rank(rows: list[list[int]], ncols: int) -> int:
    if not rows:
        return 0
    _, D, _ = smith_normal_form(rows, ncols)
    return sum(1 for i in range(min(len(D), ncols)) if D[i][i])
