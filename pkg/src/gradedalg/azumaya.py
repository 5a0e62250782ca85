"""The sandwich map ψ(a ⊗ b)(x) = a x b and Azumaya decision procedures,
graded (over a designated graded base field) and ungraded (over the center),
plus the group-ring criterion via the commutator subgroup."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraError, GradedAlgebra, subalgebra, ungraded
from .constructions import FiniteGroup, group_center_and_commutator
from .grade_group import GroupElement
from .linalg import Field, Subspace, kernel_basis, rank, solve, transpose
from .structure import center_ungraded, check_base, commutative_local_blocks, homogeneous_base_basis


def _vec(M) -> list:
    return [x for row in M for x in row]


def _sandwich(A: GradedAlgebra, a, b) -> list[list]:
    """Matrix of x -> a x b."""
    F = A.field
    n = A.dim
    cols = [A.mul(A.mul(a, A.basis_vector(j)), b) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def commutant_dim(A: GradedAlgebra, mats: list[list[list]]) -> int:
    """dim of {T in End_k(A) : T M = M T for all M in mats}."""
    F = A.field
    n = A.dim
    rows = []
    for M in mats:
        for i in range(n):
            for j in range(n):
                # (T M - M T)_{ij} = sum_k T_ik M_kj - M_ik T_kj
                r = [F.zero] * (n * n)
                for k in range(n):
                    if M[k][j] != 0:
                        r[i * n + k] = F.norm(r[i * n + k] + M[k][j])
                    if M[i][k] != 0:
                        r[k * n + j] = F.norm(r[k * n + j] - M[i][k])
                if any(c != 0 for c in r):
                    rows.append(r)
    return n * n - rank(F, rows, n * n)


@dataclass
class PsiMatrix:
    """ψ on the R-basis a_1..a_n: column (i, j) is ψ(a_i ⊗ a_j), row (t, l)
    the coefficient (in R) of a_l -> a_t; ``degrees`` gives each entry's degree."""
    basis: list[list]
    base: list[list]
    entries: list[list[list]]
    degrees: list[list[GroupElement]]
    k_rank: int
    k_domain_dim: int
    k_end_dim: int
    graded: bool

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def bijective(self) -> bool:
        return self.k_rank == self.k_domain_dim == self.k_end_dim


def psi_matrix(A: GradedAlgebra) -> PsiMatrix:
    R = check_base(A)
    F = A.field
    basis = homogeneous_base_basis(A)
    n, h = len(basis), len(R)
    # R-coordinates of x in the basis a_t: solve x = sum_{t,h} c_{t,h} r_h a_t
    cols = [A.mul(r, a) for a in basis for r in R]
    colsT = transpose(cols)

    def r_coords(x):
        c = solve(F, colsT, x)
        if c is None:
            raise AlgebraError("element outside the R-span of the basis")
        return [[c[t * h + s] for s in range(h)] for t in range(n)]

    def r_elem(coeffs):
        return A.combination(coeffs, R)

    entries = [[None] * (n * n) for _ in range(n * n)]
    degrees = [[None] * (n * n) for _ in range(n * n)]
    graded = True
    for i, ai in enumerate(basis):
        for j, aj in enumerate(basis):
            for l, al in enumerate(basis):
                img = A.mul(A.mul(ai, al), aj)
                if any(c != 0 for c in img) and A.degree_of(img) != A.degree_of(ai) + A.degree_of(al) + A.degree_of(aj):
                    graded = False
                coords = r_coords(img)
                for t in range(n):
                    e = r_elem(coords[t])
                    entries[t * n + l][i * n + j] = e
                    if any(c != 0 for c in e):
                        deg = A.degree_of(e)
                        expect = A.degree_of(ai) + A.degree_of(al) + A.degree_of(aj) - A.degree_of(basis[t])
                        if deg != expect:
                            graded = False
                        degrees[t * n + l][i * n + j] = deg
    # ground-field rank of ψ on the k-basis r_h a_i ⊗ a_j of A ⊗_R A^op
    images = [_vec(_sandwich(A, A.mul(r, ai), aj)) for ai in basis for aj in basis for r in R]
    k_rank = rank(F, images, A.dim * A.dim)
    # images must be R-linear and degree-preserving on every component
    LR = [A.left_matrix(r) for r in R]
    end_dim = commutant_dim(A, LR)
    for ai in basis:
        for aj in basis:
            for b in range(A.dim):
                x = A.mul(A.mul(ai, A.basis_vector(b)), aj)
                if any(c != 0 for c in x) and A.degree_of(x) != A.degree_of(ai) + A.degrees[b] + A.degree_of(aj):
                    graded = False
    return PsiMatrix(basis, R, entries, degrees, k_rank, n * n * h, end_dim, graded)


@dataclass
class AzumayaReport:
    faithfully_projective: bool | None
    psi_bijective: bool | None
    psi_graded: bool | None
    certificate: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def verdict(self) -> bool | None:
        parts = [self.faithfully_projective, self.psi_bijective, self.psi_graded]
        if any(p is False for p in parts):
            return False
        if any(p is None for p in parts):
            return None
        return True


def is_graded_azumaya(A: GradedAlgebra) -> AzumayaReport:
    """Over the designated base graded field R: A is graded free over R (hence
    graded faithfully projective) and ψ is a degree-preserving bijection."""
    try:
        check_base(A)
    except AlgebraError as exc:
        return AzumayaReport(None, None, None, {}, f"unsupported base: {exc}")
    try:
        homogeneous_base_basis(A)
    except AlgebraError as exc:
        return AzumayaReport(False, None, None, {}, str(exc))
    P = psi_matrix(A)
    cert = {"rank_over_base": P.n, "base_dim": len(P.base), "k_rank": P.k_rank,
            "domain_dim": P.k_domain_dim, "end_dim": P.k_end_dim}
    return AzumayaReport(True, P.bijective, P.graded, cert,
                         "" if P.bijective else "ψ is not bijective")


# ------------------------------------------------------------ ungraded

@dataclass
class CenterAzumayaReport:
    projective: bool
    psi_bijective: bool
    blocks: list[dict]
    tensor_dim: int
    end_dim: int
    psi_rank: int

    @property
    def verdict(self) -> bool:
        return self.projective and self.psi_bijective


def azumaya_over_center(A: GradedAlgebra) -> CenterAzumayaReport:
    U = ungraded(A)
    F = U.field
    n = U.dim
    Z = center_ungraded(U)
    Zalg = subalgebra(U, Z.basis, graded=False)
    blocks = []
    projective = True
    for e_c in commutative_local_blocks(Zalg):
        e = U.combination(e_c, Z.basis)
        Ai = Subspace(F, n, [U.mul(e, U.basis_vector(i)) for i in range(n)])
        Zi_vecs = [U.mul(e, z) for z in Z.basis]
        Zi = Subspace(F, n, Zi_vecs)
        # maximal ideal of the local ring Z_i = its nilradical
        mi = _local_max_ideal(U, Zi, e)
        residue = Zi.dim - mi.dim
        mA = Subspace(F, n, [U.mul(x, y) for x in mi.basis for y in Ai.basis])
        top = Ai.dim - mA.dim
        gens, rem = divmod(top, residue)
        free = rem == 0 and gens * Zi.dim == Ai.dim
        projective = projective and free
        blocks.append({"block_dim": Ai.dim, "center_dim": Zi.dim, "residue_dim": residue,
                       "generators": gens, "free": free})
    # A ⊗_Z A^op = (A ⊗_k A^op) / (a z ⊗ b - a ⊗ z b)
    rels = []
    for z in Z.basis:
        for a in range(n):
            az = U.mul(U.basis_vector(a), z)
            for b in range(n):
                zb = U.mul(z, U.basis_vector(b))
                v = [F.zero] * (n * n)
                for k, c in enumerate(az):
                    if c != 0:
                        v[k * n + b] = F.norm(v[k * n + b] + c)
                for k, c in enumerate(zb):
                    if c != 0:
                        v[a * n + k] = F.norm(v[a * n + k] - c)
                if any(c != 0 for c in v):
                    rels.append(v)
    tensor_dim = n * n - rank(F, rels, n * n)
    images = [_vec(_sandwich(U, U.basis_vector(a), U.basis_vector(b))) for a in range(n) for b in range(n)]
    psi_rank = rank(F, images, n * n)
    end_dim = commutant_dim(U, [U.left_matrix(z) for z in Z.basis])
    bij = psi_rank == tensor_dim == end_dim
    return CenterAzumayaReport(projective, bij, blocks, tensor_dim, end_dim, psi_rank)


def _local_max_ideal(U: GradedAlgebra, Zi: Subspace, e) -> Subspace:
    """Nilradical of the local commutative algebra Z_i = e Z (unit e)."""
    F = U.field
    if F.characteristic == 0:
        # trace form of Z_i acting on itself
        basis = Zi.basis
        m = len(basis)
        coords = lambda x: Zi.coordinates(x)
        mult = [[coords(U.mul(x, y)) for y in basis] for x in basis]
        tr = [sum((mult[i][j][j] for j in range(m)), F.zero) for i in range(m)]
        gram = [[F.norm(sum((c * tr[k] for k, c in enumerate(mult[i][j])), F.zero)) for j in range(m)]
                for i in range(m)]
        ker = kernel_basis(F, gram, m)
        return Subspace(F, U.dim, [U.combination(c, basis) for c in ker])
    p = F.p
    q = p
    while q < Zi.dim:
        q *= p
    images = []
    for x in Zi.basis:
        y = list(e)
        base, k = list(x), q
        while k:
            if k & 1:
                y = U.mul(y, base)
            base = U.mul(base, base)
            k >>= 1
        images.append(y)
    # kernel of the Frobenius power map on Z_i
    coords = [Zi.coordinates(y) for y in images]
    ker = kernel_basis(F, transpose(coords), len(Zi.basis))
    return Subspace(F, U.dim, [U.combination(c, Zi.basis) for c in ker])


# ------------------------------------------------------------ group rings

@dataclass
class GroupRingCriterion:
    group_order: int
    center_order: int
    center_index: int
    commutator_order: int
    characteristic: int

    @property
    def verdict(self) -> bool:
        return self.characteristic == 0 or self.commutator_order % self.characteristic != 0


def demeyer_janusz(F: Field, G: FiniteGroup) -> GroupRingCriterion:
    """k[G] over a field k is Azumaya iff |[G, G]| is invertible in k."""
    cc = group_center_and_commutator(G)
    return GroupRingCriterion(G.order, cc.center_order, G.order // cc.center_order,
                              cc.commutator_order, F.characteristic)
