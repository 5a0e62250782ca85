"""Structural predicates for graded algebras: supports, ideals, center,
radical, idempotent splitting, graded simplicity and division.

Predicates that can fail to decide return a :class:`Decision` whose
``verdict`` is ``True``, ``False`` or ``None`` (undetermined) together with a
re-checkable certificate.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import AlgebraError, GradedAlgebra, quotient_algebra, subalgebra, ungraded
from .grade_group import GroupElement, Subgroup
from .linalg import PrimeField, Subspace, kernel_basis, rank, solve, transpose
from .poly import Polynomial, factor, xgcd

DEFAULT_MAX_ENUM = 200_000


@dataclass
class Decision:
    verdict: bool | None
    certificate: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def determined(self) -> bool:
        return self.verdict is not None

    def __bool__(self):
        if self.verdict is None:
            raise ValueError(f"undetermined: {self.reason}")
        return self.verdict


class GradedSubspace(Subspace):
    """A subspace of an algebra spanned by homogeneous vectors."""

    def __init__(self, A: GradedAlgebra, vectors: Iterable[Sequence] = ()):
        super().__init__(A.field, A.dim, vectors)
        self.algebra = A

    @classmethod
    def of(cls, A: GradedAlgebra, S: Subspace) -> "GradedSubspace":
        return cls(A, S.basis)

    def is_graded(self) -> bool:
        return all(self.algebra.is_homogeneous(v) for v in self.basis)

    def by_degree(self) -> dict[GroupElement, list[list]]:
        out: dict = {}
        for v in self.basis:
            d = self.algebra.degree_of(v)
            if d is None:
                raise AlgebraError("subspace basis is not homogeneous")
            out.setdefault(d, []).append(v)
        return dict(sorted(out.items(), key=lambda kv: kv[0].coords))

    def degrees(self) -> list[GroupElement]:
        return list(self.by_degree())


# ------------------------------------------------------------ support

def support(A: GradedAlgebra) -> set[GroupElement]:
    return set(A.components)


def is_invertible(A: GradedAlgebra, x: Sequence) -> bool:
    return rank(A.field, A.left_matrix(x), A.dim) == A.dim


def inverse_element(A: GradedAlgebra, x: Sequence):
    """Two-sided inverse of x, or ``None``."""
    y = solve(A.field, A.left_matrix(x), A.unit)
    if y is None or A.mul(y, x) != A.unit:
        return None
    return y


def projective_points(F: PrimeField, m: int):
    """Nonzero vectors of F^m with first nonzero coordinate 1."""
    p = F.p
    for lead in range(m):
        for tail in itertools.product(range(p), repeat=m - lead - 1):
            yield (0,) * lead + (1,) + tail


def _grid_points(m: int, bound: int):
    """Integer points of {0..bound}^m ordered by max-norm, origin skipped."""
    for r in range(1, bound + 1):
        for pt in itertools.product(range(r + 1), repeat=m):
            if max(pt) == r:
                yield pt


@dataclass
class InvertibleSupport:
    elements: set
    witnesses: dict
    undetermined: set
    empty_certified: set

    @property
    def determined(self) -> bool:
        return not self.undetermined


def invertible_support(A: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> InvertibleSupport:
    """Degrees carrying an invertible homogeneous element."""
    F = A.field
    found, witnesses, undet, empty = set(), {}, set(), set()
    for g, idx in A.components.items():
        m = len(idx)
        # cheap witnesses first: basis elements
        w = next((A.basis_vector(i) for i in idx if is_invertible(A, A.basis_vector(i))), None)
        if w is None and m >= 2:
            if F.is_finite:
                budget = max_enum
                for pt in projective_points(F, m):
                    budget -= 1
                    if budget < 0:
                        break
                    v = A.embed_component(g, pt)
                    if is_invertible(A, v):
                        w = v
                        break
                if w is None:
                    if budget >= 0:
                        empty.add(g)
                    else:
                        undet.add(g)
                    continue
            else:
                # det L_x has degree dim A in m variables; a full grid of side dim+1 decides it
                bound = A.dim
                total = (bound + 1) ** m
                if total > max_enum:
                    bound_try = max(1, int(max_enum ** (1 / m)) - 1)
                    pts = _grid_points(m, bound_try)
                else:
                    pts = _grid_points(m, bound)
                for pt in pts:
                    v = A.embed_component(g, pt)
                    if is_invertible(A, v):
                        w = v
                        break
                if w is None:
                    if total <= max_enum:
                        empty.add(g)
                    else:
                        undet.add(g)
                    continue
        if w is not None:
            found.add(g)
            witnesses[g] = w
        else:
            empty.add(g)
    return InvertibleSupport(found, witnesses, undet, empty)


# ------------------------------------------------------------ ideals

def _stack_mult(A: GradedAlgebra, left=True, right=True):
    mats = []
    if left:
        mats += A.left_matrices
    if right:
        mats += A.right_matrices
    return mats


def _apply_all(A: GradedAlgebra, mats, vectors):
    """All products M v for M in mats, v in vectors."""
    F = A.field
    if not vectors:
        return []
    if isinstance(F, PrimeField) and F.p < 3_000_000:
        key = ("_np_stack", len(mats))
        cache = A.__dict__.setdefault("_np_cache", {})
        if key not in cache:
            cache[key] = np.array(mats, dtype=np.int64).reshape(len(mats) * A.dim, A.dim)
        big = cache[key]
        V = np.array(vectors, dtype=np.int64).T
        out = (big @ V) % F.p
        return [list(map(int, col)) for blk in np.split(out, len(mats), axis=0) for col in blk.T]
    out = []
    for M in mats:
        for v in vectors:
            out.append([F.norm(sum((a * b for a, b in zip(row, v) if a != 0 and b != 0), F.zero)) for row in M])
    return out


def ideal_closure(A: GradedAlgebra, gens: Sequence[Sequence], *, left=True, right=True) -> Subspace:
    """Smallest subspace containing ``gens`` closed under the chosen
    multiplications by basis elements (two-sided ideal by default)."""
    S = Subspace(A.field, A.dim, gens)
    mats = _stack_mult(A, left, right)
    frontier = S.basis
    while frontier:
        new = _apply_all(A, mats, frontier)
        T = S.add(new)
        if T.dim == S.dim:
            break
        old = S
        S = T
        frontier = [v for v in S.basis if v not in old]
        if not frontier:
            frontier = S.basis
    return S


def graded_ideal_closure(A: GradedAlgebra, gens: Sequence[Sequence]) -> GradedSubspace:
    for g in gens:
        if not A.is_homogeneous(g):
            raise AlgebraError(f"generator {g} is not homogeneous")
    return GradedSubspace.of(A, ideal_closure(A, gens))


def is_ideal(A: GradedAlgebra, S: Subspace) -> bool:
    return all(v in S for v in _apply_all(A, _stack_mult(A), S.basis))


def products_span(A: GradedAlgebra, S: Subspace, T: Subspace) -> Subspace:
    return Subspace(A.field, A.dim, [A.mul(x, y) for x in S.basis for y in T.basis])


def is_nilpotent_subspace(A: GradedAlgebra, S: Subspace) -> bool:
    P = S
    for _ in range(A.dim + 1):
        if P.dim == 0:
            return True
        Q = products_span(A, P, S)
        if Q.dim == P.dim and Q == P:
            return False
        P = Q
    return P.dim == 0


# ------------------------------------------------------------ center

def center(A: GradedAlgebra) -> GradedSubspace:
    """Center, computed component by component (it is graded for abelian Γ)."""
    F = A.field
    vecs = []
    for g, idx in A.components.items():
        rows = []
        for i in range(A.dim):
            L, R = A.left_matrices[i], A.right_matrices[i]
            for k in range(A.dim):
                rows.append([F.norm(L[k][j] - R[k][j]) for j in idx])
        for c in kernel_basis(F, rows, len(idx)):
            vecs.append(A.embed_component(g, c))
    return GradedSubspace(A, vecs)


def center_ungraded(A: GradedAlgebra) -> Subspace:
    F = A.field
    rows = []
    for i in range(A.dim):
        L, R = A.left_matrices[i], A.right_matrices[i]
        for k in range(A.dim):
            rows.append([F.norm(L[k][j] - R[k][j]) for j in range(A.dim)])
    return Subspace(F, A.dim, kernel_basis(F, rows, A.dim))


# ------------------------------------------------------------ radical

def _trace(M) -> object:
    return sum((M[i][i] for i in range(len(M))), 0)


def jacobson_radical(A: GradedAlgebra) -> Subspace:
    F = A.field
    n = A.dim
    if F.characteristic == 0:
        trL = [_trace(L) for L in A.left_matrices]
        gram = [[F.norm(sum((c * trL[k] for k, c in A.table.get((i, j), {}).items()), F.zero))
                 for j in range(n)] for i in range(n)]
        return Subspace(F, n, kernel_basis(F, transpose(gram), n))
    if A.is_commutative():
        return nilradical_commutative(A)
    return _radical_char_p(A)


def _radical_char_p(A: GradedAlgebra) -> Subspace:
    """Cohen-Ivanyos-Wales iteration on the regular representation:
    I_i = {a in I_{i-1} : g_i(ab) = 0 for all b}, g_i(a) = Tr(lift(a)^{p^i}) / p^i mod p."""
    F = A.field
    p = F.p
    n = A.dim
    ell = 0
    while p ** (ell + 1) <= n:
        ell += 1
    L = np.array(A.left_matrices, dtype=np.int64)  # L[i] = left mult by b_i
    basis = [A.basis_vector(i) for i in range(n)]
    for i in range(ell + 1):
        q = p ** i
        mod = p ** (i + 1)
        if not basis:
            break
        G = []
        for v in basis:
            row = []
            vv = np.array(v, dtype=np.int64)
            Lv = np.tensordot(vv, L, axes=1) % p
            for j in range(n):
                M = (Lv @ L[j]) % p  # left mult by v * b_j
                P = _matpow_mod(M, q, mod)
                t = int(np.trace(P)) % mod
                if t % q:
                    raise ArithmeticError("trace not divisible; radical iteration invariant broken")
                row.append((t // q) % p)
            G.append(row)
        coeffs = kernel_basis(F, transpose(G), len(basis))
        basis = [A.combination(c, basis) for c in coeffs]
        basis = Subspace(F, n, basis).basis
    return Subspace(F, n, basis)


def _matpow_mod(M, e: int, mod: int):
    n = M.shape[0]
    R = np.eye(n, dtype=np.int64)
    B = M % mod
    while e:
        if e & 1:
            R = (R @ B) % mod
        B = (B @ B) % mod
        e >>= 1
    return R


def power_map(A: GradedAlgebra, x: Sequence, e: int) -> list:
    out = list(A.unit)
    base = list(x)
    while e:
        if e & 1:
            out = A.mul(out, base)
        base = A.mul(base, base)
        e >>= 1
    return out


def nilradical_commutative(A: GradedAlgebra) -> Subspace:
    """For commutative A: char p uses the linear map x -> x^(p^m), p^m >= dim;
    char 0 uses the trace form."""
    F = A.field
    n = A.dim
    if F.characteristic == 0:
        return jacobson_radical(A)
    p = F.p
    e = p
    while e < n:
        e *= p
    cols = [power_map(A, A.basis_vector(i), e) for i in range(n)]
    return Subspace(F, n, kernel_basis(F, transpose(cols), n))


def graded_radical_part(A: GradedAlgebra) -> GradedSubspace:
    """Largest graded ideal inside J(A): the sum of the J(A) ∩ A_γ."""
    J = jacobson_radical(A)
    vecs = []
    for g, idx in A.components.items():
        vecs += J.restrict_to_coordinates(idx).basis
    return GradedSubspace(A, vecs)


# --------------------------------------------- commutative idempotent splitting

def minimal_polynomial(A: GradedAlgebra, z: Sequence, one: Sequence | None = None) -> Polynomial:
    """Minimal polynomial of z inside the (block) algebra with unit ``one``."""
    F = A.field
    one = list(one if one is not None else A.unit)
    powers = [one]
    S = Subspace(F, A.dim, [one])
    while True:
        nxt = A.mul(powers[-1], z)
        if nxt in S:
            c = solve(F, transpose(powers), nxt)
            return Polynomial(F, tuple(F.norm(-a) for a in c) + (F.one,))
        powers.append(nxt)
        S = S.add([nxt])


def evaluate(A: GradedAlgebra, f: Polynomial, z: Sequence, one: Sequence | None = None) -> list:
    one = list(one if one is not None else A.unit)
    acc = A.zero()
    for c in reversed(f.coeffs):
        acc = A.add(A.mul(acc, z), A.scale(c, one))
    return acc


def _split_block(A: GradedAlgebra, e: Sequence, z: Sequence) -> list[list]:
    """Split block idempotent e along the primary factors of z's minimal polynomial."""
    z = A.mul(e, z)
    mp = minimal_polynomial(A, z, e)
    _, facs = factor(mp)
    if len(facs) <= 1:
        return [list(e)]
    out = []
    for f, mult in facs:
        fe = f ** mult
        rest = mp // fe
        g, s, t = xgcd(fe, rest)
        out.append(A.mul(e, evaluate(A, t * rest, z, e)))
    return out


def _berlekamp_subalgebra(C: GradedAlgebra) -> list[list]:
    F = C.field
    n = C.dim
    cols = [power_map(C, C.basis_vector(i), F.p) for i in range(n)]
    M = [[F.norm(cols[j][i] - (1 if i == j else 0)) for j in range(n)] for i in range(n)]
    return kernel_basis(F, M, n)


def _primitive_element(C: GradedAlgebra):
    F = C.field
    n = C.dim
    for t in range(1, 4 * n * n + 8):
        z = [F(t ** i) for i in range(n)]
        mp = minimal_polynomial(C, z)
        if mp.degree == n:
            return z, mp
    return None, None


def primitive_idempotents(C: GradedAlgebra) -> list[list]:
    """Primitive idempotents of a commutative semisimple algebra C."""
    F = C.field
    if not C.is_commutative():
        raise AlgebraError("idempotent splitting needs a commutative algebra")
    if F.characteristic == 0:
        z, mp = _primitive_element(C)
        if z is not None:
            return _split_block(C, C.unit, z)
        gens = [C.basis_vector(i) for i in range(C.dim)]
    else:
        gens = _berlekamp_subalgebra(C)
    blocks = [list(C.unit)]
    for b in gens:
        nxt = []
        for e in blocks:
            nxt += _split_block(C, e, b)
        blocks = nxt
    return blocks


def lift_idempotent(A: GradedAlgebra, e: Sequence) -> list:
    """Lift an idempotent modulo a nilpotent ideal by e <- 3e^2 - 2e^3."""
    e = list(e)
    for _ in range(64):
        e2 = A.mul(e, e)
        if e2 == e:
            return e
        e3 = A.mul(e2, e)
        e = A.sub(A.scale(3, e2), A.scale(2, e3))
    raise ArithmeticError("idempotent lifting did not converge")


def commutative_local_blocks(C: GradedAlgebra) -> list[list]:
    """Primitive idempotents of a commutative algebra (not necessarily semisimple)."""
    N = nilradical_commutative(C)
    if N.dim == 0:
        return primitive_idempotents(C)
    Q = quotient_algebra(ungraded(C), N, graded=False)
    return [lift_idempotent(C, Q.lift(e)) for e in primitive_idempotents(Q)]


def count_simple_blocks(A: GradedAlgebra) -> int:
    """Number of simple Wedderburn blocks of A/J(A)."""
    U = ungraded(A)
    J = jacobson_radical(U)
    Q = quotient_algebra(U, J, graded=False) if J.dim else U
    Z = center_ungraded(Q)
    C = subalgebra(Q, Z.basis, graded=False)
    return len(primitive_idempotents(C))


# ------------------------------------------------------------ simplicity

def is_graded_simple(A: GradedAlgebra) -> Decision:
    rad = graded_radical_part(A)
    if rad.dim:
        return Decision(False, {"kind": "graded_ideal", "basis": rad.basis}, "nonzero graded nilpotent ideal")
    Z = center(A)
    zero_part = Z.by_degree().get(A.group.zero, [])
    C = subalgebra(A, zero_part, graded=False)
    idem = commutative_local_blocks(C)
    if len(idem) == 1:
        return Decision(True, {"kind": "graded_simple", "center_degree0_dim": C.dim},
                        "no graded radical and Z(A)_0 has no nontrivial idempotent")
    e = A.combination(idem[0], zero_part)
    ideal = ideal_closure(A, [e])
    return Decision(False, {"kind": "graded_ideal", "basis": ideal.basis},
                    "nontrivial central idempotent of degree zero")


def brute_force_graded_simple(A: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> bool | None:
    """Oracle: graded simple iff every nonzero homogeneous element generates A."""
    F = A.field
    if not F.is_finite:
        raise AlgebraError("brute-force oracle needs a finite field")
    budget = max_enum
    for g, idx in A.components.items():
        for pt in projective_points(F, len(idx)):
            budget -= 1
            if budget < 0:
                return None
            if ideal_closure(A, [A.embed_component(g, pt)]).dim != A.dim:
                return False
    return True


def brute_force_radical(A: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> Subspace:
    """Oracle: x in J(A) iff the two-sided ideal AxA is nilpotent."""
    F = A.field
    members = []
    count = 0
    for pt in itertools.product(range(F.p), repeat=A.dim):
        count += 1
        if count > max_enum:
            raise AlgebraError("enumeration budget exceeded")
        if any(pt) and is_nilpotent_subspace(A, ideal_closure(A, [list(pt)])):
            members.append(list(pt))
    S = Subspace(F, A.dim, members)
    if F.p ** S.dim != len(members) + 1:
        raise AlgebraError("nilpotent-ideal elements do not form a subspace")
    return S


def brute_force_block_count(A: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> int:
    """Oracle: number of primitive central idempotents of A / J(A), found by
    enumerating every element of the quotient (J from ``brute_force_radical``)."""
    U = ungraded(A)
    F = U.field
    if not F.is_finite:
        raise AlgebraError("brute-force oracle needs a finite field")
    J = brute_force_radical(U, max_enum)
    Q = quotient_algebra(U, J, graded=False) if J.dim else U
    if F.p ** Q.dim > max_enum:
        raise AlgebraError("enumeration budget exceeded")
    gens = [Q.basis_vector(i) for i in range(Q.dim)]
    idem = []
    for pt in itertools.product(range(F.p), repeat=Q.dim):
        x = list(pt)
        if any(x) and Q.mul(x, x) == x and all(Q.mul(x, g) == Q.mul(g, x) for g in gens):
            idem.append(x)
    zero = Q.zero()
    return sum(1 for e in idem
               if not any(f != e and Q.mul(f, e) == f and f != zero for f in idem))


# ------------------------------------------------------------ division

def is_graded_division_ring(A: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> Decision:
    F = A.field
    comps = A.components
    if all(len(idx) <= 1 for idx in comps.values()):
        inverses = {}
        for g, idx in comps.items():
            v = A.basis_vector(idx[0])
            inv = inverse_element(A, v)
            if inv is None:
                return Decision(False, {"kind": "non_invertible", "element": v}, "basis element not invertible")
            inverses[idx[0]] = inv
        return Decision(True, {"kind": "inverses", "inverses": inverses}, "every 1-dimensional component invertible")
    budget = max_enum
    exhausted = True
    for g, idx in comps.items():
        m = len(idx)
        if F.is_finite:
            pts = projective_points(F, m)
        else:
            pts = _grid_points(m, max(2, A.dim))
        for pt in pts:
            budget -= 1
            if budget < 0:
                exhausted = False
                break
            v = A.embed_component(g, pt)
            if not is_invertible(A, v):
                return Decision(False, {"kind": "non_invertible", "element": v}, "non-invertible homogeneous element")
        if budget < 0:
            break
    if F.is_finite and exhausted:
        return Decision(True, {"kind": "enumeration", "checked": max_enum - budget}, "all homogeneous elements invertible")
    return Decision(None, {"kind": "grid", "checked": max_enum - max(budget, 0)},
                    "verified-on-grid only; a component of dimension >= 2 over Q is not decided")


def is_graded_field(A: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> Decision:
    if not A.is_commutative():
        return Decision(False, {"kind": "noncommutative"}, "not commutative")
    return is_graded_division_ring(A, max_enum)


# ------------------------------------------------------------ base fields

def base_vectors(A: GradedAlgebra) -> list[list]:
    return [list(v) for v in A.base] if A.base else [list(A.unit)]


def check_base(A: GradedAlgebra) -> list[list]:
    """Validate the designated base: homogeneous, central, a subalgebra with
    1-dimensional components of invertible elements.  Returns its vectors."""
    vecs = base_vectors(A)
    F = A.field
    S = Subspace(F, A.dim, vecs)
    if S.dim != len(vecs):
        raise AlgebraError("base vectors are dependent")
    if A.unit not in S:
        raise AlgebraError("base does not contain 1")
    degs = [A.degree_of(v) for v in vecs]
    if any(d is None for d in degs):
        raise AlgebraError("base vectors must be homogeneous")
    if len(set(degs)) != len(degs):
        raise AlgebraError("supported bases have 1-dimensional components")
    for v in vecs:
        for i in range(A.dim):
            e = A.basis_vector(i)
            if A.mul(v, e) != A.mul(e, v):
                raise AlgebraError("base is not central")
        if inverse_element(A, v) is None:
            raise AlgebraError("base element is not invertible")
        for w in vecs:
            if A.mul(v, w) not in S:
                raise AlgebraError("base is not closed under multiplication")
    return vecs


def base_support(A: GradedAlgebra) -> Subgroup:
    vecs = check_base(A)
    return Subgroup(A.group, [A.degree_of(v) for v in vecs])


def base_algebra(A: GradedAlgebra) -> GradedAlgebra:
    return subalgebra(A, check_base(A), name=f"base({A.name})" if A.name else None)


def homogeneous_base_basis(A: GradedAlgebra) -> list[list]:
    """Homogeneous basis of A as a (free) module over its designated base,
    first-fit over components in lexicographic degree order."""
    R = check_base(A)
    F = A.field
    chosen = []
    S = Subspace(F, A.dim)
    for g, idx in A.components.items():
        for i in idx:
            e = A.basis_vector(i)
            if e in S:
                continue
            chosen.append(e)
            S = S.add([A.mul(r, e) for r in R])
    if S.dim != A.dim or S.dim != len(chosen) * len(R):
        raise AlgebraError("A is not free over its designated base")
    return chosen


def is_graded_central_simple(A: GradedAlgebra, max_enum: int = DEFAULT_MAX_ENUM) -> Decision:
    try:
        R = check_base(A)
    except AlgebraError as exc:
        return Decision(False, {"kind": "bad_base"}, str(exc))
    simple = is_graded_simple(A)
    if simple.verdict is not True:
        return simple
    Z = center(A)
    RS = Subspace(A.field, A.dim, R)
    if Z.dim != RS.dim or not all(v in RS for v in Z.basis):
        return Decision(False, {"kind": "center", "center_basis": Z.basis}, "center strictly larger than the base")
    return Decision(True, {"kind": "graded_central_simple", "rank": A.dim // len(R)}, "")
