"""Graded finite-dimensional algebras given by homogeneous structure constants.

An algebra has a basis b_0..b_{n-1}, each homogeneous of degree
``degrees[i]`` in a :class:`GradeGroup`, and a sparse table
``b_i b_j = sum_k table[i, j][k] b_k``.  Elements are coefficient lists.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .grade_group import GradeGroup, GroupElement
from .linalg import Field, Subspace, matmul, rref, solve, transpose


class AlgebraError(ValueError):
    """Structural misuse: bad shapes, non-homogeneous input, mismatched groups."""


@dataclass
class ValidationReport:
    ok: bool
    violations: list[dict] = field(default_factory=list)

    @property
    def first(self) -> dict | None:
        return self.violations[0] if self.violations else None

    def __bool__(self):
        return self.ok


class GradedAlgebra:
    def __init__(
        self,
        field: Field,
        group: GradeGroup,
        degrees: Sequence[GroupElement],
        table: dict,
        unit: Sequence | None = None,
        *,
        base: Sequence[Sequence] | None = None,
        names: Sequence[str] | None = None,
        name: str | None = None,
        provenance: dict | None = None,
    ):
        self.field = F = field
        self.group = group
        self.degrees = [group(d.coords) if isinstance(d, GroupElement) else group(d) for d in degrees]
        self.dim = len(self.degrees)
        self.table: dict[tuple[int, int], dict[int, object]] = {}
        for (i, j), row in table.items():
            clean = {k: F(c) for k, c in row.items() if F(c) != 0}
            if clean:
                self.table[(i, j)] = clean
        self.names = list(names) if names else [f"b{i}" for i in range(self.dim)]
        self.name = name
        self.provenance = provenance
        if unit is None:
            unit = self._find_unit()
        self.unit = [F(c) for c in unit] if unit is not None else None
        self.base = [[F(c) for c in v] for v in base] if base else None

    # ------------------------------------------------------------ basics
    def __repr__(self):
        return f"GradedAlgebra({self.name or '?'}, dim={self.dim}, {self.field}, {self.group})"

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def basis_vector(self, i: int) -> list:
        v = self.zero()
        v[i] = self.field.one
        return v

    def _find_unit(self):
        if self.dim == 0:
            return None
        F = self.field
        n = self.dim
        # solve u b_j = b_j and b_j u = b_j for all j
        rows, rhs = [], []
        for j in range(n):
            for k in range(n):
                rows.append([self.table.get((i, j), {}).get(k, F.zero) for i in range(n)])
                rhs.append(F.one if k == j else F.zero)
                rows.append([self.table.get((j, i), {}).get(k, F.zero) for i in range(n)])
                rhs.append(F.one if k == j else F.zero)
        return solve(F, rows, rhs)

    def mul(self, x: Sequence, y: Sequence) -> list:
        F = self.field
        out = [F.zero] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a != 0]
        ys = [(j, b) for j, b in enumerate(y) if b != 0]
        for i, a in xs:
            for j, b in ys:
                row = self.table.get((i, j))
                if row:
                    ab = a * b
                    for k, c in row.items():
                        out[k] = out[k] + ab * c
        return [F.norm(v) for v in out]

    def add(self, x, y) -> list:
        return [self.field.norm(a + b) for a, b in zip(x, y)]

    def sub(self, x, y) -> list:
        return [self.field.norm(a - b) for a, b in zip(x, y)]

    def scale(self, c, x) -> list:
        return [self.field.norm(c * a) for a in x]

    def combination(self, coeffs: Sequence, vectors: Sequence[Sequence]) -> list:
        out = self.zero()
        for c, v in zip(coeffs, vectors):
            if c != 0:
                out = [self.field.norm(a + c * b) for a, b in zip(out, v)]
        return out

    @cached_property
    def left_matrices(self) -> list[list[list]]:
        """``L[i]`` is the matrix of x -> b_i x (column j = b_i b_j)."""
        F = self.field
        n = self.dim
        mats = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), row in self.table.items():
            for k, c in row.items():
                mats[i][k][j] = c
        return mats

    @cached_property
    def right_matrices(self) -> list[list[list]]:
        """``R[j]`` is the matrix of x -> x b_j."""
        F = self.field
        n = self.dim
        mats = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), row in self.table.items():
            for k, c in row.items():
                mats[j][k][i] = c
        return mats

    def left_matrix(self, x: Sequence) -> list[list]:
        F = self.field
        n = self.dim
        m = [[F.zero] * n for _ in range(n)]
        for i, a in enumerate(x):
            if a != 0:
                Li = self.left_matrices[i]
                for r in range(n):
                    Lr = Li[r]
                    mr = m[r]
                    for c in range(n):
                        if Lr[c] != 0:
                            mr[c] = F.norm(mr[c] + a * Lr[c])
        return m

    def right_matrix(self, x: Sequence) -> list[list]:
        F = self.field
        n = self.dim
        m = [[F.zero] * n for _ in range(n)]
        for i, a in enumerate(x):
            if a != 0:
                Ri = self.right_matrices[i]
                for r in range(n):
                    for c in range(n):
                        if Ri[r][c] != 0:
                            m[r][c] = F.norm(m[r][c] + a * Ri[r][c])
        return m

    # ---------------------------------------------------------- grading
    @cached_property
    def components(self) -> dict[GroupElement, list[int]]:
        """Basis indices grouped by degree, degrees in lexicographic order."""
        comp: dict[GroupElement, list[int]] = {}
        for i, d in enumerate(self.degrees):
            comp.setdefault(d, []).append(i)
        return dict(sorted(comp.items(), key=lambda kv: kv[0].coords))

    def component_dim(self, g: GroupElement) -> int:
        return len(self.components.get(g, ()))

    def degree_of(self, x: Sequence) -> GroupElement | None:
        """Degree of a nonzero homogeneous element, else ``None``."""
        degs = {self.degrees[i] for i, a in enumerate(x) if a != 0}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, x: Sequence) -> bool:
        return sum(1 for _ in {self.degrees[i] for i, a in enumerate(x) if a != 0}) <= 1

    def homogeneous_components(self, x: Sequence) -> dict[GroupElement, list]:
        out = {}
        for g, idx in self.components.items():
            v = self.zero()
            for i in idx:
                v[i] = x[i]
            if any(a != 0 for a in v):
                out[g] = v
        return out

    def embed_component(self, g: GroupElement, coeffs: Sequence) -> list:
        v = self.zero()
        for i, c in zip(self.components.get(g, []), coeffs):
            v[i] = self.field(c)
        return v

    def is_commutative(self) -> bool:
        return all(self.table.get((i, j), {}) == self.table.get((j, i), {})
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def element(self, coeffs: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, [self.field(c) for c in coeffs])

    def gen(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, self.basis_vector(i))

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, list(self.unit))

    def with_base(self, base: Sequence[Sequence] | None) -> "GradedAlgebra":
        return GradedAlgebra(self.field, self.group, self.degrees, self.table, self.unit, base=base,
                             names=self.names, name=self.name, provenance=self.provenance)

    def same_table(self, other: "GradedAlgebra") -> bool:
        return (self.field == other.field and self.group == other.group and self.degrees == other.degrees
                and self.table == other.table and self.unit == other.unit)


class AlgebraElement:
    """Thin arithmetic wrapper around a coefficient vector."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: GradedAlgebra, coeffs: Sequence):
        self.parent = parent
        self.coeffs = list(coeffs)

    def __add__(self, other):
        return AlgebraElement(self.parent, self.parent.add(self.coeffs, _coeffs(other)))

    def __sub__(self, other):
        return AlgebraElement(self.parent, self.parent.sub(self.coeffs, _coeffs(other)))

    def __neg__(self):
        return AlgebraElement(self.parent, self.parent.scale(-1, self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.parent, self.parent.mul(self.coeffs, other.coeffs))
        return AlgebraElement(self.parent, self.parent.scale(self.parent.field(other), self.coeffs))

    def __rmul__(self, c):
        return AlgebraElement(self.parent, self.parent.scale(self.parent.field(c), self.coeffs))

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    @property
    def degree(self):
        return self.parent.degree_of(self.coeffs)

    def components(self) -> dict:
        return {g: AlgebraElement(self.parent, v) for g, v in self.parent.homogeneous_components(self.coeffs).items()}

    def is_zero(self) -> bool:
        return not any(a != 0 for a in self.coeffs)

    def __repr__(self):
        terms = [f"{a}*{n}" for a, n in zip(self.coeffs, self.parent.names) if a != 0]
        return " + ".join(terms) or "0"


def _coeffs(x):
    return x.coeffs if isinstance(x, AlgebraElement) else list(x)


# ------------------------------------------------------------------ validate

def validate(A: GradedAlgebra, *, max_violations: int = 1) -> ValidationReport:
    """Check grading closure, associativity and the unit laws."""
    F = A.field
    violations: list[dict] = []
    if A.dim == 0:
        return ValidationReport(False, [{"kind": "zero_algebra"}])
    for (i, j), row in sorted(A.table.items()):
        for k in sorted(row):
            if A.degrees[k] != A.degrees[i] + A.degrees[j]:
                violations.append({"kind": "grading", "triple": [i, j, k],
                                   "names": [A.names[i], A.names[j], A.names[k]]})
                if len(violations) >= max_violations:
                    return ValidationReport(False, violations)
    L = A.left_matrices
    n = A.dim
    for i in range(n):
        for j in range(n):
            lhs = matmul(F, L[i], L[j])
            bij = [F.zero] * n
            for k, c in A.table.get((i, j), {}).items():
                bij[k] = c
            rhs = A.left_matrix(bij)
            if lhs != rhs:
                k = next(c for c in range(n) if [r[c] for r in lhs] != [r[c] for r in rhs])
                violations.append({"kind": "associativity", "triple": [i, j, k]})
                if len(violations) >= max_violations:
                    return ValidationReport(False, violations)
    if A.unit is None:
        violations.append({"kind": "no_unit"})
        return ValidationReport(False, violations)
    for j in range(n):
        e = A.basis_vector(j)
        if A.mul(A.unit, e) != e or A.mul(e, A.unit) != e:
            violations.append({"kind": "unit", "index": j})
            return ValidationReport(False, violations)
    if A.degree_of(A.unit) != A.group.zero:
        violations.append({"kind": "unit_degree"})
    return ValidationReport(not violations, violations)


# ------------------------------------------------------------- constructions

def regrade(A: GradedAlgebra, group: GradeGroup, fn: Callable[[GroupElement], GroupElement], **kw) -> GradedAlgebra:
    """Same table, degrees pushed through the homomorphism ``fn``."""
    base = kw.pop("base", A.base)
    # a descriptor of A no longer rebuilds the regraded algebra unless the caller supplies one
    prov = kw.pop("provenance", A.provenance if group == A.group else None)
    return GradedAlgebra(A.field, group, [fn(d) for d in A.degrees], A.table, A.unit, base=base,
                         names=A.names, name=kw.pop("name", A.name), provenance=prov)


def ungraded(A: GradedAlgebra) -> GradedAlgebra:
    triv = GradeGroup()
    return regrade(A, triv, lambda d: triv.zero, base=None)


def opposite(A: GradedAlgebra) -> GradedAlgebra:
    table = {(j, i): dict(row) for (i, j), row in A.table.items()}
    return GradedAlgebra(A.field, A.group, A.degrees, table, A.unit, base=A.base, names=A.names,
                         name=f"op({A.name})" if A.name else None,
                         provenance={"kind": "opposite", "of": A.provenance or A.name})


def tensor_product(A: GradedAlgebra, B: GradedAlgebra, over: str = "field") -> GradedAlgebra:
    """Graded tensor product over the ground field (``over="field"``) or over
    the designated central bases of A and B (``over="base"``).  The bases are
    matched positionally and must have identical multiplication tables."""
    if A.field != B.field:
        raise AlgebraError("factors live over different fields")
    if A.group != B.group:
        raise AlgebraError("factors must share one grade group; embed them first")
    F = A.field
    n, m = A.dim, B.dim
    degrees = [A.degrees[i] + B.degrees[j] for i in range(n) for j in range(m)]
    table: dict = {}
    for (i1, i2), r1 in A.table.items():
        for (j1, j2), r2 in B.table.items():
            row = {}
            for k1, c1 in r1.items():
                for k2, c2 in r2.items():
                    row[k1 * m + k2] = F.norm(c1 * c2)
            table[(i1 * m + j1, i2 * m + j2)] = row
    unit = [F.norm(a * b) for a in A.unit for b in B.unit]
    names = [f"{a}(x){b}" for a in A.names for b in B.names]
    prov = {"kind": "tensor", "left": A.provenance or A.name, "right": B.provenance or B.name, "over": over}
    if over == "base":  # the designated bases are not part of the descriptors
        prov = None
    T = GradedAlgebra(F, A.group, degrees, table, unit, names=names,
                      name=f"{A.name}(x){B.name}" if A.name and B.name else None, provenance=prov)
    if over == "field":
        return T
    if over != "base":
        raise AlgebraError(f"unknown tensor base {over!r}")
    if not A.base or not B.base or len(A.base) != len(B.base):
        raise AlgebraError("tensor over a base needs matching designated bases on both factors")
    from .structure import check_base
    check_base(A)
    check_base(B)
    # positional matching must be an algebra isomorphism of the two bases
    for x, y in zip(A.base, B.base):
        if A.degree_of(x) != B.degree_of(y):
            raise AlgebraError("designated bases have different degrees")
    for (x1, y1), (x2, y2) in itertools.product(list(zip(A.base, B.base)), repeat=2):
        bx = _coords_in(F, A.base, A.mul(x1, x2))
        by = _coords_in(F, B.base, B.mul(y1, y2))
        if bx is None or bx != by:
            raise AlgebraError("designated bases are not isomorphic under the positional matching")
    rels = []
    for r_a, r_b in zip(A.base, B.base):
        for i in range(n):
            ar = A.mul(A.basis_vector(i), r_a)
            for j in range(m):
                rb = B.mul(r_b, B.basis_vector(j))
                v = [F.zero] * (n * m)
                for k1, c1 in enumerate(ar):
                    if c1 != 0:
                        v[k1 * m + j] = F.norm(v[k1 * m + j] + c1)
                for k2, c2 in enumerate(rb):
                    if c2 != 0:
                        v[i * m + k2] = F.norm(v[i * m + k2] - c2)
                rels.append(v)
    Q = quotient_algebra(T, Subspace(F, n * m, rels))
    Q.base = [Q.project(_tensor_vec(F, x, B.unit, m)) for x in A.base]
    Q.provenance = prov
    return Q


def _tensor_vec(F, x, y, m):
    return [F.norm(a * b) for a in x for b in y]


def _coords_in(F, vectors, v):
    """Coordinates of v in the (independent) list ``vectors``."""
    sol = solve(F, transpose(vectors), v)
    return sol


def matrix_shift(A: GradedAlgebra, shifts: Sequence[GroupElement]) -> GradedAlgebra:
    """M_n(A)(d) on basis x E_ij with deg(x E_ij) = deg x - d_i + d_j."""
    F = A.field
    d = [A.group(s.coords) if isinstance(s, GroupElement) else A.group(s) for s in shifts]
    n = len(d)
    m = A.dim

    def idx(i, j, k):
        return (i * n + j) * m + k

    degrees, names = [], []
    for i in range(n):
        for j in range(n):
            for k in range(m):
                degrees.append(A.degrees[k] - d[i] + d[j])
                names.append(f"{A.names[k]}*E{i + 1}{j + 1}")
    table = {}
    for (a, b), row in A.table.items():
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    table[(idx(i, j, a), idx(j, l, b))] = {idx(i, l, k): c for k, c in row.items()}
    unit = [F.zero] * (n * n * m)
    for i in range(n):
        for k in range(m):
            unit[idx(i, i, k)] = A.unit[k]
    base = None
    if A.base:
        base = []
        for r in A.base:
            v = [F.zero] * (n * n * m)
            for i in range(n):
                for k in range(m):
                    v[idx(i, i, k)] = r[k]
            base.append(v)
    prov = {"kind": "matrix_shift", "of": A.provenance or A.name, "shifts": [list(x.coords) for x in d]}
    return GradedAlgebra(F, A.group, degrees, table, unit, base=base, names=names,
                         name=f"M{n}({A.name})({','.join(map(str, d))})" if A.name else None, provenance=prov)


def matrix_index(A_dim: int, n: int, i: int, j: int, k: int) -> int:
    return (i * n + j) * A_dim + k


class QuotientAlgebra(GradedAlgebra):
    """A/I on the images of the standard basis vectors not pivotal in I."""

    def __init__(self, A: GradedAlgebra, ideal: Subspace, graded: bool):
        F = A.field
        self.ambient = A
        self.ideal = ideal
        piv = set(ideal.pivots)
        self.lift_indices = [i for i in range(A.dim) if i not in piv]
        pos = {i: r for r, i in enumerate(self.lift_indices)}
        self._pos = pos
        table = {}
        for r1, i in enumerate(self.lift_indices):
            for r2, j in enumerate(self.lift_indices):
                prod = ideal.reduce(A.mul(A.basis_vector(i), A.basis_vector(j)))
                row = {pos[k]: c for k, c in enumerate(prod) if c != 0}
                if row:
                    table[(r1, r2)] = row
        group = A.group if graded else GradeGroup()
        degrees = [A.degrees[i] if graded else group.zero for i in self.lift_indices]
        unit = self.project(A.unit)
        super().__init__(F, group, degrees, table, unit, names=[A.names[i] for i in self.lift_indices],
                         name=f"{A.name}/I" if A.name else None)

    def project(self, v: Sequence) -> list:
        red = self.ideal.reduce(v)
        if any(red[i] != 0 for i in self.ideal.pivots):
            raise AlgebraError("reduction failed")
        return [red[i] for i in self.lift_indices]

    def lift(self, v: Sequence) -> list:
        out = self.ambient.zero()
        for c, i in zip(v, self.lift_indices):
            out[i] = c
        return out


def quotient_algebra(A: GradedAlgebra, ideal: Subspace, graded: bool | None = None) -> QuotientAlgebra:
    if graded is None:
        graded = all(A.is_homogeneous(v) for v in ideal.basis)
    return QuotientAlgebra(A, ideal, graded)


def subalgebra(A: GradedAlgebra, vectors: Sequence[Sequence], *, graded: bool = True, name: str | None = None) -> GradedAlgebra:
    """The subalgebra spanned by ``vectors`` (homogeneous when ``graded``) as a
    standalone algebra on that basis; the span must contain 1 and be closed."""
    F = A.field
    vecs = [list(v) for v in vectors]
    S = Subspace(F, A.dim, vecs)
    if S.dim != len(vecs):
        raise AlgebraError("subalgebra spanning set is dependent")
    cols = transpose(vecs)
    table = {}
    for i, x in enumerate(vecs):
        for j, y in enumerate(vecs):
            c = solve(F, cols, A.mul(x, y))
            if c is None:
                raise AlgebraError("span is not closed under multiplication")
            row = {k: a for k, a in enumerate(c) if a != 0}
            if row:
                table[(i, j)] = row
    unit = solve(F, cols, A.unit)
    if unit is None:
        raise AlgebraError("span does not contain the unit")
    if graded:
        degs = [A.degree_of(v) for v in vecs]
        if any(d is None for d in degs):
            raise AlgebraError("graded subalgebra needs homogeneous spanning vectors")
        group = A.group
    else:
        group = GradeGroup()
        degs = [group.zero] * len(vecs)
    return GradedAlgebra(F, group, degs, table, unit, name=name)


def degree_zero_part(A: GradedAlgebra) -> GradedAlgebra:
    idx = A.components.get(A.group.zero, [])
    return subalgebra(A, [A.basis_vector(i) for i in idx], name=f"{A.name}_0" if A.name else None)


def direct_product(A: GradedAlgebra, B: GradedAlgebra) -> GradedAlgebra:
    if A.field != B.field or A.group != B.group:
        raise AlgebraError("direct product needs a common field and grade group")
    n = A.dim
    table = {k: dict(v) for k, v in A.table.items()}
    for (i, j), row in B.table.items():
        table[(i + n, j + n)] = {k + n: c for k, c in row.items()}
    return GradedAlgebra(A.field, A.group, A.degrees + B.degrees, table, list(A.unit) + list(B.unit),
                         names=[f"{x}_1" for x in A.names] + [f"{x}_2" for x in B.names],
                         name=f"{A.name}x{B.name}" if A.name and B.name else None)


def embed_pair(A: GradedAlgebra, B: GradedAlgebra):
    """Regrade A and B into the product of their grade groups."""
    big, left, right = A.group.embeddings(B.group)
    pa = {"kind": "embed", "side": "left", "of": A.provenance or A.name, "other": B.group.to_json()}
    pb = {"kind": "embed", "side": "right", "of": B.provenance or B.name, "other": A.group.to_json()}
    return regrade(A, big, left, provenance=pa), regrade(B, big, right, provenance=pb)


def rows_to_subspace(A: GradedAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace(A.field, A.dim, vectors)


def rref_vectors(A: GradedAlgebra, vectors):
    return rref(A.field, vectors, A.dim)[0]
