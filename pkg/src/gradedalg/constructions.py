"""Builders for standard graded algebras: finite groups by Cayley table,
(twisted) group algebras, quaternion algebras and small matrix algebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence

from .algebra import AlgebraError, GradedAlgebra, embed_pair, matrix_shift, opposite, tensor_product
from .grade_group import GradeGroup, GroupElement
from .linalg import Field, smith_normal_form


class GroupTableError(ValueError):
    """Cayley table is not a group table."""


class CocycleError(ValueError):
    """Cocycle identity fails; ``triple`` names the violating (a, b, c)."""

    def __init__(self, triple):
        super().__init__(f"2-cocycle identity fails at {triple}")
        self.triple = triple


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = "G"
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = len(self.table)
        object.__setattr__(self, "table", tuple(tuple(r) for r in self.table))
        rng = set(range(n))
        for r in self.table:
            if len(r) != n or set(r) != rng:
                raise GroupTableError("rows must be permutations (Latin square)")
        for c in range(n):
            if {self.table[r][c] for r in range(n)} != rng:
                raise GroupTableError("columns must be permutations (Latin square)")
        e = self.identity
        if any(self.table[e][x] != x or self.table[x][e] != x for x in range(n)):
            raise GroupTableError("identity index is not an identity")
        if n <= 24:
            t = self.table
            for a, b, c in itertools.product(range(n), repeat=3):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise GroupTableError(f"associativity fails at {(a, b, c)}")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.table[a].index(self.identity)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def closure(self, gens: Sequence[int]) -> list[int]:
        S = {self.identity}
        frontier = list(gens)
        while frontier:
            x = frontier.pop()
            if x in S:
                continue
            S.add(x)
            frontier += [self.mul(x, y) for y in list(S)] + [self.mul(y, x) for y in list(S)]
        return sorted(S)

    def abelian_decomposition(self) -> tuple[GradeGroup, list[GroupElement]]:
        """For abelian G: an isomorphic GradeGroup and the image of each element,
        from the Smith form of the relation lattice e_a + e_b - e_ab."""
        if not self.is_abelian():
            raise GroupTableError("group is not abelian")
        n = self.order
        rows = []
        for a in range(n):
            for b in range(a, n):
                r = [0] * n
                r[a] += 1
                r[b] += 1
                r[self.mul(a, b)] -= 1
                rows.append(r)
        U, D, V = smith_normal_form(rows, n)
        diag = [D[i][i] if i < len(D) else 0 for i in range(n)]
        keep = [i for i, d in enumerate(diag) if d != 1]
        if any(diag[i] == 0 for i in keep):
            raise GroupTableError("relation lattice has free part")
        group = GradeGroup(0, tuple(abs(diag[i]) for i in keep))
        images = [group(tuple(V[g][i] for i in keep)) for g in range(n)]
        return group, images


def group_from_elements(elements: Sequence[Hashable], op: Callable, name: str, labels=None) -> FiniteGroup:
    elements = list(elements)
    pos = {x: i for i, x in enumerate(elements)}
    table = [[pos[op(a, b)] for b in elements] for a in elements]
    ident = next(i for i, e in enumerate(elements) if all(op(e, x) == x for x in elements))
    return FiniteGroup(tuple(map(tuple, table)), ident, name, tuple(labels or map(str, elements)))


def _perm_group(gens: Sequence[tuple[int, ...]], name: str) -> FiniteGroup:
    ident = tuple(range(len(gens[0])))
    compose = lambda p, q: tuple(p[q[i]] for i in range(len(q)))
    elems = {ident}
    frontier = [ident]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = compose(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return group_from_elements(sorted(elems), compose, name)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"Z{n}")


def klein_group() -> FiniteGroup:
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    return group_from_elements(elems, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), "Z2xZ2")


def symmetric_group(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return _perm_group(gens, f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    """Generated by the 3-cycles (0 1 i), i >= 2."""
    gens = []
    for i in range(2, n):
        p = list(range(n))
        p[0], p[1], p[i] = 1, i, 0
        gens.append(tuple(p))
    return _perm_group(gens, f"A{n}")


def dihedral_group(m: int) -> FiniteGroup:
    """Symmetries of the m-gon, order 2m."""
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return _perm_group([rot, ref], f"D{m}")


def quaternion_group() -> FiniteGroup:
    units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}

    def op(a, b):
        s, u = units[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    return group_from_elements(elems, op, "Q8", [("" if s > 0 else "-") + u for s, u in elems])


def small_groups() -> dict[str, FiniteGroup]:
    """The groups of order <= 12 used by the group-ring test surface."""
    out = {f"Z{n}": cyclic_group(n) for n in range(1, 13)}
    out.update({"Z2xZ2": klein_group(), "S3": symmetric_group(3), "D4": dihedral_group(4),
                "Q8": quaternion_group(), "A4": alternating_group(4), "D6": dihedral_group(6)})
    return out


@dataclass(frozen=True)
class CenterCommutator:
    center: list[int]
    commutator: list[int]

    @property
    def center_order(self) -> int:
        return len(self.center)

    @property
    def commutator_order(self) -> int:
        return len(self.commutator)


def group_center_and_commutator(G: FiniteGroup) -> CenterCommutator:
    n = G.order
    Z = [a for a in range(n) if all(G.mul(a, b) == G.mul(b, a) for b in range(n))]
    comms = {G.commutator(a, b) for a in range(n) for b in range(n)}
    return CenterCommutator(Z, G.closure(sorted(comms)))


# ------------------------------------------------------------- algebras

def ground_field(F: Field, group: GradeGroup | None = None) -> GradedAlgebra:
    """k as a 1-dimensional algebra, trivially graded in ``group``."""
    group = group or GradeGroup()
    return GradedAlgebra(F, group, [group.zero], {(0, 0): {0: 1}}, [1], names=["1"],
                         name=f"{_fname(F)}", provenance={"kind": "ground_field", "group": group.to_json()})


def _fname(F: Field) -> str:
    return "Q" if F.characteristic == 0 else f"F{F.characteristic}"


def group_algebra(F: Field, G: FiniteGroup | GradeGroup) -> GradedAlgebra:
    """k[G]; graded by G itself when G is abelian, trivially graded otherwise."""
    if isinstance(G, GradeGroup):
        elems = G.elements()
        pos = {g: i for i, g in enumerate(elems)}
        table = {(a, b): {pos[x + y]: 1} for a, x in enumerate(elems) for b, y in enumerate(elems)}
        base = [[1] + [0] * (len(elems) - 1)]
        return GradedAlgebra(F, G, elems, table, base[0], names=[f"g{g}" for g in elems],
                             name=f"{_fname(F)}[{G}]".replace(" ", ""),
                             provenance={"kind": "group_algebra", "group": G.to_json()})
    n = G.order
    if G.is_abelian():
        group, degs = G.abelian_decomposition()
    else:
        group = GradeGroup()
        degs = [group.zero] * n
    table = {(a, b): {G.mul(a, b): 1} for a in range(n) for b in range(n)}
    unit = [1 if i == G.identity else 0 for i in range(n)]
    labels = G.labels or tuple(str(i) for i in range(n))
    return GradedAlgebra(F, group, degs, table, unit, names=[f"g{l}" for l in labels],
                         name=f"{_fname(F)}[{G.name}]", provenance={"kind": "group_algebra", "group": G.name})


def normalize_cocycle(F: Field, group: GradeGroup, alpha: Mapping) -> dict:
    elems = group.elements()
    vals = {(a, b): F(alpha[(a, b)]) if (a, b) in alpha else F.one for a in elems for b in elems}
    c0 = vals[(group.zero, group.zero)]
    if c0 == 0 or any(v == 0 for v in vals.values()):
        raise CocycleError(("zero value",))
    inv = F.inv(c0)
    return {k: F.norm(v * inv) for k, v in vals.items()}


def check_cocycle(F: Field, group: GradeGroup, alpha: Mapping) -> None:
    for a, b, c in itertools.product(group.elements(), repeat=3):
        lhs = F.norm(alpha[(a, b)] * alpha[(a + b, c)])
        rhs = F.norm(alpha[(b, c)] * alpha[(a, b + c)])
        if lhs != rhs:
            raise CocycleError((a, b, c))


def twisted_group_algebra(F: Field, group: GradeGroup, alpha: Mapping | Callable) -> GradedAlgebra:
    """k^α[Γ] with u_γ u_δ = α(γ, δ) u_{γ+δ}.  ``alpha`` maps pairs of group
    elements to scalars (missing pairs are 1) or is a callable."""
    elems = group.elements()
    if callable(alpha):
        alpha = {(a, b): alpha(a, b) for a in elems for b in elems}
    alpha = normalize_cocycle(F, group, alpha)
    check_cocycle(F, group, alpha)
    pos = {g: i for i, g in enumerate(elems)}
    table = {(pos[a], pos[b]): {pos[a + b]: alpha[(a, b)]} for a in elems for b in elems}
    unit = [1] + [0] * (len(elems) - 1)
    return GradedAlgebra(F, group, elems, table, unit, names=[f"u{g}" for g in elems],
                         name=f"{_fname(F)}^a[{group}]".replace(" ", ""),
                         provenance={"kind": "twisted_group_algebra", "group": group.to_json(),
                                     "alpha": [[list(a.coords), list(b.coords), list(F.pair(v))]
                                               for (a, b), v in sorted(alpha.items(), key=lambda kv: (kv[0][0].coords, kv[0][1].coords))]})


def quaternion_algebra(F: Field, a, b) -> GradedAlgebra:
    """(a, b)_k on 1, i, j, k, graded by Z2 x Z2."""
    if F.characteristic == 2:
        raise AlgebraError("quaternion algebras in characteristic 2 are not supported")
    a, b = F(a), F(b)
    if a == 0 or b == 0:
        raise AlgebraError("quaternion parameters must be nonzero")
    G = GradeGroup(0, (2, 2))
    n = F.norm
    table = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
        (1, 0): {1: 1}, (2, 0): {2: 1}, (3, 0): {3: 1},
        (1, 1): {0: a}, (2, 2): {0: b}, (3, 3): {0: n(-a * b)},
        (1, 2): {3: 1}, (2, 1): {3: n(-1)},
        (1, 3): {2: a}, (3, 1): {2: n(-a)},
        (2, 3): {1: n(-b)}, (3, 2): {1: b},
    }
    pa, pb = F.pair(a), F.pair(b)
    return GradedAlgebra(F, G, [G(0, 0), G(1, 0), G(0, 1), G(1, 1)], table, [1, 0, 0, 0],
                         names=["1", "i", "j", "k"], name=f"({_frac(pa)},{_frac(pb)})_{_fname(F)}",
                         provenance={"kind": "quaternion", "a": list(pa), "b": list(pb)})


def _frac(p) -> str:
    return str(p[0]) if p[1] == 1 else f"{p[0]}/{p[1]}"


def upper_triangular(F: Field) -> GradedAlgebra:
    """2x2 upper-triangular matrices, Z-graded with deg E12 = 1."""
    G = GradeGroup(1)
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return GradedAlgebra(F, G, [G(0), G(1), G(0)], table, [1, 0, 1], names=["E11", "E12", "E22"],
                         name=f"UT2({_fname(F)})", provenance={"kind": "upper_triangular"})


def full_matrix_algebra(F: Field, n: int, group: GradeGroup | None = None,
                        shifts: Sequence[GroupElement] | None = None) -> GradedAlgebra:
    group = group or GradeGroup()
    k = ground_field(F, group)
    return matrix_shift(k, shifts if shifts is not None else [group.zero] * n)


def from_provenance(F: Field, prov: Mapping) -> GradedAlgebra:
    """Rebuild an algebra from a construction descriptor."""
    kind = prov.get("kind") if isinstance(prov, Mapping) else None
    if kind == "ground_field":
        return ground_field(F, GradeGroup.from_json(prov.get("group", {})))
    if kind == "group_algebra":
        g = prov["group"]
        if isinstance(g, Mapping):
            return group_algebra(F, GradeGroup.from_json(g))
        groups = small_groups()
        if g not in groups:
            raise AlgebraError(f"unknown group {g!r} in provenance")
        return group_algebra(F, groups[g])
    if kind == "twisted_group_algebra":
        G = GradeGroup.from_json(prov["group"])
        alpha = {(G(a), G(b)): F(tuple(v)) for a, b, v in prov["alpha"]}
        return twisted_group_algebra(F, G, alpha)
    if kind == "quaternion":
        return quaternion_algebra(F, F(tuple(prov["a"])), F(tuple(prov["b"])))
    if kind == "upper_triangular":
        return upper_triangular(F)
    if kind == "matrix_shift":
        D = from_provenance(F, prov["of"])
        return matrix_shift(D, [D.group(s) for s in prov["shifts"]])
    if kind == "opposite":
        return opposite(from_provenance(F, prov["of"]))
    if kind == "embed":
        inner = from_provenance(F, prov["of"])
        other = GradeGroup.from_json(prov["other"])
        if prov["side"] == "left":
            return embed_pair(inner, ground_field(F, other))[0]
        return embed_pair(ground_field(F, other), inner)[1]
    if kind == "tensor" and prov.get("over") == "field":
        return tensor_product(from_provenance(F, prov["left"]), from_provenance(F, prov["right"]))
    raise AlgebraError(f"provenance {prov!r} cannot be reconstructed")
