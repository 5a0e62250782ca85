"""Finitely generated abelian grade groups Z^f x Z_{n_1} x ... x Z_{n_t}.

Every degree in the package is a :class:`GroupElement` of some
:class:`GradeGroup`.  Subgroups are canonicalised as integer lattices in
Z^(f+t) (the torsion relations n_i e_{f+i} are always adjoined), which turns
membership, index and coset enumeration into Hermite normal form arithmetic.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .linalg import hermite_normal_form


class GroupMismatchError(ValueError):
    """Raised when elements of different grade groups are combined."""


@dataclass(frozen=True)
class GradeGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(n) for n in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if any(n < 2 for n in self.torsion):
            raise ValueError(f"torsion orders must be >= 2, got {self.torsion}")

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> float | int:
        return math.prod(self.torsion) if self.is_finite else math.inf

    def __call__(self, *coords) -> "GroupElement":
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        if len(coords) != self.ngens:
            raise ValueError(f"expected {self.ngens} coordinates, got {len(coords)}")
        return GroupElement(self, self._reduce(coords))

    def _reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        f = self.free_rank
        out = list(int(c) for c in coords)
        for i, n in enumerate(self.torsion):
            out[f + i] %= n
        return tuple(out)

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def elements(self) -> list["GroupElement"]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        return [GroupElement(self, c) for c in itertools.product(*(range(n) for n in self.torsion))]

    def gens(self) -> list["GroupElement"]:
        out = []
        for i in range(self.ngens):
            c = [0] * self.ngens
            c[i] = 1
            out.append(self(c))
        return out

    def product(self, other: "GradeGroup") -> "GradeGroup":
        """Direct product, free part first; see :meth:`embeddings`."""
        return GradeGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def embeddings(self, other: "GradeGroup"):
        """The two coordinate inclusions into ``self.product(other)``."""
        big = self.product(other)
        f1, f2 = self.free_rank, other.free_rank

        def left(x: GroupElement) -> GroupElement:
            c = x.coords
            return big(c[:f1] + (0,) * f2 + c[f1:] + (0,) * len(other.torsion))

        def right(y: GroupElement) -> GroupElement:
            c = y.coords
            return big((0,) * f1 + c[:f2] + (0,) * len(self.torsion) + c[f2:])

        return big, left, right

    def relation_rows(self) -> list[list[int]]:
        rows = []
        for i, n in enumerate(self.torsion):
            r = [0] * self.ngens
            r[self.free_rank + i] = n
            rows.append(r)
        return rows

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "GradeGroup":
        return cls(int(data.get("free_rank", 0)), tuple(data.get("torsion", ())))

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z{n}" for n in self.torsion]
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True, order=True)
class GroupElement:
    group: GradeGroup = field(compare=False)
    coords: tuple[int, ...]

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatchError(f"{other!r} is not in {self.group}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return self.group(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "GroupElement":
        return self.group(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.group == other.group and self.coords == other.coords

    def __hash__(self):
        return hash((self.group, self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"

    __str__ = __repr__


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


class Subgroup:
    """Subgroup generated by ``generators``; ``canonical_basis`` is the HNF of
    the lattice they span together with the torsion relations."""

    def __init__(self, group: GradeGroup, generators: Iterable[GroupElement] = ()):
        self.group = group
        self.generators = list(generators)
        for g in self.generators:
            if g.group != group:
                raise GroupMismatchError(f"{g} is not in {group}")
        rows = [list(g.coords) for g in self.generators] + group.relation_rows()
        self.canonical_basis = hermite_normal_form(rows, group.ngens)

    def _pivots(self):
        out = []
        for row in self.canonical_basis:
            j = next(j for j, v in enumerate(row) if v)
            out.append((j, row))
        return out

    def reduce(self, x: GroupElement) -> tuple[int, ...]:
        """Canonical coordinates of the coset ``x + S`` (lattice reduction)."""
        v = list(x.coords)
        for j, row in self._pivots():
            q = v[j] // row[j]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def __contains__(self, x: GroupElement) -> bool:
        if x.group != self.group:
            raise GroupMismatchError(f"{x} is not in {self.group}")
        return not any(self.reduce(x))

    contains = __contains__

    @property
    def index(self) -> float | int:
        if len(self.canonical_basis) < self.group.ngens:
            return math.inf
        return math.prod(row[j] for j, row in self._pivots())

    @property
    def order(self) -> float | int:
        if not self.group.is_finite:
            raise ValueError("subgroup order is only computed inside finite groups")
        return self.group.order // self.index

    def elements(self) -> list[GroupElement]:
        """Enumerate the subgroup (finite ambient group only)."""
        return [x for x in self.group.elements() if x in self]

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.group == other.group and self.canonical_basis == other.canonical_basis

    def __repr__(self):
        return f"Subgroup({self.group}, {self.generators})"


class InfiniteIndexError(ValueError):
    """Coset enumeration requested for a subgroup of infinite index."""


class CosetSpace:
    def __init__(self, group: GradeGroup, subgroup: Subgroup):
        self.parent = group
        self.subgroup = subgroup
        self.index = subgroup.index
        self.representatives: list[GroupElement] | None = None
        if self.index != math.inf:
            ranges = []
            diag = {j: row[j] for j, row in subgroup._pivots()}
            for j in range(group.ngens):
                ranges.append(range(diag[j]))
            self.representatives = [group(c) for c in itertools.product(*ranges)]

    def representative(self, x: GroupElement) -> GroupElement:
        return self.parent(self.subgroup.reduce(x))

    def position(self, x: GroupElement) -> int:
        if self.representatives is None:
            raise InfiniteIndexError("infinite index")
        return self.representatives.index(self.representative(x))

    def __iter__(self) -> Iterator[GroupElement]:
        if self.representatives is None:
            raise InfiniteIndexError("infinite index")
        return iter(self.representatives)

    def __len__(self):
        if self.representatives is None:
            raise InfiniteIndexError("infinite index")
        return len(self.representatives)


def coset_space(group: GradeGroup, subgroup: Subgroup) -> CosetSpace:
    cs = CosetSpace(group, subgroup)
    if cs.representatives is None:
        raise InfiniteIndexError(f"{subgroup} has infinite index in {group}")
    return cs


def subgroup_membership(s: Subgroup, x: GroupElement) -> bool:
    return x in s
