"""Named example algebras used by the acceptance suite, the tests and
``corpus-run``.  Every entry is rebuilt from constructors, so the corpus is
deterministic and its AlgebraFile form round-trips byte for byte."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import GradedAlgebra, direct_product, matrix_shift
from .constructions import (ground_field, group_algebra, quaternion_algebra, small_groups,
                            twisted_group_algebra, upper_triangular)
from .grade_group import GradeGroup
from .linalg import QQ, GF, Field


def with_full_base(A: GradedAlgebra) -> GradedAlgebra:
    """A with the designated base R = A itself (for graded fields)."""
    return A.with_base([A.basis_vector(i) for i in range(A.dim)])


def extension_field_degree2(F: Field, c: int, d: int) -> GradedAlgebra:
    """k[x]/(x^2 - c x - d), trivially graded, basis 1, x."""
    G = GradeGroup()
    n = F.norm
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: n(F(d)), 1: n(F(c))}}
    return GradedAlgebra(F, G, [G.zero, G.zero], table, [1, 0], names=["1", "x"],
                         name=f"F{F.characteristic}[x]/(x^2-{c}x-{d})")


def field_square(F: Field) -> GradedAlgebra:
    """k × k, trivially graded."""
    k = ground_field(F)
    P = direct_product(k, k)
    P.name = f"F{F.characteristic}xF{F.characteristic}" if F.characteristic else "QxQ"
    return P


def shifted_matrix_01(F: Field) -> GradedAlgebra:
    """M_2(k)(0, 1) graded by Z2."""
    Z2 = GradeGroup(0, (2,))
    return matrix_shift(ground_field(F, Z2), [Z2(0), Z2(1)])


def twisted_minus_one(F: Field) -> GradedAlgebra:
    """k^α[Z2] with u^2 = -1: the Z2-graded field k(i) when -1 is not a square."""
    Z2 = GradeGroup(0, (2,))
    return twisted_group_algebra(F, Z2, {(Z2(1), Z2(1)): -1})


def finite_field_corpus(p: int) -> dict[str, GradedAlgebra]:
    """The small 𝔽_2 / 𝔽_3 corpus (every member has dimension ≤ 6)."""
    F = GF(p)
    Z2, Z3 = GradeGroup(0, (2,)), GradeGroup(0, (3,))
    out: dict[str, GradedAlgebra] = {}
    out[f"F{p}"] = ground_field(F)
    out[f"F{p}[Z2]"] = group_algebra(F, Z2)
    out[f"F{p}[Z3]"] = group_algebra(F, Z3)
    out[f"F{p}xF{p}"] = field_square(F)
    out[f"UT2(F{p})"] = upper_triangular(F)
    out[f"M2(F{p})(0,1)"] = shifted_matrix_01(F)
    if p == 2:
        out["F4"] = extension_field_degree2(F, 1, 1)
        out["F2[Z2xZ2]"] = group_algebra(F, GradeGroup(0, (2, 2)))
    elif p == 3:
        out["F9=F3^a[Z2]"] = twisted_minus_one(F)
        out["(-1,-1)_F3"] = quaternion_algebra(F, -1, -1)
    else:
        out[f"(-1,-1)_F{p}"] = quaternion_algebra(F, -1, -1)
    for name, A in out.items():
        A.name = name
    return out


def rational_corpus() -> dict[str, GradedAlgebra]:
    Z2, K4 = GradeGroup(0, (2,)), GradeGroup(0, (2, 2))
    R = group_algebra(QQ, Z2)
    out = {
        "Q": ground_field(QQ),
        "Q(Z2xZ2 trivial)": ground_field(QQ, K4),
        "Q[Z2]": R,
        "Q[S3]": group_algebra(QQ, small_groups()["S3"]),
        "H_Q": quaternion_algebra(QQ, -1, -1),
        "(1,1)_Q": quaternion_algebra(QQ, 1, 1),
        "(1,1)_F5": quaternion_algebra(GF(5), 1, 1),
        "M2(Q[Z2])(0,1)": matrix_shift(with_full_base(R), [Z2(0), Z2(1)]),
        "UT2(Q)": upper_triangular(QQ),
        "Q(i)": twisted_minus_one(QQ),
    }
    for name, A in out.items():
        A.name = name
    return out


@dataclass
class CentralSimpleCase:
    """A graded central simple algebra over its designated graded field base."""
    name: str
    algebra: GradedAlgebra
    rank: int  # rank over the base


def graded_central_simple_corpus() -> list[CentralSimpleCase]:
    Z2 = GradeGroup(0, (2,))
    R = with_full_base(group_algebra(QQ, Z2))
    R.name = "Q[Z2]"
    cases = [
        ("H_Q", quaternion_algebra(QQ, -1, -1), 4),
        ("(1,1)_Q", quaternion_algebra(QQ, 1, 1), 4),
        ("(1,1)_F5", quaternion_algebra(GF(5), 1, 1), 4),
        ("M2(Q[Z2])(0,1)", matrix_shift(R, [Z2(0), Z2(1)]), 4),
        ("F3^a[Z2] over itself", with_full_base(twisted_minus_one(GF(3))), 1),
        ("Q[Z2] over itself", R, 1),
    ]
    out = []
    for name, A, r in cases:
        A.name = name
        if A.base is None:
            A = A.with_base([A.unit])
        out.append(CentralSimpleCase(name, A, r))
    return out


def morita_corpus() -> list[tuple[str, GradedAlgebra, list]]:
    """(name, A, d) with n = len(d) ≤ 3 for the Morita identity checks."""
    Z2 = GradeGroup(0, (2,))
    K4 = GradeGroup(0, (2, 2))
    algebras = [
        ("F2[Z2]", group_algebra(GF(2), Z2), Z2),
        ("F3", ground_field(GF(3), Z2), Z2),
        ("Q[Z2]", group_algebra(QQ, Z2), Z2),
        ("F3^a[Z2]", twisted_minus_one(GF(3)), Z2),
        ("UT2(F2)", upper_triangular(GF(2)), GradeGroup(1)),
        ("H_Q", quaternion_algebra(QQ, -1, -1), K4),
    ]
    out = []
    for name, A, G in algebras:
        g = [x for x in G.elements()[:2]] if G.torsion else [G(0), G(1)]
        tuples = [[g[0]], [g[1]], [g[0], g[1]], [g[1], g[1]], [g[0], g[1], g[1]]]
        if G == K4:
            tuples = [[G(0, 0)], [G(1, 0)], [G(0, 0), G(1, 1)], [G(1, 0), G(0, 1), G(1, 1)]]
        for d in tuples:
            out.append((name, A, d))
    return out


def full_corpus() -> dict[str, GradedAlgebra]:
    """All named instances (finite-field corpora for 2 and 3 plus the ℚ corpus)."""
    out: dict[str, GradedAlgebra] = {}
    for p in (2, 3):
        out.update(finite_field_corpus(p))
    out.update(rational_corpus())
    return out


CORPUS_BUILDERS: dict[str, Callable[[], dict[str, GradedAlgebra]]] = {
    "F2": lambda: finite_field_corpus(2),
    "F3": lambda: finite_field_corpus(3),
    "Q": rational_corpus,
    "all": full_corpus,
}
