"""Graded and ungraded K₀, base maps, torsion reports and D-functor axioms."""
import pytest
from hypothesis import given, settings, strategies as st

from gradedalg.algebra import matrix_shift
from gradedalg.constructions import ground_field, group_algebra, quaternion_algebra, small_groups, upper_triangular
from gradedalg.corpus import graded_central_simple_corpus, with_full_base
from gradedalg.grade_group import GradeGroup
from gradedalg.k0 import (K0Group, K0Map, UnsupportedRouteError, dfunctor_axiom_suite, eta_law, is_strongly_graded,
                          k0_ungraded, k0gr, k0gr_map, torsion_hypotheses, torsion_report)
from gradedalg.linalg import GF, QQ, invariant_factors

Z2 = GradeGroup(0, (2,))
K4 = GradeGroup(0, (2, 2))


def H():
    return quaternion_algebra(QQ, -1, -1)


def R():
    return with_full_base(group_algebra(QQ, Z2))


def M():
    return matrix_shift(R(), [Z2(0), Z2(1)])


def test_k0gr_examples():
    K = k0gr(H(), "division")
    assert K.rank == 1 and K.labels == ["(0,0)+Γ*"]
    assert k0gr(H(), "dade").rank == 1
    assert k0gr(ground_field(QQ, K4), "division").rank == 4
    assert k0gr(group_algebra(QQ, Z2)).rank == 1
    assert k0gr(group_algebra(GF(5), Z2), "dade").rank == 1
    assert k0gr(M(), "matrix").rank == 1 and k0gr(M(), "dade").rank == 1


def test_k0_ungraded_examples():
    assert k0_ungraded(group_algebra(QQ, small_groups()["S3"])).rank == 3
    assert k0_ungraded(H()).rank == 1
    assert k0_ungraded(group_algebra(QQ, Z2)).rank == 2


def test_strongly_graded_examples():
    assert is_strongly_graded(H()).verdict is True
    assert is_strongly_graded(ground_field(QQ, K4)).verdict is False
    assert is_strongly_graded(upper_triangular(QQ)).verdict is False
    assert is_strongly_graded(M()).verdict is True


def test_unsupported_route():
    with pytest.raises(UnsupportedRouteError):
        k0gr(upper_triangular(QQ))
    with pytest.raises(UnsupportedRouteError):
        k0gr_map(M(), "dade")  # degree-zero part ≅ M2(Q) is not commutative


def test_base_map_examples():
    assert k0gr_map(R()).matrix == [[1]]
    assert k0gr_map(H()).matrix == [[1, 1, 1, 1]]
    assert k0gr_map(H(), "dade").matrix == [[1, 1, 1, 1]]
    # [R] maps to [A] = [A e11] + [A e22], twice the indecomposable generator
    assert k0gr_map(M()).matrix == [[2]]


def _map(matrix):
    r, c = len(matrix), len(matrix[0])
    return K0Map(K0Group(c, [f"d{i}" for i in range(c)]), K0Group(r, [f"c{i}" for i in range(r)]), matrix)


def test_torsion_report_examples():
    for n in (1, 2, 4):
        t = torsion_report(_map([[1, 0], [0, 1]]), n)
        assert t.kernel_rank == 0 and t.cokernel_invariant_factors == [] and t.is_n2_torsion and t.localized_iso
    t = torsion_report(_map([[1, 1, 1, 1]]), 4)
    assert t.kernel_rank == 3 and not t.is_n2_torsion and not t.localized_iso
    t = torsion_report(k0gr_map(M()), 4)
    assert t.kernel_rank == 0 and t.cokernel_invariant_factors == [2] and t.is_n2_torsion and t.localized_iso


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.integers(1, 3).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))),
    st.integers(1, 4))
def test_torsion_report_properties(m, n):
    """Oracle: SNF invariants decide torsion; localized iso iff ZK = 0 and CK finite n-smooth."""
    t = torsion_report(_map(m), n)
    inv = invariant_factors(m, len(m[0]))
    assert t.kernel_rank == len(m[0]) - len(inv)
    assert t.cokernel_free_rank == len(m) - len(inv)
    assert t.cokernel_invariant_factors == [d for d in inv if d != 1]
    smooth = all(all(n % p == 0 for p in range(2, d + 1) if d % p == 0 and all(p % q for q in range(2, p)))
                 for d in inv)
    assert t.localized_iso == (t.kernel_rank == 0 and t.cokernel_free_rank == 0 and smooth)
    assert t.is_n2_torsion == (t.kernel_rank == 0 and t.cokernel_free_rank == 0
                               and all((n * n) % d == 0 for d in inv))


def test_hypotheses():
    h = torsion_hypotheses(H())
    assert h.holds is False and "Γ*" in h.reason and h.free_rank == 4
    h = torsion_hypotheses(M())
    assert h.holds is True and h.free_rank == 4
    h = torsion_hypotheses(R())
    assert h.holds is True and h.free_rank == 1


@pytest.mark.parametrize("k,d", [(1, None), (2, [Z2(0), Z2(1)]), (2, [Z2(0), Z2(0)]), (2, [Z2(1), Z2(1)])])
@pytest.mark.parametrize("which", ["R", "M"])
def test_dfunctor_axioms(which, k, d):
    A = R() if which == "R" else M()
    rep = dfunctor_axiom_suite(A, k, d)
    assert rep.hypothesis is True
    assert all(rep.axioms.values()), rep.axioms


def test_dfunctor_examples():
    rep = dfunctor_axiom_suite(R(), 2, [Z2(0), Z2(1)])
    assert rep.composite == [[2]]
    rep = dfunctor_axiom_suite(H(), 1)
    assert all(rep.axioms.values()) and rep.composite == [[1]]
    rep = dfunctor_axiom_suite(group_algebra(GF(3), Z2), 2, [Z2(0), Z2(0)])
    assert rep.composite == [[2]] and all(rep.axioms.values())


def test_eta_law():
    assert eta_law(R(), [Z2(0), Z2(1)], [Z2(1), Z2(1)])
    assert eta_law(M(), [Z2(0)], [Z2(1), Z2(0)])
    assert eta_law(H(), [K4(0, 0)], [K4(1, 0), K4(0, 1)])


@pytest.mark.parametrize("case", graded_central_simple_corpus(), ids=lambda c: c.name)
def test_corpus_torsion_conclusions(case):
    A = case.algebra
    hyp = torsion_hypotheses(A)
    if not hyp.holds:
        pytest.skip("hypothesis does not hold")
    try:
        m = k0gr_map(A)
    except UnsupportedRouteError:
        pytest.skip("no shift-class presentation")
    t = torsion_report(m, hyp.free_rank)
    assert t.is_n2_torsion and t.localized_iso
