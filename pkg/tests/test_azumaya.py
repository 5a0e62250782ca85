"""Sandwich map, graded Azumaya decisions and the group-ring criterion."""
import pytest

from gradedalg.azumaya import azumaya_over_center, demeyer_janusz, is_graded_azumaya, psi_matrix
from gradedalg.constructions import full_matrix_algebra, group_algebra, small_groups
from gradedalg.corpus import graded_central_simple_corpus, twisted_minus_one, with_full_base
from gradedalg.grade_group import GradeGroup
from gradedalg.linalg import GF, QQ, rank
from gradedalg.constructions import quaternion_algebra

Z2 = GradeGroup(0, (2,))
CASES = graded_central_simple_corpus()


def test_psi_examples():
    R = with_full_base(group_algebra(QQ, Z2))
    P = psi_matrix(R)
    assert P.n == 1 and P.bijective
    H = quaternion_algebra(QQ, -1, -1)
    P = psi_matrix(H)
    assert P.k_rank == P.k_domain_dim == P.k_end_dim == 16
    Rq = group_algebra(QQ, Z2)
    P = psi_matrix(Rq.with_base([Rq.unit]))
    assert P.k_domain_dim == 4 and P.k_rank == 2 and not P.bijective


def test_psi_rank_equals_direct_sandwich_rank():
    """Oracle: rank of the span of x ↦ a x b over all basis pairs, computed by hand."""
    for case in CASES:
        A = case.algebra
        if len(A.base) != 1:
            continue
        mats = []
        for a in range(A.dim):
            for b in range(A.dim):
                col = [A.mul(A.mul(A.basis_vector(a), A.basis_vector(j)), A.basis_vector(b)) for j in range(A.dim)]
                mats.append([c for v in col for c in v])
        assert psi_matrix(A).k_rank == rank(A.field, mats, A.dim ** 2)


@pytest.mark.parametrize("case", CASES, ids=[c.name for c in CASES])
def test_graded_central_simple_is_graded_azumaya(case):
    rep = is_graded_azumaya(case.algebra)
    assert rep.verdict is True
    assert rep.psi_bijective and rep.psi_graded
    assert rep.certificate["rank_over_base"] == case.rank
    assert rep.certificate["k_rank"] == rep.certificate["domain_dim"] == rep.certificate["end_dim"]


def test_not_azumaya_examples():
    R = group_algebra(QQ, Z2)
    assert is_graded_azumaya(R.with_base([R.unit])).verdict is False
    F9 = twisted_minus_one(GF(3))
    rep = is_graded_azumaya(F9.with_base([F9.unit]))
    assert rep.verdict is False and rep.certificate["k_rank"] == 2


def test_azumaya_over_center_examples():
    assert azumaya_over_center(full_matrix_algebra(QQ, 2)).verdict is True
    assert azumaya_over_center(group_algebra(QQ, small_groups()["S3"])).verdict is True
    assert azumaya_over_center(group_algebra(GF(3), small_groups()["S3"])).verdict is False


def test_criterion_examples():
    S3 = small_groups()["S3"]
    assert demeyer_janusz(QQ, S3).verdict is True
    assert demeyer_janusz(GF(3), S3).verdict is False
    for G in small_groups().values():
        if G.is_abelian():
            assert demeyer_janusz(GF(2), G).verdict is True


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3), GF(5)], ids=["Q", "F2", "F3", "F5"])
@pytest.mark.parametrize("gname", sorted(small_groups()))
def test_criterion_matches_direct_check(F, gname):
    G = small_groups()[gname]
    assert demeyer_janusz(F, G).verdict == azumaya_over_center(group_algebra(F, G)).verdict
