"""Shifted free modules, pattern matrices, shift isomorphism, bases over graded
division rings and the graded Morita identities."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gradedalg.constructions import ground_field, group_algebra, quaternion_algebra, upper_triangular
from gradedalg.corpus import morita_corpus, twisted_minus_one
from gradedalg.grade_group import GradeGroup
from gradedalg.linalg import GF, QQ
from gradedalg.modules import (DependencyError, PatternMatrix, ShiftedFreeModule, dimension_formula_check,
                               exhaustive_shift_iso, extend_homogeneous_basis, gamma_star_membership,
                               is_shift_iso, matching_shift_iso, span_dimension, verify_morita_identities,
                               verify_shift_witness)

Z2 = GradeGroup(0, (2,))
K4 = GradeGroup(0, (2, 2))


def test_pattern_matrix_examples():
    Q = ground_field(QQ, Z2)
    assert verify_shift_witness(PatternMatrix.identity(Q, [Z2(0), Z2(1)]))
    bad = PatternMatrix(Q, [[Q.unit, Q.zero()], [Q.zero(), Q.unit]], [Z2(0), Z2(1)], [Z2(0), Z2(0)])
    assert not verify_shift_witness(bad)
    D = group_algebra(GF(2), Z2)
    g = D.basis_vector(1)
    m = PatternMatrix(D, [[g, D.zero()], [D.zero(), g]], [Z2(1), Z2(1)], [Z2(0), Z2(0)])
    assert verify_shift_witness(m)


def test_shift_iso_examples():
    D = group_algebra(GF(5), Z2)
    assert matching_shift_iso(D, [Z2(0), Z2(1)], [Z2(0), Z2(0)]).verdict is True
    assert exhaustive_shift_iso(D, [Z2(0), Z2(1)], [Z2(0), Z2(0)]).verdict is True
    Q = ground_field(QQ, Z2)
    assert is_shift_iso(Q, [Z2(0), Z2(1)], [Z2(0), Z2(0)]).verdict is False
    H = quaternion_algebra(QQ, -1, -1)
    dec = is_shift_iso(H, [K4(1, 0)], [K4(1, 0)])
    assert dec.verdict is True and verify_shift_witness(dec.certificate["witness"])


def test_gamma_star_examples():
    assert gamma_star_membership(ground_field(QQ, Z2), [Z2(0), Z2(0)]).verdict is True
    Q4 = ground_field(QQ, K4)
    assert gamma_star_membership(Q4, K4.elements()).verdict is False
    R = group_algebra(QQ, Z2)
    assert gamma_star_membership(R, [Z2(0), Z2(1), Z2(1), Z2(0)]).verdict is True


@pytest.mark.parametrize("A", [group_algebra(GF(2), Z2), ground_field(GF(3), Z2), group_algebra(GF(5), Z2),
                               twisted_minus_one(GF(3))], ids=["F2[Z2]", "F3", "F5[Z2]", "F9"])
@pytest.mark.parametrize("n", [1, 2])
def test_matching_equals_exhaustive(A, n):
    count = 0
    for d in itertools.product(Z2.elements(), repeat=n):
        for a in itertools.product(Z2.elements(), repeat=n):
            m = matching_shift_iso(A, list(d), list(a))
            e = exhaustive_shift_iso(A, list(d), list(a))
            assert m.verdict is not None and m.verdict == e.verdict
            for dec in (m, e):
                if dec.verdict:
                    assert verify_shift_witness(dec.certificate["witness"])
            count += 1
    assert count == 4 ** n


def test_upper_triangular_shift_iso_undetermined_or_consistent():
    U = upper_triangular(GF(2))
    Z = U.group
    dec = exhaustive_shift_iso(U, [Z(0)], [Z(1)])
    assert dec.verdict is False


def test_extend_basis_examples():
    Q = ground_field(QQ)
    G = Q.group
    M1 = ShiftedFreeModule(Q, [G.zero])
    assert extend_homogeneous_basis(Q, M1, []) == [[Q.unit]]
    M2 = ShiftedFreeModule(Q, [G.zero, G.zero])
    one = Q.unit
    out = extend_homogeneous_basis(Q, M2, [[one, one]])
    assert out == [[one, one], [Q.zero(), one]]
    D = group_algebra(GF(2), Z2)
    M = ShiftedFreeModule(D, [Z2(0), Z2(1)])
    g = D.basis_vector(1)
    out = extend_homogeneous_basis(D, M, [[g, D.zero()]])
    assert len(out) == 2 and all(M.degree(v) is not None for v in out)
    assert span_dimension(D, M, out) == M.dim


def test_extend_basis_rejects_dependent_input():
    Q = ground_field(QQ)
    M = ShiftedFreeModule(Q, [Q.group.zero, Q.group.zero])
    v = [Q.unit, Q.unit]
    with pytest.raises(DependencyError):
        extend_homogeneous_basis(Q, M, [v, v])


def test_dimension_formula_examples():
    Q = ground_field(QQ)
    G = Q.group
    M = ShiftedFreeModule(Q, [G.zero, G.zero])
    e1, e2 = [Q.unit, Q.zero()], [Q.zero(), Q.unit]
    for N, expect in (([], (0, 2)), ([e1, e2], (2, 0)), ([e1], (1, 1))):
        rep = dimension_formula_check(Q, M, N)
        assert (rep.dim_sub, rep.dim_quotient) == expect and rep.ok


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([0, 1]), min_size=1, max_size=3), st.data())
def test_extended_basis_is_homogeneous_basis(shifts, data):
    """Oracle: the output spans M (ground-field rank) and each vector is homogeneous."""
    D = quaternion_algebra(QQ, -1, -1)
    G = D.group
    M = ShiftedFreeModule(D, [G(s, 0) for s in shifts])
    k = data.draw(st.integers(0, len(shifts)))
    vecs = []
    for i in range(k):
        # homogeneous vector: unit times a basis element in coordinate i
        b = data.draw(st.integers(0, 3))
        v = M.zero()
        v[i] = D.basis_vector(b)
        vecs.append(v)
    out = extend_homogeneous_basis(D, M, vecs)
    assert len(out) == M.rank
    assert all(M.degree(v) is not None for v in out)
    assert span_dimension(D, M, out) == M.dim
    assert dimension_formula_check(D, M, vecs).ok


@pytest.mark.parametrize("name,A,d", morita_corpus(), ids=[f"{n}-{[str(x) for x in d]}" for n, _, d in morita_corpus()])
def test_morita_identities(name, A, d):
    rep = verify_morita_identities(A, d)
    assert rep.ok, {k: v for k, v in rep.checks.items() if not v}
    assert any("degree" in k for k in rep.checks)


def test_morita_examples():
    assert verify_morita_identities(ground_field(QQ), [ground_field(QQ).group.zero]).ok
    assert verify_morita_identities(group_algebra(GF(3), Z2), [Z2(0), Z2(1)]).ok
    assert verify_morita_identities(quaternion_algebra(QQ, -1, -1), [K4(0, 0), K4(1, 1)]).ok
