"""Structural predicates against worked examples and brute-force oracles."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gradedalg.algebra import direct_product, embed_pair, matrix_shift, tensor_product
from gradedalg.constructions import (full_matrix_algebra, ground_field, group_algebra, quaternion_algebra,
                                     small_groups, upper_triangular)
from gradedalg.corpus import finite_field_corpus, full_corpus, graded_central_simple_corpus
from gradedalg.grade_group import GradeGroup
from gradedalg.k0 import k0_ungraded
from gradedalg.linalg import GF, QQ, Subspace
from gradedalg.structure import (brute_force_block_count, brute_force_graded_simple, brute_force_radical,
                                 center, graded_ideal_closure, graded_radical_part, invertible_support,
                                 is_graded_central_simple, is_graded_division_ring, is_graded_field,
                                 is_graded_simple, is_nilpotent_subspace, jacobson_radical)

K4 = GradeGroup(0, (2, 2))
Z2 = GradeGroup(0, (2,))
FINITE = {**finite_field_corpus(2), **finite_field_corpus(3)}


def H():
    return quaternion_algebra(QQ, -1, -1)


def span(A, vecs):
    return Subspace(A.field, A.dim, vecs)


# ------------------------------------------------------------ worked examples

def test_invertible_support_examples():
    assert invertible_support(H()).elements == set(K4.elements())
    assert invertible_support(ground_field(QQ, K4)).elements == {K4.zero}
    assert invertible_support(group_algebra(GF(2), Z2)).elements == {Z2(0), Z2(1)}


def test_ideal_closure_examples():
    A = H()
    assert graded_ideal_closure(A, [A.unit]).dim == 4
    assert graded_ideal_closure(A, [A.basis_vector(1)]).dim == 4
    U = upper_triangular(QQ)
    I = graded_ideal_closure(U, [U.basis_vector(1)])
    assert I == span(U, [U.basis_vector(1)])


def test_center_examples():
    Z = center(H())
    assert Z.dim == 1 and Z.by_degree() == {K4.zero: [H().unit]}
    M2 = full_matrix_algebra(QQ, 2)
    assert center(M2) == span(M2, [M2.unit])
    R = group_algebra(QQ, Z2)
    assert center(R).dim == 2


def test_radical_examples():
    assert jacobson_radical(full_matrix_algebra(QQ, 2)).dim == 0
    U = upper_triangular(QQ)
    assert jacobson_radical(U) == span(U, [U.basis_vector(1)])
    F2Z2 = group_algebra(GF(2), Z2)
    assert jacobson_radical(F2Z2) == span(F2Z2, [[1, 1]])
    assert graded_radical_part(F2Z2).dim == 0
    assert graded_radical_part(U) == span(U, [U.basis_vector(1)])
    assert graded_radical_part(H()).dim == 0


def test_graded_simple_examples():
    assert is_graded_simple(H()).verdict is True
    assert is_graded_simple(group_algebra(QQ, Z2)).verdict is True
    QxQ = direct_product(ground_field(QQ), ground_field(QQ))
    dec = is_graded_simple(QxQ)
    assert dec.verdict is False and 0 < len(dec.certificate["basis"]) < 2


def test_division_examples():
    assert is_graded_division_ring(H()).verdict is True
    assert is_graded_division_ring(group_algebra(GF(2), Z2)).verdict is True
    dec = is_graded_division_ring(full_matrix_algebra(QQ, 2))
    assert dec.verdict in (False, None)
    M2F3 = full_matrix_algebra(GF(3), 2)
    assert is_graded_division_ring(M2F3).verdict is False


def test_field_examples():
    assert is_graded_field(group_algebra(QQ, Z2)).verdict is True
    assert is_graded_field(H()).verdict is False
    assert is_graded_field(finite_field_corpus(3)["F9=F3^a[Z2]"]).verdict is True


def test_central_simple_examples():
    assert is_graded_central_simple(H()).verdict is True
    R = group_algebra(QQ, Z2)
    assert is_graded_central_simple(R.with_base([R.unit])).verdict is False
    for case in graded_central_simple_corpus():
        assert is_graded_central_simple(case.algebra).verdict is True, case.name


def test_quaternion_examples():
    split = quaternion_algebra(QQ, 1, 1)
    one_plus_i = split.add(split.unit, split.basis_vector(1))
    one_minus_i = split.sub(split.unit, split.basis_vector(1))
    assert split.mul(one_plus_i, one_minus_i) == split.zero()
    assert is_graded_simple(split).verdict is True
    F5 = quaternion_algebra(GF(5), -1, -1)
    assert is_graded_central_simple(F5).verdict is True
    assert brute_force_graded_simple(F5) is True


def test_wedderburn_block_counts():
    assert k0_ungraded(group_algebra(QQ, small_groups()["S3"])).rank == 3
    assert k0_ungraded(group_algebra(QQ, Z2)).rank == 2
    assert k0_ungraded(H()).rank == 1


# ------------------------------------------------------------ oracles

@pytest.mark.parametrize("name", sorted(FINITE))
def test_graded_simple_matches_oracle(name):
    A = FINITE[name]
    assert is_graded_simple(A).verdict == brute_force_graded_simple(A)


@pytest.mark.parametrize("name", sorted(FINITE))
def test_radical_matches_oracle(name):
    A = FINITE[name]
    assert jacobson_radical(A) == brute_force_radical(A)


@pytest.mark.parametrize("name", sorted(FINITE))
def test_block_count_matches_oracle(name):
    A = FINITE[name]
    assert k0_ungraded(A).rank == brute_force_block_count(A)


@pytest.mark.parametrize("name", sorted(FINITE))
def test_center_matches_enumeration(name):
    A = FINITE[name]
    p = A.field.p
    gens = [A.basis_vector(i) for i in range(A.dim)]
    central = [list(x) for x in itertools.product(range(p), repeat=A.dim)
               if all(A.mul(list(x), g) == A.mul(g, list(x)) for g in gens)]
    assert len(central) == p ** center(A).dim
    assert center(A) == span(A, central)


@pytest.mark.parametrize("name", sorted(FINITE))
def test_division_matches_enumeration(name):
    A = FINITE[name]
    p = A.field.p
    oracle = True
    for g, idx in A.components.items():
        for pt in itertools.product(range(p), repeat=len(idx)):
            if any(pt):
                v = A.embed_component(g, list(pt))
                if not any(A.mul(v, w) == A.unit and A.mul(w, v) == A.unit
                           for w in (list(y) for y in itertools.product(range(p), repeat=A.dim))):
                    oracle = False
    assert is_graded_division_ring(A).verdict is oracle


@pytest.mark.parametrize("name", sorted(full_corpus()))
def test_radical_is_nilpotent_ideal(name):
    A = full_corpus()[name]
    J = jacobson_radical(A)
    assert is_nilpotent_subspace(A, J)
    for v in J.basis:
        for i in range(A.dim):
            b = A.basis_vector(i)
            assert A.mul(b, v) in J and A.mul(v, b) in J


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(FINITE)), st.sampled_from(sorted(FINITE)))
def test_tensor_simplicity_and_center(a, b):
    A, B = FINITE[a], FINITE[b]
    if A.field != B.field:
        return
    X, Y = embed_pair(A, B)
    T = tensor_product(X, Y)
    assert is_graded_simple(T).verdict == brute_force_graded_simple(T)
    m = Y.dim
    ZxZ = [[X.field.norm(x * y) for x in u for y in v] for u in center(X).basis for v in center(Y).basis]
    assert center(T) == span(T, ZxZ)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(FINITE)), st.data())
def test_graded_ideal_closure_is_graded_ideal(name, data):
    A = FINITE[name]
    g = data.draw(st.sampled_from(sorted(A.components)))
    idx = A.components[g]
    coeffs = data.draw(st.lists(st.integers(0, A.field.p - 1), min_size=len(idx), max_size=len(idx)))
    v = A.embed_component(g, coeffs)
    I = graded_ideal_closure(A, [v])
    assert v in I
    for w in I.basis:
        for i in range(A.dim):
            assert A.mul(A.basis_vector(i), w) in I and A.mul(w, A.basis_vector(i)) in I
        for comp in A.components.values():
            assert [w[k] if k in comp else 0 for k in range(A.dim)] in I


def test_matrix_shift_is_graded_simple_over_f3_model():
    R = group_algebra(GF(3), Z2)
    M = matrix_shift(R, [Z2(0), Z2(1)])
    assert brute_force_graded_simple(M) is True
    assert is_graded_simple(M).verdict is True
