"""Grade groups, subgroups and coset spaces, checked against direct enumeration."""
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gradedalg.grade_group import CosetSpace, GradeGroup, InfiniteIndexError, Subgroup, coset_space

groups = st.builds(lambda f, t: GradeGroup(f, tuple(t)), st.integers(0, 2), st.lists(st.integers(2, 6), max_size=2))


def elements_of(G, bound=3):
    """Finite window of G for property checks."""
    ranges = [range(-bound, bound + 1)] * G.free_rank + [range(n) for n in G.torsion]
    return [G(c) for c in itertools.product(*ranges)]


def test_examples():
    K = GradeGroup(0, (2, 2))
    assert K(1, 0) + K(0, 1) == K(1, 1)
    Z4 = GradeGroup(0, (4,))
    assert Z4(3) + Z4(3) == Z4(2)
    Z = GradeGroup(1)
    assert Z(5) + Z(-5) == Z.zero


def test_subgroup_membership_examples():
    Z = GradeGroup(1)
    assert Z(4) in Subgroup(Z, [Z(2)])
    K = GradeGroup(0, (2, 2))
    assert K(1, 0) not in Subgroup(K, [K(1, 1)])
    Z4 = GradeGroup(0, (4,))
    assert Z4.zero in Subgroup(Z4, [])


def test_coset_examples():
    K = GradeGroup(0, (2, 2))
    assert len(coset_space(K, Subgroup(K, []))) == 4
    assert len(coset_space(K, Subgroup(K, [K(1, 1)]))) == 2
    Z = GradeGroup(1)
    assert len(coset_space(Z, Subgroup(Z, [Z(2)]))) == 2
    with pytest.raises(InfiniteIndexError):
        coset_space(Z, Subgroup(Z, []))


@settings(max_examples=60, deadline=None)
@given(groups, st.data())
def test_group_axioms(G, data):
    els = elements_of(G, 2)
    a, b, c = (data.draw(st.sampled_from(els)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + G.zero == a
    assert a + (-a) == G.zero
    assert a - b == a + (-b)


@settings(max_examples=60, deadline=None)
@given(groups, st.data())
def test_subgroup_membership_matches_enumeration(G, data):
    """Oracle: x ∈ ⟨S⟩ iff x is a small integer combination of S (within a window)."""
    els = elements_of(G, 2)
    gens = data.draw(st.lists(st.sampled_from(els), max_size=2))
    H = Subgroup(G, gens)
    window = set()
    for coeffs in itertools.product(range(-4, 5), repeat=len(gens)):
        x = G.zero
        for k, g in zip(coeffs, gens):
            x = x + g * k
        window.add(x)
    for x in window:
        assert x in H
    if G.is_finite:
        # in a finite group the window exhausts the subgroup
        full = {x for x in G.elements() if x in H}
        assert full == window or all(x in H for x in full)
        assert len(full) == H.order


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=2), st.data())
def test_coset_partition(tors, data):
    G = GradeGroup(0, tuple(tors))
    gens = data.draw(st.lists(st.sampled_from(G.elements()), max_size=2))
    H = Subgroup(G, gens)
    cs = coset_space(G, H)
    assert len(cs) * H.order == G.order
    for x in G.elements():
        r = cs.representative(x)
        assert x - r in H
        assert cs.position(x) == cs.position(r)
