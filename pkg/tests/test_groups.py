import itertools

import pytest

from hopfchar.groups import (
    GroupError,
    conjugacy_classes,
    cyclic_group,
    group_from_cayley,
    group_from_permutations,
    right_coset_reps,
    symmetric_group,
)
from oracles import conjugacy_class_count, group_axioms_hold, right_cosets


def all_subgroups(G):
    subs = set()
    for gens in itertools.combinations(range(G.order), 2):
        subs.add(G.generated_subgroup(gens).elements)
    return [G.subgroup(s) for s in sorted(subs)]


def test_cayley_c2():
    G = group_from_cayley(["e", "g"], [[0, 1], [1, 0]])
    assert G.order == 2 and G.identity == 0 and G.inv(1) == 1


def test_cayley_rejects_bad_tables():
    with pytest.raises(GroupError, match="associative|inverse|identity"):
        # a latin square with identity 0 that is not associative
        group_from_cayley(list("eabcd"), [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ])
    with pytest.raises(GroupError):
        group_from_cayley(["e", "g"], [[0, 1], [1, 1]])
    with pytest.raises(GroupError):
        group_from_cayley(["e", "g"], [[0, 1]])
    with pytest.raises(GroupError):
        group_from_cayley(["e", "e"], [[0, 1], [1, 0]])


def test_s3_from_table_matches_brute_force():
    S = symmetric_group(3)
    T = group_from_cayley(list(S.labels), [list(r) for r in S.cayley])
    assert T.order == 6 and T.identity == 0
    assert group_axioms_hold(T)


def test_permutation_closure():
    G = group_from_permutations(3, [[1, 0, 2], [1, 2, 0]])
    assert G.order == 6 and not G.is_abelian()
    assert group_from_permutations(3, []).order == 1
    C = group_from_permutations(4, [[1, 2, 3, 0]])
    assert C.order == 4 and C.is_abelian() and C.exponent() == 4
    with pytest.raises(GroupError):
        group_from_permutations(3, [[0, 0, 1]])
    with pytest.raises(GroupError, match="closure"):
        group_from_permutations(5, [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]], max_order=50)


def test_permutation_product_convention():
    # (gh)(i) = g(h(i)): element labels come from the cycle form of the tuple
    G = group_from_permutations(3, [[1, 0, 2], [1, 2, 0]])
    t = G.index("(0 1)")
    c = G.index("(0 1 2)")
    assert G.labels[G.mul(t, c)] == "(1 2)"


def test_named_groups_are_groups(small_group):
    assert group_axioms_hold(small_group)


def test_coset_examples():
    G = symmetric_group(3)
    A3 = G.generated_subgroup([G.index("(0 1 2)")])
    cos = right_coset_reps(G, A3)
    assert cos.index == 2 and cos.reps == (G.identity, 1)
    assert right_coset_reps(G, G.whole()).reps == (G.identity,)
    assert right_coset_reps(G, G.trivial_subgroup()).reps == tuple(range(6))


def test_cosets_against_brute_force(small_group):
    G = small_group
    for F in all_subgroups(G):
        cos = right_coset_reps(G, F)
        assert cos.index * F.order == G.order
        assert G.identity in cos.reps
        assert {frozenset(G.mul(f, s) for f in F.elements) for s in cos.reps} == right_cosets(G, F)
        for g in range(G.order):
            f, s = cos.decomp[g]
            assert f in F and s in cos.reps and G.mul(f, s) == g


def test_coset_rejects_foreign_subset():
    G = symmetric_group(3)
    with pytest.raises(GroupError):
        G.subgroup([0, 1, 2])


def test_conjugacy_classes(small_group):
    G = small_group
    classes = conjugacy_classes(G)
    assert len(classes) == conjugacy_class_count(G)
    assert sorted(x for c in classes for x in c) == list(range(G.order))
    if G.is_abelian():
        assert all(len(c) == 1 for c in classes)


def test_conjugacy_examples():
    assert sorted(map(len, conjugacy_classes(symmetric_group(3)))) == [1, 2, 3]
    assert conjugacy_classes(cyclic_group(1)) == [[0]]
