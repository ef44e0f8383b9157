import itertools
from collections import Counter

import pytest

from hopfchar.adjoint import membership_failures
from hopfchar.closedforms import (
    ClosedFormMismatch,
    commutation_space,
    dual_case_basis,
    dual_case_check,
    dual_case_yd,
    group_case_basis,
    group_case_check,
    group_case_yd,
    spans_equal,
    t_f_solver,
)
from hopfchar.cocycles import trivial_cocycle
from hopfchar.comodule import direct_sum, one_dim_rep
from hopfchar.exactfield import ONE, ExactMatrix
from hopfchar.hopf import adjoint_yd_on_H, apply_map, group_hopf, yd_check
from hopfchar.io import load_cocycle, load_group, load_rep, resolve_subgroup
from conftest import example_instances


def ctx(group, sub=None, cocycle=None):
    G, subs, _ = load_group(group)
    F = resolve_subgroup(G, subs, sub)
    return G, F, load_cocycle(cocycle, G, F)


GROUP_INSTANCES = [i for i in example_instances() if i.mode == "group"]
DUAL_INSTANCES = [i for i in example_instances() if i.mode == "dual-group"]


def test_c2_abelian_basis():
    G, F, psi = ctx("C2")
    B, A = group_case_basis(G, F, psi)
    assert len(B.elements) == 2
    for (s, l), vec in zip(B.keys, B.elements):
        assert s == G.identity
        assert vec == {g * 2 + F.position[l]: ONE for g in range(2)}


def test_s3_a3_basis_and_grades():
    G, F, psi = ctx("S3", "A3")
    B, A = group_case_basis(G, F, psi)
    assert len(B.elements) == 6
    # the second representative is the first transposition in index order
    t = B.cosets.reps[1]
    assert {s for s, _ in B.keys} == {G.identity, t} and G.element_order(t) == 2
    V = group_case_yd(B)
    i = B.index(t, G.index("(0 1 2)"))
    assert V.coaction[i] == {(G.index("(0 2 1)"), i): ONE}
    assert B.name(i) == f"alpha[{G.labels[t]},(0 1 2)]"
    grades = Counter(h for c in V.coaction for (h, _) in c)
    expected = Counter(G.mul(G.mul(G.inv(s), f), s) for s in B.cosets.reps for f in F.elements)
    assert grades == expected


@pytest.mark.parametrize("inst", GROUP_INSTANCES, ids=lambda i: i.name)
def test_group_case_formula_matches_tensor(inst):
    B, A = group_case_basis(inst.group, inst.subgroup, inst.psi)
    for i in range(len(B.keys)):
        for x in range(inst.group.order):
            for h in inst.subgroup.elements:
                assert B.evaluate(i, x, h) == B.evaluate_formula(i, x, h)


@pytest.mark.parametrize("inst", GROUP_INSTANCES, ids=lambda i: i.name)
def test_group_case_structure(inst):
    res = group_case_check(inst.group, inst.subgroup, inst.psi)
    V = res["closed"]
    G = inst.group
    assert yd_check(V) == []
    # group-like coaction: each basis vector is homogeneous
    assert all(len(c) == 1 and next(iter(c))[1] == i for i, c in enumerate(V.coaction))
    # x.(y.alpha) = (xy).alpha
    for x, y in itertools.product(range(G.order), repeat=2):
        for i in range(V.dim):
            assert V.act({x: ONE}, V.action[y][i]) == V.action[G.mul(x, y)][i]


def test_whole_group_trivial_cocycle_is_conjugation():
    G, F, psi = ctx("S3")
    B, A = group_case_basis(G, F, psi)
    V = group_case_yd(B)
    for x, g in itertools.product(range(6), repeat=2):
        i = B.index(G.identity, g)
        assert V.action[x][i] == {B.index(G.identity, G.mul(G.mul(x, g), G.inv(x))): ONE}
    # matches H_ad through alpha[1,g] -> g
    Had = adjoint_yd_on_H(group_hopf(G))
    to_h = [{B.keys[i][1]: ONE} for i in range(V.dim)]
    for x in range(6):
        for i in range(V.dim):
            assert apply_map(to_h, V.action[x][i]) == Had.act({x: ONE}, to_h[i])


def test_corrupted_basis_is_rejected():
    G, F, psi = ctx("S3", "A3")
    B, A = group_case_basis(G, F, psi)
    broken = [dict(v) for v in B.elements]
    k = next(iter(broken[1]))
    broken[1][k] = broken[1][k] * 2
    assert not spans_equal(broken, A)


def test_t_f_examples():
    G, F, psi = ctx("Klein", cocycle="Klein-pauli")
    V = load_rep("Klein-pauli", psi)
    for f in F.elements:
        assert len(commutation_space(V, f)) == 1
        T = t_f_solver(V, f)
        # T_f is proportional to rho(f)
        R = V.matrices[f]
        ratio = None
        for i, j in itertools.product(range(2), repeat=2):
            if R[i, j]:
                ratio = ratio or T[i, j] / R[i, j]
                assert T[i, j] == ratio * R[i, j]
            else:
                assert not T[i, j]
    assert t_f_solver(V, G.identity) == ExactMatrix.identity(2)
    G, F, psi = ctx("S3", "A3")
    W = load_rep("S3-A3-omega", psi)
    assert all(t_f_solver(W, f) == ExactMatrix.identity(1) for f in F.elements)


def test_commutation_space_is_a_line_even_for_reducible_v():
    # End(W) is a simple algebra for any W, so T = rho(f) up to scalar regardless of simplicity
    G, F, psi = ctx("Klein", cocycle="Klein-pauli")
    V = load_rep("Klein-pauli", psi)
    W = direct_sum(V, V)
    for f in F.elements:
        (T,) = commutation_space(W, f)
        R = W.matrices[f]
        nz = next((i, j) for i in range(4) for j in range(4) if R[i, j])
        assert T == R.scale(T[nz] / R[nz])


def test_t_f_solver_rejects_degenerate_space(monkeypatch):
    import hopfchar.closedforms as cf

    G, F, psi = ctx("Klein", cocycle="Klein-pauli")
    V = load_rep("Klein-pauli", psi)
    monkeypatch.setattr(cf, "commutation_space", lambda rep, f: [])
    with pytest.raises(ClosedFormMismatch):
        cf.t_f_solver(V, G.index("a"))


def test_dual_regular_case():
    G, _, _ = ctx("S3")
    one = G.trivial_subgroup()
    psi = trivial_cocycle(one)
    B, A = dual_case_basis(G, one, psi, one_dim_rep(psi, {G.identity: ONE}))
    assert [f for f, _ in B.keys] == [G.identity] * 6
    V = dual_case_yd(B)
    for i, (f, s) in enumerate(B.keys):
        # coaction sum_a delta_a (x) alpha[(1, sa)]
        assert V.coaction[i] == {(a, B.index(G.identity, G.mul(s, a))): ONE for a in range(6)}


def test_dual_s3_a3_count():
    G, F, psi = ctx("S3", "A3")
    B, A = dual_case_basis(G, F, psi, load_rep("S3-A3-omega", psi))
    assert len(B.elements) == 6
    for v in B.elements:
        assert membership_failures(A.hopf, A.algebra, A.target, v) == []


@pytest.mark.parametrize("inst", DUAL_INSTANCES, ids=lambda i: i.name)
def test_dual_case_structure(inst):
    res = dual_case_check(inst.group, inst.subgroup, inst.psi, inst.rep)
    V = res["closed"]
    G = inst.group
    assert yd_check(V) == []
    B = res["basis"]
    for i, (f, s) in enumerate(B.keys):
        acting = [g for g in range(G.order) if V.action[g][i]]
        assert acting == [G.mul(G.mul(G.inv(s), f), s)]
        assert V.action[acting[0]][i] == {i: ONE}


@pytest.mark.parametrize("inst", GROUP_INSTANCES + DUAL_INSTANCES, ids=lambda i: i.name)
def test_spans_match_solver(inst):
    if inst.mode == "group":
        B, A = group_case_basis(inst.group, inst.subgroup, inst.psi, check=False)
    else:
        B, A = dual_case_basis(inst.group, inst.subgroup, inst.psi, inst.rep, check=False)
    assert spans_equal(B.elements, A)
    assert len(B.elements) == A.dim == inst.group.order
