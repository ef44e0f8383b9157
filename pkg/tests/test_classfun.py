import pytest

from hopfchar.classfun import (
    c_psi_constraints,
    c_psi_space,
    c_psi_violations,
    cf_dual_model,
    class_functions,
    group_case_class_functions,
    group_theoretical_adjoint,
    group_theoretical_cf,
    yd_hom,
)
from hopfchar.cocycles import trivial_cocycle
from hopfchar.comodule import hopf_as_comodule_algebra, trivial_comodule_algebra
from hopfchar.exactfield import ONE
from hopfchar.groups import symmetric_group
from hopfchar.hopf import YDModule, adjoint_yd_on_H, group_hopf, trivial_yd, yd_map_failures
from hopfchar.io import bundled_path, comodule_algebra_from_json, hopf_from_json, load_cocycle, load_group, load_json, load_rep, resolve_subgroup
from conftest import example_instances
from oracles import c_psi_dim_numeric, conjugacy_class_count

GROUP_INSTANCES = [i for i in example_instances() if i.mode == "group"]
DUAL_INSTANCES = [i for i in example_instances() if i.mode == "dual-group"]


def ctx(group, sub=None, cocycle=None):
    G, subs, _ = load_group(group)
    F = resolve_subgroup(G, subs, sub)
    return G, F, load_cocycle(cocycle, G, F)


def sign_yd(H, G):
    """1-dim YD module over kG in degree 1 with the sign character of S3."""
    sign = {g: (ONE if G.element_order(g) != 2 else -ONE) for g in range(G.order)}
    return YDModule(H, 1, [[{0: sign[g]}] for g in range(G.order)], [{(G.identity, 0): ONE}])


def test_yd_hom_examples():
    G = symmetric_group(3)
    H = group_hopf(G)
    one = trivial_yd(H)
    assert yd_hom(one, one).dim == 1
    Had = adjoint_yd_on_H(H)
    assert yd_hom(Had, Had).dim == 3  # one simple summand per conjugacy class
    assert yd_hom(one, sign_yd(H, G)).dim == 0
    assert class_functions(H, hopf_as_comodule_algebra(H)).dim == 3


def test_yd_hom_basis_elements_intertwine():
    G = symmetric_group(3)
    H = group_hopf(G)
    Had = adjoint_yd_on_H(H)
    sp = yd_hom(Had, Had)
    for f in sp.basis:
        assert yd_map_failures(f, Had, Had) == []
        assert sp.contains(f)


def test_class_function_examples(small_group):
    G = small_group
    H = group_hopf(G)
    classes = conjugacy_class_count(G)
    assert class_functions(H, hopf_as_comodule_algebra(H)).dim == classes
    assert class_functions(H, trivial_comodule_algebra(H)).dim == 1
    assert c_psi_space(G, G.whole(), trivial_cocycle(G.whole())).dim == classes
    assert c_psi_space(G, G.trivial_subgroup(), trivial_cocycle(G.trivial_subgroup())).dim == 1


@pytest.mark.parametrize("inst", GROUP_INSTANCES, ids=lambda i: i.name)
def test_c_psi_matches_class_functions(inst):
    G, F, psi = inst.group, inst.subgroup, inst.psi
    model = c_psi_space(G, F, psi)
    assert model.dim == group_case_class_functions(G, F, psi).dim == c_psi_dim_numeric(G, F, psi)
    for phi in model.basis:
        assert c_psi_violations(model, phi) == []


def test_c_psi_violation_reported():
    G, F, psi = ctx("S3")
    model = c_psi_space(G, F, psi)
    # bump one value of the indicator of the transposition class
    phi = dict(next(b for b in model.basis if len(b) == 3))
    key = next(iter(phi))
    phi[key] = phi[key] + ONE
    assert c_psi_violations(model, phi)
    rows, keys = c_psi_constraints(G, F, psi)
    assert len(keys) == F.order


def test_pauli_twist_kills_class_functions():
    G, F, psi = ctx("Klein", cocycle="Klein-pauli")
    # only the identity class carries a psi-regular element
    assert c_psi_space(G, F, psi).dim == 1


@pytest.mark.parametrize("inst", DUAL_INSTANCES, ids=lambda i: i.name)
def test_dual_model(inst):
    dm = cf_dual_model(inst.group, inst.subgroup, inst.psi, inst.rep)
    assert dm.ok, dm.failures[:3]
    assert dm.dim == dm.brute_force_dim == inst.group.order // inst.subgroup.order


def test_dual_model_s3_a3_constant_function():
    G, F, psi = ctx("S3", "A3")
    dm = cf_dual_model(G, F, psi, load_rep("S3-A3-omega", psi))
    assert dm.brute_force_dim == 2
    constant = [{} for _ in dm.coset_maps[0]]
    for m in dm.coset_maps:
        for i, img in enumerate(m):
            for k, c in img.items():
                constant[i][k] = constant[i].get(k, 0) + c
    assert any(constant)


@pytest.mark.parametrize("inst", GROUP_INSTANCES, ids=lambda i: i.name)
def test_group_theoretical_object(inst):
    gt = group_theoretical_adjoint(inst.group, inst.subgroup, inst.psi)
    assert gt.mismatches() == []
    assert gt.dim == inst.group.order * inst.subgroup.order
    assert gt.formula.failures() == []


def test_group_theoretical_trivial_subgroup():
    G, F, psi = ctx("S3", "trivial")
    gt = group_theoretical_adjoint(G, F, psi)
    assert gt.dim == 6 and gt.mismatches() == []


def test_group_theoretical_end_dimensions():
    # End of S(kG, k_psi F) in the center counts double-coset data, not C_1(G, F)
    expected = {
        ("S3", None, None): (3, 3, 3),
        ("S3", "trivial", None): (6, 1, 1),
        ("S3", "A3", None): (6, 3, 3),
        ("Klein", None, "Klein-pauli"): (4, 4, 1),
    }
    for (g, sub, coc), dims in expected.items():
        gcf = group_theoretical_cf(*ctx(g, sub, coc))
        assert (gcf.dim_end, gcf.dim_c1, gcf.dim_cpsi) == dims


def test_sweedler_class_functions():
    H = hopf_from_json(load_json(bundled_path("hopf", "sweedler.json")))
    dims = {}
    for name in ["regular", "trivial", "group-part"]:
        K = comodule_algebra_from_json(load_json(bundled_path("algebras", f"sweedler-{name}.json")), H)
        dims[name] = class_functions(H, K).dim
    assert dims == {"regular": 2, "trivial": 1, "group-part": 0}
