"""Instances and the verification battery behind ``hopfchar verify``.

An instance is a JSON object
``{"name", "mode": "group"|"dual-group", "group", "subgroup", "cocycle", "rep", "mutate"}``.
Each battery row checks one identity and reports ``pass``, ``fail`` (with a
witness) or ``skip``.  A ``mutate`` entry corrupts one tensor in the copy fed
to a single row, so that row and only that row must fail.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Any, Callable

from .adjoint import AdjointAlgebra, membership_failures, th11_witnesses, xi_maps
from .classfun import c_psi_constraints, c_psi_space, c_psi_violations, class_functions
from .closedforms import (
    commutation_space,
    dual_case_basis,
    dual_case_yd,
    group_case_basis,
    group_case_yd,
    spans_equal,
)
from .cocycles import TwoCocycle
from .comodule import ProjectiveRep, one_dim_rep
from .exactfield import ONE, ZERO, ExactMatrix, Span
from .groups import FiniteGroup, Subgroup
from .hopf import YDModule, regular_module, trivial_module, yd_change_basis, yd_check, yd_structures_equal
from .io import InputError, load_cocycle, load_group, load_json, load_rep, resolve_file, resolve_subgroup, subgroup_to_json

ROWS = ("yd-module", "sk-elements", "th11", "basis", "yetter-struct-group", "1dim-s", "yetter-struct-dualgroup", "scalars-phi", "fpdim")

MUTATIONS = {
    "yd.coaction": "yd-module",
    "adjoint.basis": "sk-elements",
    "braiding.yd": "th11",
    "closed.basis": "basis",
    "closed.group-action": "yetter-struct-group",
    "tf": "1dim-s",
    "closed.dual-coaction": "yetter-struct-dualgroup",
    "cpsi.basis": "scalars-phi",
    "adjoint.drop": "fpdim",
}


@dataclass
class Instance:
    name: str
    mode: str
    group: FiniteGroup
    group_name: str
    subgroup: Subgroup
    subgroup_name: str
    psi: TwoCocycle
    cocycle_name: str
    rep: ProjectiveRep | None = None
    rep_name: str | None = None
    mutate: str | None = None

    def describe(self) -> dict:
        out = {
            "name": self.name,
            "mode": self.mode,
            "group": self.group_name,
            "subgroup": subgroup_to_json(self.subgroup),
            "cocycle": self.cocycle_name,
        }
        if self.rep_name is not None:
            out["rep"] = self.rep_name
        if self.mutate:
            out["mutate"] = self.mutate
        return out


def trivial_rep(psi: TwoCocycle) -> ProjectiveRep:
    if any(x != ONE for row in psi.values for x in row):
        raise InputError("the trivial representation needs the trivial cocycle")
    return one_dim_rep(psi, {f: ONE for f in psi.domain.elements})


def build_instance(
    mode: str,
    group: str,
    subgroup: str | None = None,
    cocycle: str | None = None,
    rep: str | None = None,
    name: str | None = None,
    mutate: str | None = None,
) -> Instance:
    if mode not in ("group", "dual-group"):
        raise InputError(f"mode {mode!r}: expected 'group' or 'dual-group'")
    G, subs, gname = load_group(group)
    F = resolve_subgroup(G, subs, subgroup)
    psi = load_cocycle(cocycle, G, F)
    R = None
    if mode == "dual-group":
        if rep is None:
            raise InputError("dual-group mode needs --rep (a file, a bundled name, or 'trivial')")
        R = trivial_rep(psi) if rep == "trivial" else load_rep(rep, psi)
    if mutate is not None and mutate not in MUTATIONS:
        raise InputError(f"mutate {mutate!r}: expected one of {sorted(MUTATIONS)}")
    label = name or f"{gname}/{subgroup or 'whole'}/{cocycle or 'trivial'}" + (f"/{rep}" if rep else "")
    return Instance(label, mode, G, gname, F, subgroup or "whole", psi, cocycle or "trivial", R, rep, mutate)


def instance_from_json(obj: Any, where: str) -> Instance:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: instance must be an object")
    for key in ("mode", "group"):
        if key not in obj:
            raise InputError(f"{where}: missing field {key!r}")
    try:
        return build_instance(
            obj["mode"], obj["group"], obj.get("subgroup"), obj.get("cocycle"), obj.get("rep"), obj.get("name"), obj.get("mutate")
        )
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def load_suite(ref: str) -> list[Instance]:
    path = resolve_file(ref, "suites")
    obj = load_json(path)
    if not isinstance(obj, dict) or not isinstance(obj.get("instances"), list):
        raise InputError(f"{path}: expected {{\"instances\": [...]}}")
    return [instance_from_json(o, f"{path}: instances[{i}]") for i, o in enumerate(obj["instances"])]


# ---------------------------------------------------------------------------
# computation shared by the rows
# ---------------------------------------------------------------------------


@dataclass
class Computed:
    instance: Instance
    adjoint: AdjointAlgebra
    closed_basis: Any
    closed_yd: YDModule
    generic_in_closed: YDModule
    extras: dict = field(default_factory=dict)


def compute(inst: Instance) -> Computed:
    G, F, psi = inst.group, inst.subgroup, inst.psi
    if inst.mode == "group":
        B, A = group_case_basis(G, F, psi, check=False)
        closed = group_case_yd(B)
    else:
        B, A = dual_case_basis(G, F, psi, inst.rep, check=False)
        closed = dual_case_yd(B)
    generic = yd_change_basis(A.yd, [A.coords(v) for v in B.elements]) if Span(B.elements, A.hopf.dim * A.target.dim).dim == A.dim == len(B.elements) else None
    return Computed(inst, A, B, closed, generic)


def _scaled(v: dict, factor) -> dict:
    return {k: c * factor for k, c in v.items()}


def _mutated(c: Computed, tensor: str):
    return c.instance.mutate == tensor


Row = tuple[str, Any]


def _ok(witness=None) -> Row:
    return ("pass", witness) if witness is None else ("fail", witness)


def row_yd_module(c: Computed, full: bool) -> Row:
    V = c.adjoint.yd
    if _mutated(c, "yd.coaction"):
        V = copy.copy(V)
        V.coaction = [_scaled(V.coaction[0], ONE + ONE)] + list(V.coaction[1:])
    fails = yd_check(V, algebra=full)
    return _ok(repr(fails[0]) if fails else None)


def row_sk_elements(c: Computed, full: bool) -> Row:
    A = c.adjoint
    H, K, P = A.hopf, A.algebra, A.target
    vectors = [A.combine({i: ONE}) for i in range(A.dim)] + list(c.closed_basis.elements)
    if _mutated(c, "adjoint.basis"):
        v0 = dict(vectors[0])
        v0[0] = v0.get(0, ZERO) + ONE
        vectors[0] = v0
    for i, v in enumerate(vectors):
        fails = membership_failures(H, K, P, v)
        if fails:
            return _ok(f"vector {i}: (k, h) = {fails[0]}")
    return _ok()


def row_th11(c: Computed, full: bool) -> Row:
    A = c.adjoint
    w = th11_witnesses(A)
    if w:
        return _ok(f"(basis, h, k) = {w[0]}")
    yd = A.yd
    if _mutated(c, "braiding.yd"):
        yd = copy.copy(yd)
        yd.coaction = [_scaled(yd.coaction[0], ONE + ONE)] + list(yd.coaction[1:])
    modules = [regular_module(A.hopf)] + ([trivial_module(A.hopf)] if full else [])
    for X in modules:
        rep = xi_maps(A, X, yd)
        if not rep.ok:
            return _ok(f"module of dim {X.dim}: xi_l={rep.xi_l_injective} xi_r={rep.xi_r_injective} center={rep.sigma_matches_center}")
    return _ok()


def row_basis(c: Computed, full: bool) -> Row:
    elements = list(c.closed_basis.elements)
    if _mutated(c, "closed.basis"):
        v0 = dict(elements[0])
        k = min(v0)
        v0[k] = v0[k] * (ONE + ONE)
        elements[0] = v0
    n = len(elements)
    if n != c.adjoint.dim:
        return _ok(f"{n} closed-form elements against dimension {c.adjoint.dim}")
    if not spans_equal(elements, c.adjoint):
        return _ok("closed-form span differs from the solved space")
    return _ok()


def _compare_yd(c: Computed, closed: YDModule) -> Row:
    if c.generic_in_closed is None:
        return _ok("closed-form elements are not a basis")
    if not yd_structures_equal(closed, c.generic_in_closed, with_algebra=False):
        for h in range(closed.hopf.dim):
            for v in range(closed.dim):
                if closed.action[h][v] != c.generic_in_closed.action[h][v]:
                    return _ok(f"action of {closed.hopf.labels[h]} on {closed.labels[v]}")
        for v in range(closed.dim):
            if dict(closed.coaction[v]) != dict(c.generic_in_closed.coaction[v]):
                return _ok(f"coaction of {closed.labels[v]}")
    return _ok()


def row_struct_group(c: Computed, full: bool) -> Row:
    if c.instance.mode != "group":
        return ("skip", None)
    closed = c.closed_yd
    if _mutated(c, "closed.group-action"):
        closed = copy.copy(closed)
        closed.action = [list(r) for r in closed.action]
        h = closed.hopf.dim - 1
        closed.action[h][0] = _scaled(closed.action[h][0], ONE + ONE)
    return _compare_yd(c, closed)


def row_struct_dual(c: Computed, full: bool) -> Row:
    if c.instance.mode != "dual-group":
        return ("skip", None)
    closed = c.closed_yd
    if _mutated(c, "closed.dual-coaction"):
        closed = copy.copy(closed)
        closed.coaction = [_scaled(closed.coaction[0], ONE + ONE)] + list(closed.coaction[1:])
    return _compare_yd(c, closed)


def row_1dim_s(c: Computed, full: bool) -> Row:
    if c.instance.mode != "dual-group":
        return ("skip", None)
    B = c.closed_basis
    G = c.instance.group
    tf = dict(B.tf)
    if _mutated(c, "tf"):
        f = max(tf)
        tf[f] = tf[f] + ExactMatrix.identity(B.rep.dim)
    if tf[G.identity] != ExactMatrix.identity(B.rep.dim):
        return _ok("T_1 is not the identity")
    for f, T in sorted(tf.items()):
        sols = commutation_space(B.rep, f)
        if len(sols) != 1:
            return _ok(f"commutation space for {G.labels[f]} has dimension {len(sols)}")
        d = B.rep.dim
        flat = lambda M: {i * d + j: M[i, j] for i in range(d) for j in range(d) if M[i, j]}  # noqa: E731
        span = Span([flat(sols[0])], d * d)
        if not flat(T) or not span.contains(flat(T)):
            return _ok(f"T_{G.labels[f]} is not in the commutation space")
    return _ok()


def row_scalars_phi(c: Computed, full: bool) -> Row:
    if c.instance.mode != "group":
        return ("skip", None)
    inst = c.instance
    space = c_psi_space(inst.group, inst.subgroup, inst.psi)
    basis = [dict(phi) for phi in space.basis]
    if _mutated(c, "cpsi.basis"):
        rows, keys = c_psi_constraints(inst.group, inst.subgroup, inst.psi)
        target = next(keys[min(r)] for r in rows if len(r) > 1)
        basis[0][target] = basis[0].get(target, ZERO) + ONE
    for i, phi in enumerate(basis):
        bad = c_psi_violations(space, phi)
        if bad:
            return _ok(f"basis function {i} violates the constraint at {bad[0]}")
    cf = class_functions(c.adjoint.hopf, c.adjoint.algebra, A=c.adjoint).dim
    if cf != len(basis):
        return _ok(f"dim CF = {cf} but dim C_psi = {len(basis)}")
    return _ok()


def row_fpdim(c: Computed, full: bool) -> Row:
    d = c.adjoint.dim
    if _mutated(c, "adjoint.drop"):
        d -= 1
    if d != c.adjoint.hopf.dim:
        return _ok(f"dim S(H,K) = {d} but dim H = {c.adjoint.hopf.dim}")
    return _ok()


ROW_FUNCTIONS: dict[str, Callable[[Computed, bool], Row]] = {
    "yd-module": row_yd_module,
    "sk-elements": row_sk_elements,
    "th11": row_th11,
    "basis": row_basis,
    "yetter-struct-group": row_struct_group,
    "1dim-s": row_1dim_s,
    "yetter-struct-dualgroup": row_struct_dual,
    "scalars-phi": row_scalars_phi,
    "fpdim": row_fpdim,
}


def run_battery(inst: Instance, full: bool = False) -> dict:
    c = compute(inst)
    rows = {}
    for tag in ROWS:
        status, witness = ROW_FUNCTIONS[tag](c, full)
        rows[tag] = {"status": status} if witness is None else {"status": status, "witness": witness}
    return {"instance": inst.describe(), "rows": rows, "pass": all(r["status"] != "fail" for r in rows.values())}
