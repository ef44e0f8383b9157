"""Class functions as Yetter-Drinfeld morphisms, and their combinatorial models.

``class_functions`` is the brute-force side: it solves for all YD maps
S(H,K) -> S(H,H).  ``c_psi_space`` and ``cf_dual_model`` are the explicit
models and only use the group, cocycle and linear-algebra layers, so a
dimension match between the two is a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .adjoint import AdjointAlgebra, adjoint_solve, theta_transport
from .closedforms import (
    ClosedFormMismatch,
    DualCaseBasis,
    GroupCaseBasis,
    dual_case_basis,
    dual_case_yd,
    group_case_basis,
    group_case_yd,
)
from .cocycles import TwoCocycle, b_function, trivial_cocycle
from .comodule import EquivariantBimodule, ProjectiveRep, hopf_as_comodule_algebra, one_dim_rep, twisted_group_comodule_algebra
from .exactfield import ONE, CycNumber, Span, nullspace_sparse
from .groups import FiniteGroup, Subgroup, right_coset_reps
from .hopf import HopfData, YDModule, _add, group_hopf, maps_equal, yd_change_basis, yd_map_failures


@dataclass
class YDMorphismSpace:
    source: YDModule
    target: YDModule
    basis: list[list[dict]]  # each map is a list of images of source basis vectors

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: list[dict]) -> bool:
        n = self.source.dim * self.target.dim
        flat = lambda m: {v * self.target.dim + w: c for v, img in enumerate(m) for w, c in img.items()}  # noqa: E731
        return Span([flat(m) for m in self.basis], n).contains(flat(f))


def yd_hom(A: YDModule, B: YDModule) -> YDMorphismSpace:
    """All linear T: A -> B with T(h.a) = h.T(a) and (id (x) T) lambda(a) = lambda(T a)."""
    if A.hopf.dim != B.hopf.dim:
        raise ValueError("source and target live over different Hopf algebras")
    H = A.hopf
    dA, dB = A.dim, B.dim
    var = lambda a, b: a * dB + b  # noqa: E731  T(e_a) has coefficient T[b,a] on e_b
    rows: list[dict] = []

    def flush(acc: dict) -> None:
        byrow: dict = {}
        for (key, v), c in acc.items():
            byrow.setdefault(key, {})[v] = c
        rows.extend(r for r in byrow.values() if r)

    for a in range(dA):
        for h in range(H.dim):
            acc: dict = {}
            for a2, c in A.action[h][a].items():
                for b in range(dB):
                    _add(acc, (b, var(a2, b)), c)
            for b in range(dB):
                for b2, c in B.action[h][b].items():
                    _add(acc, (b2, var(a, b)), -c)
            flush(acc)
        acc = {}
        for (h, a2), c in A.coaction[a].items():
            for b in range(dB):
                _add(acc, ((h, b), var(a2, b)), c)
        for b in range(dB):
            for (h, b2), c in B.coaction[b].items():
                _add(acc, ((h, b2), var(a, b)), -c)
        flush(acc)
    sols = nullspace_sparse(rows, dA * dB)
    basis = []
    for s in sols:
        images = [dict() for _ in range(dA)]
        for v, c in s.items():
            images[v // dB][v % dB] = c
        basis.append(images)
    return YDMorphismSpace(A, B, basis)


def class_functions(H: HopfData, K, A: AdjointAlgebra | None = None, R: AdjointAlgebra | None = None) -> YDMorphismSpace:
    """CF = Hom_YD(S(H,K), S(H,H))."""
    A = A or adjoint_solve(H, K)
    R = R or adjoint_solve(H, hopf_as_comodule_algebra(H))
    return yd_hom(A.yd, R.yd)


# ---------------------------------------------------------------------------
# C_psi(G,F)
# ---------------------------------------------------------------------------


@dataclass
class CPsiSpace:
    group: FiniteGroup
    subgroup: Subgroup
    psi: TwoCocycle
    reps: list[int]
    basis: list[dict]  # functions (s, g) -> scalar

    @property
    def dim(self) -> int:
        return len(self.basis)


def c_psi_constraints(G: FiniteGroup, F: Subgroup, psi: TwoCocycle) -> tuple[list[dict], list[tuple[int, int]]]:
    """phi(s,g) = b(h^-1, h^-1 g h) phi(r, h^-1 g h) for every x with s x^-1 = h r.

    The scalar on the left, b(x, x s^-1 g s x^-1), is the b-function of the
    target S(kG,kG), whose cocycle is trivial, so it equals 1.
    """
    cos = right_coset_reps(G, F)
    keys = [(s, g) for s in cos.reps for g in F.elements]
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for s, g in keys:
        for x in range(G.order):
            h, r = cos.decomp[G.mul(s, G.inv(x))]
            g2 = G.conj(h, g)
            row: dict = {}
            _add(row, index[(s, g)], ONE)
            _add(row, index[(r, g2)], -b_function(psi, G.inv(h), g2))
            if row:
                rows.append(row)
    return rows, keys


def c_psi_space(G: FiniteGroup, F: Subgroup, psi: TwoCocycle) -> CPsiSpace:
    rows, keys = c_psi_constraints(G, F, psi)
    sols = nullspace_sparse(rows, len(keys))
    basis = [{keys[i]: c for i, c in v.items()} for v in sols]
    return CPsiSpace(G, F, psi, list(right_coset_reps(G, F).reps), basis)


def c_psi_violations(space: CPsiSpace, phi: dict) -> list[tuple]:
    rows, keys = c_psi_constraints(space.group, space.subgroup, space.psi)
    out = []
    for row in rows:
        total = CycNumber.rational(0)
        for i, c in row.items():
            total = total + c * phi.get(keys[i], CycNumber.rational(0))
        if total:
            out.append(tuple(keys[i] for i in row))
    return out


# ---------------------------------------------------------------------------
# the dual case: CF = k^S
# ---------------------------------------------------------------------------


@dataclass
class DualModel:
    source: DualCaseBasis
    target: DualCaseBasis
    source_yd: YDModule
    target_yd: YDModule
    coset_maps: list[list[dict]]  # one YD morphism per indicator of a coset
    failures: list[tuple] = field(default_factory=list)
    brute_force_dim: int = 0
    bijective: bool = False

    @property
    def dim(self) -> int:
        return len(self.coset_maps)

    @property
    def ok(self) -> bool:
        return not self.failures and self.bijective


def cf_dual_model(G: FiniteGroup, F: Subgroup, psi: TwoCocycle, rep: ProjectiveRep) -> DualModel:
    """For each coset function c on F\\G build alpha[(1,s)] -> sum_g c(F s g^-1) alpha[(1,g)], zero on f != 1."""
    src, _ = dual_case_basis(G, F, psi, rep)
    one = G.trivial_subgroup()
    tgt, _ = dual_case_basis(G, one, trivial_cocycle(one), one_dim_rep(trivial_cocycle(one), {G.identity: ONE}))
    src_yd, tgt_yd = dual_case_yd(src), dual_case_yd(tgt)
    cosets = src.cosets
    maps = []
    for rep_index in range(len(cosets.reps)):
        images = []
        for f, s in src.keys:
            img: dict = {}
            if f == G.identity:
                for g in range(G.order):
                    if cosets.coset_of(G.mul(s, G.inv(g))) == rep_index:
                        img[tgt.index(G.identity, g)] = ONE
            images.append(img)
        maps.append(images)
    fails = []
    for i, m in enumerate(maps):
        fails.extend((i,) + w for w in yd_map_failures(m, src_yd, tgt_yd))
    space = yd_hom(src_yd, tgt_yd)
    flat_maps = [{v * tgt_yd.dim + w: c for v, img in enumerate(m) for w, c in img.items()} for m in maps]
    independent = Span(flat_maps, src_yd.dim * tgt_yd.dim).dim == len(maps)
    bijective = independent and space.dim == len(maps) and all(space.contains(m) for m in maps)
    return DualModel(src, tgt, src_yd, tgt_yd, maps, fails, space.dim, bijective)


# ---------------------------------------------------------------------------
# the group-theoretical object S(kG, k_psi F) (x) k_psi F
# ---------------------------------------------------------------------------


@dataclass
class GroupTheoreticalObject:
    basis: GroupCaseBasis
    yd: YDModule
    formula: EquivariantBimodule
    transported: EquivariantBimodule

    @property
    def dim(self) -> int:
        return self.formula.dim

    def mismatches(self) -> list[str]:
        a, b = self.formula, self.transported
        out = []
        if a.dim != b.dim:
            return ["dim"]
        if not all(maps_equal(x, y) for x, y in zip(a.left, b.left)):
            out.append("left")
        if not all(maps_equal(x, y) for x, y in zip(a.right, b.right)):
            out.append("right")
        if [dict(c) for c in a.coaction] != [dict(c) for c in b.coaction]:
            out.append("coaction")
        return out


def group_theoretical_adjoint(G: FiniteGroup, F: Subgroup, psi: TwoCocycle) -> GroupTheoreticalObject:
    """Build alpha[s,f] (x) e_h two ways; index (basis index)*|F| + pos(h).

    (a) e_g.(alpha[s,f] (x) e_h).e_l = b(d^-1, d^-1 f d) psi(g,h) psi(gh,l) alpha[r, d^-1 f d] (x) e_ghl
        with s g^-1 = d r, and coaction s^-1 f s h.
    (b) theta transport of the YD module S(kG, k_psi F) over k_psi F.
    """
    B, A = group_case_basis(G, F, psi)
    closed = group_case_yd(B)
    generic = yd_change_basis(A.yd, [A.coords(v) for v in B.elements])
    if not maps_equal(sum(closed.action, []), sum(generic.action, [])):
        raise ClosedFormMismatch("group-case action differs from the generic one")
    K = B.algebra
    pos = F.position
    dF = F.order
    n = len(B.keys) * dF
    left = [[dict() for _ in range(n)] for _ in range(dF)]
    right = [[dict() for _ in range(n)] for _ in range(dF)]
    coaction = []
    for i, (s, f) in enumerate(B.keys):
        for h in F.elements:
            u = i * dF + pos[h]
            coaction.append({(G.mul(G.conj(s, f), h), u): ONE})
            for g in F.elements:
                d, r = B.cosets.decomp[G.mul(s, G.inv(g))]
                f2 = G.conj(d, f)
                c = b_function(psi, G.inv(d), f2) * psi(g, h)
                left[pos[g]][u] = {B.index(r, f2) * dF + pos[G.mul(g, h)]: c}
                right[pos[g]][u] = {i * dF + pos[G.mul(h, g)]: psi(h, g)}
    formula = EquivariantBimodule(K, n, left, right, coaction)
    transported = theta_transport(closed, K).bimodule
    return GroupTheoreticalObject(B, closed, formula, transported)


@dataclass
class GroupTheoreticalCF:
    dim_end: int
    dim_c1: int
    dim_cpsi: int
    end_basis: list[list[dict]]

    @property
    def matches_c1(self) -> bool:
        return self.dim_end == self.dim_c1

    @property
    def matches_cpsi(self) -> bool:
        return self.dim_end == self.dim_cpsi


def group_theoretical_cf(G: FiniteGroup, F: Subgroup, psi: TwoCocycle) -> GroupTheoreticalCF:
    """dim End_YD(S(kG, k_psi F)) against dim C_1(G,F) and dim C_psi(G,F)."""
    B, _ = group_case_basis(G, F, psi)
    V = group_case_yd(B)
    end = yd_hom(V, V)
    return GroupTheoreticalCF(end.dim, c_psi_space(G, F, trivial_cocycle(F)).dim, c_psi_space(G, F, psi).dim, end.basis)


def group_case_class_functions(G: FiniteGroup, F: Subgroup, psi: TwoCocycle) -> YDMorphismSpace:
    H = group_hopf(G)
    return class_functions(H, twisted_group_comodule_algebra(G, F, psi, H))


__all__ = [
    "YDMorphismSpace",
    "yd_hom",
    "class_functions",
    "CPsiSpace",
    "c_psi_space",
    "c_psi_violations",
    "DualModel",
    "cf_dual_model",
    "GroupTheoreticalObject",
    "group_theoretical_adjoint",
    "GroupTheoreticalCF",
    "group_theoretical_cf",
    "group_case_class_functions",
]
