"""Finite-dimensional Hopf algebras as structure tensors, and Yetter-Drinfeld modules.

Vectors are sparse dicts ``{basis index: CycNumber}``.  Linear maps are lists
of sparse image vectors, one per source basis element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .exactfield import (
    ONE,
    ZERO,
    CycNumber,
    ExactMatrix,
    Span,
    nullspace_sparse,
    rref_sparse,
    vec_axpy,
)
from .groups import FiniteGroup


class HopfError(ValueError):
    pass


def _add(acc: dict, key, c: CycNumber) -> None:
    if not c:
        return
    if key in acc:
        s = acc[key] + c
        if s:
            acc[key] = s
        else:
            del acc[key]
    else:
        acc[key] = c


def apply_map(images: Sequence[Mapping], v: Mapping) -> dict:
    """Apply a linear map (list of images of basis vectors) to a sparse vector."""
    out: dict = {}
    for i, c in v.items():
        vec_axpy(out, images[i], c)
    return out


def compose_maps(outer: Sequence[Mapping], inner: Sequence[Mapping]) -> list[dict]:
    return [apply_map(outer, v) for v in inner]


def identity_map(n: int) -> list[dict]:
    return [{i: ONE} for i in range(n)]


def maps_equal(a: Sequence[Mapping], b: Sequence[Mapping]) -> bool:
    return len(a) == len(b) and all(dict(x) == dict(y) for x, y in zip(a, b))


def map_to_matrix(images: Sequence[Mapping], target_dim: int) -> ExactMatrix:
    return ExactMatrix.from_sparse_columns(images, target_dim)


def map_is_invertible(images: Sequence[Mapping], target_dim: int) -> bool:
    return len(images) == target_dim and len(rref_sparse(images)) == target_dim


@dataclass
class HopfData:
    dim: int
    labels: list[str]
    mult: list[list[dict]]  # mult[i][j] = e_i e_j
    unit: dict
    comult: list[dict]  # comult[i] = {(a, b): c}
    counit: list[CycNumber]
    antipode: list[dict]  # antipode[i] = S(e_i)
    antipode_inverse: list[dict] | None = None

    def __post_init__(self):
        if self.antipode_inverse is None:
            m = map_to_matrix(self.antipode, self.dim)
            try:
                inv = m.inverse()
            except ZeroDivisionError:
                raise HopfError("antipode is not invertible") from None
            self.antipode_inverse = inv.sparse_columns()

    # -- linear extensions -------------------------------------------------

    def mul(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            row = self.mult[i]
            for j, b in v.items():
                vec_axpy(out, row[j], a * b)
        return out

    def mul_basis(self, i: int, j: int) -> dict:
        return self.mult[i][j]

    def S(self, u: Mapping) -> dict:
        return apply_map(self.antipode, u)

    def Sinv(self, u: Mapping) -> dict:
        return apply_map(self.antipode_inverse, u)

    def eps(self, u: Mapping) -> CycNumber:
        s = ZERO
        for i, c in u.items():
            if self.counit[i]:
                s = s + c * self.counit[i]
        return s

    def delta(self, u: Mapping) -> dict:
        out: dict = {}
        for i, c in u.items():
            for key, d in self.comult[i].items():
                _add(out, key, c * d)
        return out

    @cached_property
    def delta2(self) -> list[dict]:
        """(Delta x id) Delta on basis elements: {(a, b, c): coeff}."""
        out = []
        for i in range(self.dim):
            acc: dict = {}
            for (a, b), c in self.comult[i].items():
                for (a1, a2), d in self.comult[a].items():
                    _add(acc, (a1, a2, b), c * d)
            out.append(acc)
        return out

    @cached_property
    def delta3(self) -> list[dict]:
        out = []
        for i in range(self.dim):
            acc: dict = {}
            for (a, b, c), x in self.delta2[i].items():
                for (c1, c2), y in self.comult[c].items():
                    _add(acc, (a, b, c1, c2), x * y)
            out.append(acc)
        return out

    def basis(self, i: int) -> dict:
        return {i: ONE}

    def is_commutative(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i))


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------


def hopf_axiom_failures(H: HopfData) -> list[tuple]:
    """Exhaustive scan of the Hopf algebra axioms on basis elements."""
    d = H.dim
    fails: list[tuple] = []
    E = [{i: ONE} for i in range(d)]
    for i, j, k in product(range(d), repeat=3):
        if H.mul(H.mult[i][j], E[k]) != H.mul(E[i], H.mult[j][k]):
            fails.append(("associativity", i, j, k))
    for i in range(d):
        if H.mul(H.unit, E[i]) != E[i] or H.mul(E[i], H.unit) != E[i]:
            fails.append(("unit", i))
        left: dict = {}
        right: dict = {}
        for (a, b), c in H.comult[i].items():
            for (a1, a2), x in H.comult[a].items():
                _add(left, (a1, a2, b), c * x)
            for (b1, b2), x in H.comult[b].items():
                _add(right, (a, b1, b2), c * x)
        if left != right:
            fails.append(("coassociativity", i))
        l1: dict = {}
        r1: dict = {}
        for (a, b), c in H.comult[i].items():
            vec_axpy(l1, {b: ONE}, c * H.counit[a])
            vec_axpy(r1, {a: ONE}, c * H.counit[b])
        if l1 != E[i] or r1 != E[i]:
            fails.append(("counit", i))
        s_left: dict = {}
        s_right: dict = {}
        for (a, b), c in H.comult[i].items():
            vec_axpy(s_left, H.mul(H.S(E[a]), E[b]), c)
            vec_axpy(s_right, H.mul(E[a], H.S(E[b])), c)
        expect = {k: v * H.counit[i] for k, v in H.unit.items()} if H.counit[i] else {}
        if s_left != expect or s_right != expect:
            fails.append(("antipode", i))
        if apply_map(H.antipode_inverse, H.antipode[i]) != E[i]:
            fails.append(("antipode_inverse", i))
    for i, j in product(range(d), repeat=2):
        prod_delta = H.delta(H.mult[i][j])
        delta_prod: dict = {}
        for (a, b), c in H.comult[i].items():
            for (x, y), e in H.comult[j].items():
                m1 = H.mult[a][x]
                m2 = H.mult[b][y]
                for p, u in m1.items():
                    for q, v in m2.items():
                        _add(delta_prod, (p, q), c * e * u * v)
        if prod_delta != delta_prod:
            fails.append(("comult_multiplicative", i, j))
        if H.eps(H.mult[i][j]) != H.counit[i] * H.counit[j]:
            fails.append(("counit_multiplicative", i, j))
    du: dict = {}
    for i, c in H.unit.items():
        for key, x in H.comult[i].items():
            _add(du, key, c * x)
    uu: dict = {}
    for i, a in H.unit.items():
        for j, b in H.unit.items():
            _add(uu, (i, j), a * b)
    if du != uu:
        fails.append(("comult_unit",))
    if H.eps(H.unit) != ONE:
        fails.append(("counit_unit",))
    return fails


def check_hopf(H: HopfData) -> None:
    fails = hopf_axiom_failures(H)
    if fails:
        raise HopfError(f"Hopf axioms fail: {fails[:5]}")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def group_hopf(G: FiniteGroup) -> HopfData:
    n = G.order
    mult = [[{G.mul(a, b): ONE} for b in range(n)] for a in range(n)]
    return HopfData(
        dim=n,
        labels=list(G.labels),
        mult=mult,
        unit={G.identity: ONE},
        comult=[{(g, g): ONE} for g in range(n)],
        counit=[ONE] * n,
        antipode=[{G.inv(g): ONE} for g in range(n)],
        antipode_inverse=[{G.inv(g): ONE} for g in range(n)],
    )


def dual_group_hopf(G: FiniteGroup) -> HopfData:
    n = G.order
    mult = [[({a: ONE} if a == b else {}) for b in range(n)] for a in range(n)]
    comult = []
    for g in range(n):
        comult.append({(a, G.mul(G.inv(a), g)): ONE for a in range(n)})
    return HopfData(
        dim=n,
        labels=[f"d[{l}]" for l in G.labels],
        mult=mult,
        unit={g: ONE for g in range(n)},
        comult=comult,
        counit=[ONE if g == G.identity else ZERO for g in range(n)],
        antipode=[{G.inv(g): ONE} for g in range(n)],
        antipode_inverse=[{G.inv(g): ONE} for g in range(n)],
    )


def dual_hopf(H: HopfData) -> HopfData:
    """H* in the dual basis e^i: product dual to the coproduct and vice versa."""
    d = H.dim
    mult = [[{} for _ in range(d)] for _ in range(d)]
    for k in range(d):
        for (i, j), c in H.comult[k].items():
            _add(mult[i][j], k, c)
    comult = [dict() for _ in range(d)]
    for i in range(d):
        for j in range(d):
            for k, c in H.mult[i][j].items():
                _add(comult[k], (i, j), c)
    unit = {k: c for k, c in enumerate(H.counit) if c}
    counit = [H.unit.get(k, ZERO) for k in range(d)]
    antipode = [dict() for _ in range(d)]
    for k in range(d):
        for i, c in H.antipode[k].items():
            _add(antipode[i], k, c)
    anti_inv = [dict() for _ in range(d)]
    for k in range(d):
        for i, c in H.antipode_inverse[k].items():
            _add(anti_inv[i], k, c)
    return HopfData(d, [f"{l}*" for l in H.labels], mult, unit, comult, counit, antipode, anti_inv)


def trivial_hopf() -> HopfData:
    return HopfData(1, ["1"], [[{0: ONE}]], {0: ONE}, [{(0, 0): ONE}], [ONE], [{0: ONE}], [{0: ONE}])


# ---------------------------------------------------------------------------
# modules and Yetter-Drinfeld modules
# ---------------------------------------------------------------------------


@dataclass
class HModule:
    hopf: HopfData
    dim: int
    action: list[list[dict]]  # action[h][x] = e_h . e_x

    def act(self, h: Mapping, x: Mapping) -> dict:
        out: dict = {}
        for i, a in h.items():
            row = self.action[i]
            for j, b in x.items():
                vec_axpy(out, row[j], a * b)
        return out

    def failures(self) -> list[tuple]:
        H = self.hopf
        fails = []
        for x in range(self.dim):
            if self.act(H.unit, {x: ONE}) != {x: ONE}:
                fails.append(("module_unit", x))
            for h, g in product(range(H.dim), repeat=2):
                if self.act(H.mult[h][g], {x: ONE}) != self.act({h: ONE}, self.action[g][x]):
                    fails.append(("module_assoc", h, g, x))
        return fails


def regular_module(H: HopfData) -> HModule:
    return HModule(H, H.dim, [[H.mult[h][x] for x in range(H.dim)] for h in range(H.dim)])


def trivial_module(H: HopfData) -> HModule:
    return HModule(H, 1, [[({0: H.counit[h]} if H.counit[h] else {})] for h in range(H.dim)])


def tensor_modules(X: HModule, Y: HModule) -> HModule:
    """X (x) Y with h.(x (x) y) = h1.x (x) h2.y; index x*dim(Y)+y."""
    H = X.hopf
    act = []
    for h in range(H.dim):
        row = []
        for x in range(X.dim):
            for y in range(Y.dim):
                acc: dict = {}
                for (a, b), c in H.comult[h].items():
                    for p, u in X.action[a][x].items():
                        for q, v in Y.action[b][y].items():
                            _add(acc, p * Y.dim + q, c * u * v)
                row.append(acc)
        act.append(row)
    return HModule(H, X.dim * Y.dim, act)


def module_hom_space(X: HModule, Y: HModule) -> list[list[dict]]:
    """Basis of H-linear maps X -> Y, each a list of images."""
    H = X.hopf
    nvar = X.dim * Y.dim  # variable T[y, x] at index x*Y.dim + y
    rows = []
    for h in range(H.dim):
        for x in range(X.dim):
            # T(h.x) - h.T(x) = 0, coordinates y'
            acc: dict = {}
            for x2, c in X.action[h][x].items():
                for y in range(Y.dim):
                    _add(acc, (y, x2 * Y.dim + y), c)
            for y in range(Y.dim):
                for y2, c in Y.action[h][y].items():
                    _add(acc, (y2, x * Y.dim + y), -c)
            byrow: dict = {}
            for (y, var), c in acc.items():
                byrow.setdefault(y, {})[var] = c
            rows.extend(byrow.values())
    sols = nullspace_sparse(rows, nvar)
    out = []
    for s in sols:
        images = [dict() for _ in range(X.dim)]
        for var, c in s.items():
            images[var // Y.dim][var % Y.dim] = c
        out.append(images)
    return out


@dataclass
class YDModule:
    hopf: HopfData
    dim: int
    action: list[list[dict]]  # action[h][v]
    coaction: list[dict]  # coaction[v] = {(h, w): c}
    product: list[list[dict]] | None = None
    unit: dict | None = None
    labels: list[str] | None = None

    def act(self, h: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in h.items():
            row = self.action[i]
            for j, b in v.items():
                vec_axpy(out, row[j], a * b)
        return out

    def coact(self, v: Mapping) -> dict:
        out: dict = {}
        for i, c in v.items():
            for key, x in self.coaction[i].items():
                _add(out, key, c * x)
        return out

    def mul(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                vec_axpy(out, self.product[i][j], a * b)
        return out

    def as_module(self) -> HModule:
        return HModule(self.hopf, self.dim, self.action)


def yd_check(V: YDModule, algebra: bool = False) -> list[tuple]:
    """Every failed instance of the module, comodule and compatibility axioms.

    With ``algebra=True`` the product/unit are also checked to make V an
    algebra in the YD category (module algebra and comodule algebra).
    """
    H = V.hopf
    if len(V.action) != H.dim or any(len(r) != V.dim for r in V.action) or len(V.coaction) != V.dim:
        raise HopfError("YD tensors have the wrong shape")
    fails: list[tuple] = []
    E = [{i: ONE} for i in range(V.dim)]
    for v in range(V.dim):
        if V.act(H.unit, E[v]) != E[v]:
            fails.append(("module_unit", v))
        for h, g in product(range(H.dim), repeat=2):
            if V.act(H.mult[h][g], E[v]) != V.act({h: ONE}, V.action[g][v]):
                fails.append(("module_assoc", h, g, v))
        lam = V.coaction[v]
        left: dict = {}
        right: dict = {}
        cu: dict = {}
        for (h, w), c in lam.items():
            for (a, b), x in H.comult[h].items():
                _add(left, (a, b, w), c * x)
            for (b, w2), x in V.coaction[w].items():
                _add(right, (h, b, w2), c * x)
            _add(cu, w, c * H.counit[h])
        if left != right:
            fails.append(("comodule_coassoc", v))
        if cu != E[v]:
            fails.append(("comodule_counit", v))
        for h in range(H.dim):
            lhs = V.coact(V.action[h][v])
            rhs: dict = {}
            for (h1, h2, h3), c in H.delta2[h].items():
                s3 = H.antipode[h3]
                for (m, w), x in lam.items():
                    left_el = H.mul(H.mult[h1][m], s3)
                    acted = V.action[h2][w]
                    for a, y in left_el.items():
                        for b, z in acted.items():
                            _add(rhs, (a, b), c * x * y * z)
            if lhs != rhs:
                fails.append(("yd_compatibility", h, v))
    if algebra and V.product is not None:
        for u, w in product(range(V.dim), repeat=2):
            uw = V.product[u][w]
            for h in range(H.dim):
                lhs = V.act({h: ONE}, uw)
                rhs: dict = {}
                for (a, b), c in H.comult[h].items():
                    vec_axpy(rhs, V.mul(V.action[a][u], V.action[b][w]), c)
                if lhs != rhs:
                    fails.append(("module_algebra", h, u, w))
            lhs = V.coact(uw)
            rhs = {}
            for (h1, x1), c in V.coaction[u].items():
                for (h2, x2), d in V.coaction[w].items():
                    hh = H.mult[h1][h2]
                    xx = V.product[x1][x2]
                    for p, s in hh.items():
                        for q, t in xx.items():
                            _add(rhs, (p, q), c * d * s * t)
            if lhs != rhs:
                fails.append(("comodule_algebra", u, w))
    return fails


def adjoint_yd_on_H(H: HopfData) -> YDModule:
    """H_ad: h acts by h1 x S(h2), coaction is the coproduct, product is H's."""
    d = H.dim
    action = []
    for h in range(d):
        row = []
        for x in range(d):
            acc: dict = {}
            for (a, b), c in H.comult[h].items():
                vec_axpy(acc, H.mul(H.mult[a][x], H.antipode[b]), c)
            row.append(acc)
        action.append(row)
    return YDModule(H, d, action, [dict(H.comult[x]) for x in range(d)], [list(r) for r in H.mult], dict(H.unit), list(H.labels))


def adjoint_yd_on_Hdual(H: HopfData) -> YDModule:
    """H*_ad in the dual basis: (h.f)(x) = f(xh); <g, f_-1> f_0 = S(g1) f g2; convolution product."""
    d = H.dim
    D = dual_hopf(H)
    action = []
    for h in range(d):
        row = [dict() for _ in range(d)]
        # h . e^i = sum_x <e^i, x h> e^x
        for x in range(d):
            for i, c in H.mult[x][h].items():
                _add(row[i], x, c)
        action.append(row)
    coaction = []
    for f in range(d):
        acc: dict = {}
        for i in range(d):
            val: dict = {}
            for (a, b), c in D.comult[i].items():
                vec_axpy(val, D.mul(D.mul(D.antipode[a], {f: ONE}), {b: ONE}), c)
            for w, c in val.items():
                _add(acc, (i, w), c)
        coaction.append(acc)
    return YDModule(H, d, action, coaction, [list(r) for r in D.mult], dict(D.unit), list(D.labels))


def trivial_yd(H: HopfData) -> YDModule:
    return YDModule(
        H, 1, [[({0: H.counit[h]} if H.counit[h] else {})] for h in range(H.dim)], [dict(((k, 0), c) for k, c in H.unit.items())],
        [[{0: ONE}]], {0: ONE},
    )


def center_halfbraiding(V: YDModule, X: HModule) -> list[dict]:
    """sigma(v (x) x) = v_-1 . x (x) v_0 as a map V(x)X -> X(x)V (indices v*dX+x -> x'*dV+v')."""
    out = []
    for v in range(V.dim):
        for x in range(X.dim):
            acc: dict = {}
            for (h, w), c in V.coaction[v].items():
                for x2, d in X.action[h][x].items():
                    _add(acc, x2 * V.dim + w, c * d)
            out.append(acc)
    return out


def halfbraiding_failures(V: YDModule, X: HModule, Y: HModule, module_maps: Sequence[list] = ()) -> list[tuple]:
    """Invertibility, the hexagon instance on X(x)Y, H-linearity and naturality along given maps X -> Y."""
    fails: list[tuple] = []
    sx = center_halfbraiding(V, X)
    sy = center_halfbraiding(V, Y)
    if not map_is_invertible(sx, V.dim * X.dim):
        fails.append(("not_invertible",))
    XY = tensor_modules(X, Y)
    sxy = center_halfbraiding(V, XY)
    dv, dx, dy = V.dim, X.dim, Y.dim
    for v in range(dv):
        for x in range(dx):
            for y in range(dy):
                direct = sxy[v * dx * dy + x * dy + y]
                # (sigma_X (x) id_Y) then (id_X (x) sigma_Y)
                step: dict = {}
                for idx, c in sx[v * dx + x].items():
                    x2, w = divmod(idx, dv)
                    for idx2, d in sy[w * dy + y].items():
                        y2, w2 = divmod(idx2, dv)
                        _add(step, (x2 * dy + y2) * dv + w2, c * d)
                if direct != step:
                    fails.append(("hexagon", v, x, y))
    # H-linearity: sigma is a module map for the diagonal actions
    VX = tensor_modules(V.as_module(), X)
    XV = tensor_modules(X, V.as_module())
    for h in range(V.hopf.dim):
        for i in range(dv * dx):
            if apply_map(sx, VX.action[h][i]) != XV.act({h: ONE}, sx[i]):
                fails.append(("not_module_map", h, i))
    for f in module_maps:
        for v in range(dv):
            for x in range(dx):
                lhs: dict = {}
                for idx, c in sx[v * dx + x].items():
                    x2, w = divmod(idx, dv)
                    for y2, d in f[x2].items():
                        _add(lhs, y2 * dv + w, c * d)
                rhs: dict = {}
                for y2, d in f[x].items():
                    vec_axpy(rhs, sy[v * dy + y2], d)
                if lhs != rhs:
                    fails.append(("naturality", v, x))
    return fails


def yd_change_basis(V: YDModule, basis: Sequence[Mapping]) -> YDModule:
    """Re-express V's structure in a new basis given as vectors of V."""
    span = Span(basis, V.dim)
    if not span.independent or span.dim != V.dim:
        raise HopfError("change of basis is not invertible")
    n = len(basis)
    action = [[span.coordinates(V.act({h: ONE}, b)) for b in basis] for h in range(V.hopf.dim)]
    coaction = []
    for b in basis:
        lam = V.coact(b)
        byh: dict = {}
        for (h, w), c in lam.items():
            byh.setdefault(h, {})[w] = c
        acc: dict = {}
        for h, vec in byh.items():
            for j, c in span.coordinates(vec).items():
                _add(acc, (h, j), c)
        coaction.append(acc)
    product_t = None
    unit = None
    if V.product is not None:
        product_t = [[span.coordinates(V.mul(a, b)) for b in basis] for a in basis]
        unit = span.coordinates(V.unit)
    return YDModule(V.hopf, n, action, coaction, product_t, unit)


def yd_structures_equal(A: YDModule, B: YDModule, with_algebra: bool = True) -> bool:
    if A.dim != B.dim:
        return False
    same = all(maps_equal(ra, rb) for ra, rb in zip(A.action, B.action)) and all(
        dict(a) == dict(b) for a, b in zip(A.coaction, B.coaction)
    )
    if with_algebra and A.product is not None and B.product is not None:
        same = same and all(maps_equal(ra, rb) for ra, rb in zip(A.product, B.product)) and A.unit == B.unit
    return same


def yd_map_failures(f: Sequence[Mapping], A: YDModule, B: YDModule, algebra: bool = False) -> list[tuple]:
    """Where a linear map A -> B fails to intertwine action, coaction (and product/unit)."""
    H = A.hopf
    fails: list[tuple] = []
    for v in range(A.dim):
        for h in range(H.dim):
            if apply_map(f, A.action[h][v]) != B.act({h: ONE}, f[v]):
                fails.append(("action", h, v))
        lhs: dict = {}
        for (h, w), c in A.coaction[v].items():
            for w2, d in f[w].items():
                _add(lhs, (h, w2), c * d)
        if lhs != B.coact(f[v]):
            fails.append(("coaction", v))
    if algebra:
        for u in range(A.dim):
            for v in range(A.dim):
                if apply_map(f, A.product[u][v]) != B.mul(f[u], f[v]):
                    fails.append(("product", u, v))
        if apply_map(f, A.unit) != B.unit:
            fails.append(("unit",))
    return fails
