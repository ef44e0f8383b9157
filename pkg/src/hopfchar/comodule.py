"""Left comodule algebras, their modules and equivariant bimodules, internal Hom."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Mapping, Sequence

from .cocycles import TwoCocycle, cocycle_defects, normalization_defects
from .exactfield import (
    ONE,
    ZERO,
    CycNumber,
    ExactMatrix,
    Quotient,
    Span,
    nullspace_sparse,
    vec_axpy,
)
from .groups import CosetReps, FiniteGroup, Subgroup, right_coset_reps
from .hopf import HModule, HopfData, _add, dual_group_hopf, group_hopf


class ComoduleError(ValueError):
    pass


@dataclass
class ComoduleAlgebraData:
    hopf: HopfData
    dim: int
    mult: list[list[dict]]
    unit: dict
    coaction: list[dict]  # coaction[k] = {(h, k'): c}
    labels: list[str] | None = None

    def mul(self, u: Mapping, v: Mapping) -> dict:
        out: dict = {}
        for i, a in u.items():
            row = self.mult[i]
            for j, b in v.items():
                vec_axpy(out, row[j], a * b)
        return out

    def coact(self, v: Mapping) -> dict:
        out: dict = {}
        for i, c in v.items():
            for key, x in self.coaction[i].items():
                _add(out, key, c * x)
        return out

    def failures(self) -> list[tuple]:
        H = self.hopf
        d = self.dim
        E = [{i: ONE} for i in range(d)]
        fails: list[tuple] = []
        for i, j, k in product(range(d), repeat=3):
            if self.mul(self.mult[i][j], E[k]) != self.mul(E[i], self.mult[j][k]):
                fails.append(("associativity", i, j, k))
        for i in range(d):
            if self.mul(self.unit, E[i]) != E[i] or self.mul(E[i], self.unit) != E[i]:
                fails.append(("unit", i))
            left: dict = {}
            right: dict = {}
            cu: dict = {}
            for (h, k), c in self.coaction[i].items():
                for (a, b), x in H.comult[h].items():
                    _add(left, (a, b, k), c * x)
                for (b, k2), x in self.coaction[k].items():
                    _add(right, (h, b, k2), c * x)
                _add(cu, k, c * H.counit[h])
            if left != right:
                fails.append(("coassociativity", i))
            if cu != E[i]:
                fails.append(("counit", i))
        for i, j in product(range(d), repeat=2):
            lhs = self.coact(self.mult[i][j])
            rhs: dict = {}
            for (h1, k1), c in self.coaction[i].items():
                for (h2, k2), e in self.coaction[j].items():
                    for p, u in H.mult[h1][h2].items():
                        for q, v in self.mult[k1][k2].items():
                            _add(rhs, (p, q), c * e * u * v)
            if lhs != rhs:
                fails.append(("coaction_multiplicative", i, j))
        lu = self.coact(self.unit)
        uu: dict = {}
        for h, a in H.unit.items():
            for k, b in self.unit.items():
                _add(uu, (h, k), a * b)
        if lu != uu:
            fails.append(("coaction_unit",))
        return fails


def coinvariants(K: ComoduleAlgebraData) -> list[dict]:
    """Basis of {k : lambda(k) = 1 (x) k}."""
    H = K.hopf
    rows: dict = {}
    for k in range(K.dim):
        diff: dict = {}
        for key, c in K.coaction[k].items():
            _add(diff, key, c)
        for h, c in H.unit.items():
            _add(diff, (h, k), -c)
        for key, c in diff.items():
            rows.setdefault(key, {})[k] = c
    return nullspace_sparse(list(rows.values()), K.dim)


def hopf_as_comodule_algebra(H: HopfData) -> ComoduleAlgebraData:
    return ComoduleAlgebraData(H, H.dim, [list(r) for r in H.mult], dict(H.unit), [dict(c) for c in H.comult], list(H.labels))


def trivial_comodule_algebra(H: HopfData) -> ComoduleAlgebraData:
    return ComoduleAlgebraData(H, 1, [[{0: ONE}]], {0: ONE}, [{(h, 0): c for h, c in H.unit.items()}], ["1"])


def twisted_group_comodule_algebra(G: FiniteGroup, F: Subgroup, psi: TwoCocycle, H: HopfData | None = None) -> ComoduleAlgebraData:
    """k_psi F over kG: e_f e_h = psi(f,h) e_fh, lambda(e_f) = f (x) e_f.  Basis follows F's sorted elements."""
    if cocycle_defects(psi):
        raise ComoduleError("psi is not a 2-cocycle")
    H = H or group_hopf(G)
    pos = F.position
    mult = [[{pos[G.mul(f, h)]: psi(f, h)} for h in F.elements] for f in F.elements]
    coaction = [{(f, i): ONE} for i, f in enumerate(F.elements)]
    return ComoduleAlgebraData(H, F.order, mult, {pos[G.identity]: ONE}, coaction, [f"e[{G.labels[f]}]" for f in F.elements])


# ---------------------------------------------------------------------------
# projective representations
# ---------------------------------------------------------------------------


@dataclass
class ProjectiveRep:
    """rho(f) rho(h) = psi(f,h) rho(fh) for f, h in F."""

    psi: TwoCocycle
    dim: int
    matrices: dict[int, ExactMatrix]

    @property
    def subgroup(self) -> Subgroup:
        return self.psi.domain

    @cached_property
    def inverses(self) -> dict[int, ExactMatrix]:
        return {f: m.inverse() for f, m in self.matrices.items()}

    def relation_failures(self) -> list[tuple[int, int]]:
        G = self.subgroup.parent
        out = []
        for f in self.subgroup.elements:
            for h in self.subgroup.elements:
                lhs = self.matrices[f] @ self.matrices[h]
                rhs = self.matrices[G.mul(f, h)].scale(self.psi(f, h))
                if lhs != rhs:
                    out.append((f, h))
        return out

    def commutant_dim(self) -> int:
        d = self.dim
        rows = []
        for f in self.subgroup.elements:
            R = self.matrices[f]
            # (R X - X R)[i, j] with X[a, b] at index a*d+b
            for i in range(d):
                for j in range(d):
                    row: dict = {}
                    for a in range(d):
                        if R[i, a]:
                            _add(row, a * d + j, R[i, a])
                        if R[a, j]:
                            _add(row, i * d + a, -R[a, j])
                    if row:
                        rows.append(row)
        return len(nullspace_sparse(rows, d * d))

    def right_action(self, T: ExactMatrix, f: int) -> ExactMatrix:
        """End(V) right F-action by conjugation rho(f)^-1 T rho(f)."""
        return self.inverses[f] @ T @ self.matrices[f]


def simple_check(rep: ProjectiveRep) -> dict:
    fails = rep.relation_failures()
    if fails:
        return {"projective": False, "simple": False, "witness": fails[0], "commutant_dim": None}
    cd = rep.commutant_dim()
    return {"projective": True, "simple": cd == 1, "witness": None, "commutant_dim": cd}


def one_dim_rep(psi: TwoCocycle, values: Mapping[int, CycNumber]) -> ProjectiveRep:
    return ProjectiveRep(psi, 1, {f: ExactMatrix(1, 1, [[values[f]]]) for f in psi.domain.elements})


def direct_sum(rep: ProjectiveRep, other: ProjectiveRep) -> ProjectiveRep:
    d1, d2 = rep.dim, other.dim
    mats = {}
    for f in rep.subgroup.elements:
        ent = [[ZERO] * (d1 + d2) for _ in range(d1 + d2)]
        for i in range(d1):
            for j in range(d1):
                ent[i][j] = rep.matrices[f][i, j]
        for i in range(d2):
            for j in range(d2):
                ent[d1 + i][d1 + j] = other.matrices[f][i, j]
        mats[f] = ExactMatrix(d1 + d2, d1 + d2, ent)
    return ProjectiveRep(rep.psi, d1 + d2, mats)


# ---------------------------------------------------------------------------
# End(V) (x)_{kF} kG over k^G
# ---------------------------------------------------------------------------


@dataclass
class DualGroupComoduleAlgebra(ComoduleAlgebraData):
    """Basis E_ij (x) s at index pos(s)*d*d + i*d + j."""

    group: FiniteGroup | None = None
    cosets: CosetReps | None = None
    rep: ProjectiveRep | None = None

    def index(self, s: int, i: int, j: int) -> int:
        d = self.rep.dim
        return self.cosets.reps.index(s) * d * d + i * d + j

    def element(self, T: ExactMatrix, x: int) -> dict:
        """The class of T (x) x, rewritten as (T.f) (x) s where x = f s."""
        f, s = self.cosets.decomp[x]
        U = self.rep.right_action(T, f) if f != self.group.identity else T
        d = self.rep.dim
        base = self.cosets.reps.index(s) * d * d
        out = {}
        for i in range(d):
            for j in range(d):
                if U[i, j]:
                    out[base + i * d + j] = U[i, j]
        return out

    def matrix_part(self, v: Mapping, s: int) -> ExactMatrix:
        d = self.rep.dim
        base = self.cosets.reps.index(s) * d * d
        return ExactMatrix(d, d, [[v.get(base + i * d + j, ZERO) for j in range(d)] for i in range(d)])


def _matrix_unit(d: int, i: int, j: int) -> ExactMatrix:
    ent = [[ZERO] * d for _ in range(d)]
    ent[i][j] = ONE
    return ExactMatrix(d, d, ent)


def dual_group_comodule_algebra(G: FiniteGroup, F: Subgroup, psi: TwoCocycle, rep: ProjectiveRep, H: HopfData | None = None) -> DualGroupComoduleAlgebra:
    if rep.relation_failures():
        raise ComoduleError(f"V is not psi-projective: witness {rep.relation_failures()[0]}")
    if normalization_defects(psi):
        raise ComoduleError("psi must be normalized")
    H = H or dual_group_hopf(G)
    cos = right_coset_reps(G, F)
    d = rep.dim
    n = len(cos.reps) * d * d
    mult = [[dict() for _ in range(n)] for _ in range(n)]
    for a, s in enumerate(cos.reps):
        for i, j, k in product(range(d), repeat=3):
            mult[a * d * d + i * d + j][a * d * d + j * d + k] = {a * d * d + i * d + k: ONE}
    unit = {a * d * d + i * d + i: ONE for a in range(len(cos.reps)) for i in range(d)}
    labels = [f"E{i}{j}(x){G.labels[s]}" for s in cos.reps for i in range(d) for j in range(d)]
    K = DualGroupComoduleAlgebra(H, n, mult, unit, [], labels, G, cos, rep)
    units = {(i, j): _matrix_unit(d, i, j) for i in range(d) for j in range(d)}
    coaction = []
    for a, s in enumerate(cos.reps):
        for i in range(d):
            for j in range(d):
                acc: dict = {}
                for g in range(G.order):
                    for idx, c in K.element(units[(i, j)], G.mul(s, g)).items():
                        acc[(g, idx)] = c
                coaction.append(acc)
    K.coaction = coaction
    return K


# ---------------------------------------------------------------------------
# modules over K and equivariant bimodules
# ---------------------------------------------------------------------------


@dataclass
class KModule:
    algebra: ComoduleAlgebraData
    dim: int
    action: list[list[dict]]  # action[k][m]
    name: str = ""

    def act(self, k: Mapping, m: Mapping) -> dict:
        out: dict = {}
        for i, a in k.items():
            row = self.action[i]
            for j, b in m.items():
                vec_axpy(out, row[j], a * b)
        return out

    def failures(self) -> list[tuple]:
        K = self.algebra
        fails = []
        for m in range(self.dim):
            if self.act(K.unit, {m: ONE}) != {m: ONE}:
                fails.append(("unit", m))
            for a, b in product(range(K.dim), repeat=2):
                if self.act(K.mult[a][b], {m: ONE}) != self.act({a: ONE}, self.action[b][m]):
                    fails.append(("assoc", a, b, m))
        return fails


def left_regular_module(K: ComoduleAlgebraData) -> KModule:
    return KModule(K, K.dim, [[K.mult[k][m] for m in range(K.dim)] for k in range(K.dim)], "K")


def quotient_module(K: ComoduleAlgebraData, gens: Sequence[Mapping], name: str = "") -> KModule:
    """K / K*gens."""
    rel = [K.mul({k: ONE}, g) for g in gens for k in range(K.dim)]
    Q = Quotient(rel, K.dim)
    action = [[Q.project(K.mult[k][Q.basis_columns[m]]) for m in range(Q.dim)] for k in range(K.dim)]
    return KModule(K, Q.dim, action, name)


def left_ideal_module(K: ComoduleAlgebraData, gen: Mapping, name: str = "") -> KModule:
    """The left ideal K*gen as a module, in its echelon basis."""
    vecs = [K.mul({k: ONE}, gen) for k in range(K.dim)]
    from .exactfield import rref_sparse

    basis = list(rref_sparse(vecs).values())
    sp = Span(basis, K.dim)
    action = [[sp.coordinates(K.mul({k: ONE}, b)) for b in basis] for k in range(K.dim)]
    return KModule(K, len(basis), action, name)


def kmodule_hom_space(M: KModule, N: KModule) -> list[list[dict]]:
    """Basis of K-linear maps M -> N (list of images per map)."""
    K = M.algebra
    rows = []
    for k in range(K.dim):
        for m in range(M.dim):
            acc: dict = {}
            for m2, c in M.action[k][m].items():
                for n in range(N.dim):
                    _add(acc, (n, m2 * N.dim + n), c)
            for n in range(N.dim):
                for n2, c in N.action[k][n].items():
                    _add(acc, (n2, m * N.dim + n), -c)
            byrow: dict = {}
            for (n, var), c in acc.items():
                byrow.setdefault(n, {})[var] = c
            rows.extend(byrow.values())
    out = []
    for sol in nullspace_sparse(rows, M.dim * N.dim):
        images = [dict() for _ in range(M.dim)]
        for var, c in sol.items():
            images[var // N.dim][var % N.dim] = c
        out.append(images)
    return out


@dataclass
class EquivariantBimodule:
    """A K-bimodule with (optional) left H-coaction.  right[k][p] = p.k."""

    algebra: ComoduleAlgebraData
    dim: int
    left: list[list[dict]]
    right: list[list[dict]]
    coaction: list[dict] | None = None
    labels: list[str] | None = None

    def lact(self, k: Mapping, p: Mapping) -> dict:
        out: dict = {}
        for i, a in k.items():
            for j, b in p.items():
                vec_axpy(out, self.left[i][j], a * b)
        return out

    def ract(self, p: Mapping, k: Mapping) -> dict:
        out: dict = {}
        for i, a in k.items():
            for j, b in p.items():
                vec_axpy(out, self.right[i][j], a * b)
        return out

    def coact(self, p: Mapping) -> dict:
        out: dict = {}
        for i, c in p.items():
            for key, x in self.coaction[i].items():
                _add(out, key, c * x)
        return out

    def failures(self) -> list[tuple]:
        K = self.algebra
        H = K.hopf
        fails: list[tuple] = []
        E = [{i: ONE} for i in range(self.dim)]
        for p in range(self.dim):
            if self.lact(K.unit, E[p]) != E[p] or self.ract(E[p], K.unit) != E[p]:
                fails.append(("unit", p))
            for a, b in product(range(K.dim), repeat=2):
                if self.lact(K.mult[a][b], E[p]) != self.lact({a: ONE}, self.left[b][p]):
                    fails.append(("left_assoc", a, b, p))
                if self.ract(E[p], K.mult[a][b]) != self.ract(self.right[a][p], {b: ONE}):
                    fails.append(("right_assoc", a, b, p))
                if self.ract(self.left[a][p], {b: ONE}) != self.lact({a: ONE}, self.right[b][p]):
                    fails.append(("bimodule", a, b, p))
        if self.coaction is None:
            return fails
        for p in range(self.dim):
            lam = self.coaction[p]
            left: dict = {}
            right: dict = {}
            cu: dict = {}
            for (h, q), c in lam.items():
                for (a, b), x in H.comult[h].items():
                    _add(left, (a, b, q), c * x)
                for (b, q2), x in self.coaction[q].items():
                    _add(right, (h, b, q2), c * x)
                _add(cu, q, c * H.counit[h])
            if left != right:
                fails.append(("coassociativity", p))
            if cu != E[p]:
                fails.append(("counit", p))
            for a, b in product(range(K.dim), repeat=2):
                lhs = self.coact(self.ract(self.left[a][p], {b: ONE}))
                rhs: dict = {}
                for (ha, ka), c1 in K.coaction[a].items():
                    for (hp, q), c2 in lam.items():
                        for (hb, kb), c3 in K.coaction[b].items():
                            hh = H.mul(H.mult[ha][hp], {hb: ONE})
                            pp = self.ract(self.left[ka][q], {kb: ONE})
                            for x, u in hh.items():
                                for y, v in pp.items():
                                    _add(rhs, (x, y), c1 * c2 * c3 * u * v)
                if lhs != rhs:
                    fails.append(("equivariance", a, p, b))
        return fails


def regular_bimodule(K: ComoduleAlgebraData) -> EquivariantBimodule:
    d = K.dim
    left = [[K.mult[k][p] for p in range(d)] for k in range(d)]
    right = [[K.mult[p][k] for p in range(d)] for k in range(d)]
    return EquivariantBimodule(K, d, left, right, [dict(c) for c in K.coaction], K.labels)


def induced_bimodule(X: HModule, K: ComoduleAlgebraData) -> EquivariantBimodule:
    """X (x) K with s.(x (x) k).t = s_-1.x (x) s_0 k t (no coaction); index x*dK + k."""
    dK = K.dim
    n = X.dim * dK
    left = [[dict() for _ in range(n)] for _ in range(dK)]
    right = [[dict() for _ in range(n)] for _ in range(dK)]
    for s in range(dK):
        for x in range(X.dim):
            for k in range(dK):
                acc: dict = {}
                for (h, s0), c in K.coaction[s].items():
                    for x2, a in X.action[h][x].items():
                        for k2, b in K.mult[s0][k].items():
                            _add(acc, x2 * dK + k2, c * a * b)
                left[s][x * dK + k] = acc
                right[s][x * dK + k] = {x * dK + k2: c for k2, c in K.mult[k][s].items()}
    return EquivariantBimodule(K, n, left, right, None)


def yd_tensor_bimodule(V, K: ComoduleAlgebraData, P: EquivariantBimodule | None = None) -> EquivariantBimodule:
    """X (x) P with s.(x (x) p).t = s_-1.x (x) s_0.p.t, and coaction x_-1 p_-1 (x) x_0 (x) p_0 when V is YD.

    V may be an HModule (no coaction) or YDModule; P defaults to K.  Index x*dim(P)+p.
    """
    P = P or regular_bimodule(K)
    dP = P.dim
    n = V.dim * dP
    left = [[dict() for _ in range(n)] for _ in range(K.dim)]
    right = [[dict() for _ in range(n)] for _ in range(K.dim)]
    for s in range(K.dim):
        for x in range(V.dim):
            for p in range(dP):
                acc: dict = {}
                for (h, s0), c in K.coaction[s].items():
                    for x2, a in V.action[h][x].items():
                        for p2, b in P.left[s0][p].items():
                            _add(acc, x2 * dP + p2, c * a * b)
                left[s][x * dP + p] = acc
                right[s][x * dP + p] = {x * dP + p2: c for p2, c in P.right[s][p].items()}
    coaction = None
    if getattr(V, "coaction", None) is not None and P.coaction is not None:
        H = K.hopf
        coaction = []
        for x in range(V.dim):
            for p in range(dP):
                acc = {}
                for (hx, x0), c in V.coaction[x].items():
                    for (hp, p0), d in P.coaction[p].items():
                        for h, e in H.mult[hx][hp].items():
                            _add(acc, (h, x0 * dP + p0), c * d * e)
                coaction.append(acc)
    return EquivariantBimodule(K, n, left, right, coaction)


class RelativeTensor:
    """P (x)_K M as a quotient of P (x) M (index p*dim(M)+m)."""

    def __init__(self, P: EquivariantBimodule, M: KModule):
        self.P, self.M = P, M
        K = P.algebra
        dM = M.dim
        rels = []
        for p in range(P.dim):
            for k in range(K.dim):
                for m in range(dM):
                    r: dict = {}
                    for p2, c in P.right[k][p].items():
                        _add(r, p2 * dM + m, c)
                    for m2, c in M.action[k][m].items():
                        _add(r, p * dM + m2, -c)
                    if r:
                        rels.append(r)
        self.quotient = Quotient(rels, P.dim * dM)
        self.dim = self.quotient.dim

    def project(self, v: Mapping) -> dict:
        return self.quotient.project(v)

    def pure(self, p: Mapping, m: Mapping) -> dict:
        dM = self.M.dim
        v: dict = {}
        for i, a in p.items():
            for j, b in m.items():
                _add(v, i * dM + j, a * b)
        return self.project(v)

    def lift(self, q: int) -> tuple[int, int]:
        return divmod(self.quotient.basis_columns[q], self.M.dim)

    def left_action(self) -> list[list[dict]]:
        """K acts on the left factor; returns action[k][q]."""
        K = self.P.algebra
        out = []
        for k in range(K.dim):
            row = []
            for q in range(self.dim):
                p, m = self.lift(q)
                row.append(self.pure(self.P.left[k][p], {m: ONE}))
            out.append(row)
        return out

    def as_module(self) -> KModule:
        return KModule(self.P.algebra, self.dim, self.left_action())


def functor_on_map(T: "RelativeTensor", T2: "RelativeTensor", f: Sequence[Mapping]) -> list[dict]:
    """id_P (x) f : P (x)_K M -> P (x)_K N on quotient bases."""
    out = []
    for q in range(T.dim):
        p, m = T.lift(q)
        out.append(T2.pure({p: ONE}, f[m]))
    return out


# ---------------------------------------------------------------------------
# internal Hom  Hom_K(H (x) M, N)
# ---------------------------------------------------------------------------


@dataclass
class InternalHom:
    hopf: HopfData
    algebra: ComoduleAlgebraData
    M: KModule
    N: KModule
    basis: list[dict]  # over index (h*dM + m)*dN + n
    span: Span = field(repr=False)

    def evaluate(self, v: Mapping, h: int, m: int) -> dict:
        dM, dN = self.M.dim, self.N.dim
        base = (h * dM + m) * dN
        return {i - base: c for i, c in v.items() if base <= i < base + dN}

    def product(self, u: Mapping, v: Mapping) -> dict:
        """(f (x) T)(g (x) U) = fg (x) TU, i.e. h (x) m -> u(h1 (x) v(h2 (x) m))."""
        H = self.hopf
        dM = self.M.dim
        out: dict = {}
        for h in range(H.dim):
            for m in range(dM):
                for (a, b), c in H.comult[h].items():
                    inner = self.evaluate(v, b, m)
                    for m2, x in inner.items():
                        for n, y in self.evaluate(u, a, m2).items():
                            _add(out, (h * dM + m) * dM + n, c * x * y)
        return out

    def unit(self) -> dict:
        H = self.hopf
        dM = self.M.dim
        return {(h * dM + m) * dM + m: H.counit[h] for h in range(H.dim) if H.counit[h] for m in range(dM)}

    def act(self, h: int, v: Mapping) -> dict:
        """(h.alpha)(t (x) m) = alpha(th (x) m)."""
        H = self.hopf
        dM, dN = self.M.dim, self.N.dim
        out: dict = {}
        for t in range(H.dim):
            for y, c in H.mult[t][h].items():
                for m in range(dM):
                    for n, x in self.evaluate(v, y, m).items():
                        _add(out, (t * dM + m) * dN + n, c * x)
        return out

    def failures(self) -> list[tuple]:
        fails: list[tuple] = []
        H = self.hopf
        for i, b in enumerate(self.basis):
            for h in range(H.dim):
                if not self.span.contains(self.act(h, b)):
                    fails.append(("not_H_stable", h, i))
        if self.M is self.N:
            if not self.span.contains(self.unit()):
                fails.append(("unit_missing",))
            for i, a in enumerate(self.basis):
                if self.product(self.unit(), a) != a or self.product(a, self.unit()) != a:
                    fails.append(("unit_law", i))
                for j, b in enumerate(self.basis):
                    ab = self.product(a, b)
                    if not self.span.contains(ab):
                        fails.append(("not_closed", i, j))
                        continue
                    for h in range(H.dim):
                        lhs = self.act(h, ab)
                        rhs: dict = {}
                        for (x, y), c in H.comult[h].items():
                            vec_axpy(rhs, self.product(self.act(x, a), self.act(y, b)), c)
                        if lhs != rhs:
                            fails.append(("module_algebra", h, i, j))
        return fails


def internal_hom(H: HopfData, K: ComoduleAlgebraData, M: KModule, N: KModule) -> InternalHom:
    """Solve k.F(h (x) m) = F(k_-1 h (x) k_0 m) for F : H (x) M -> N."""
    dM, dN = M.dim, N.dim
    nvar = H.dim * dM * dN
    rows = []
    for k in range(K.dim):
        for h in range(H.dim):
            for m in range(dM):
                acc: dict = {}
                for (a, k0), c in K.coaction[k].items():
                    for x, u in H.mult[a][h].items():
                        for m2, v in M.action[k0][m].items():
                            for n in range(dN):
                                _add(acc, (n, (x * dM + m2) * dN + n), c * u * v)
                for n in range(dN):
                    for n2, w in N.action[k][n].items():
                        _add(acc, (n2, (h * dM + m) * dN + n), -w)
                byrow: dict = {}
                for (n, var), c in acc.items():
                    byrow.setdefault(n, {})[var] = c
                rows.extend(byrow.values())
    basis = nullspace_sparse(rows, nvar)
    return InternalHom(H, K, M, N, basis, Span(basis, nvar))
