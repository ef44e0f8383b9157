"""Explicit bases and Yetter-Drinfeld structures for H = kG and H = k^G.

Group case: K = k_psi F and the basis alpha[s,l], s a coset representative,
l in F.  Dual case: K = End(V) (x)_{kF} kG and the basis alpha[(f,s)].
Each construction is checked against the generic solver in ``adjoint``;
a mismatch raises ``ClosedFormMismatch``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .adjoint import AdjointAlgebra, adjoint_solve, membership_failures
from .cocycles import TwoCocycle, b_function, conjugation_fiber
from .comodule import (
    ComoduleAlgebraData,
    DualGroupComoduleAlgebra,
    ProjectiveRep,
    dual_group_comodule_algebra,
    twisted_group_comodule_algebra,
)
from .exactfield import ONE, ZERO, ExactMatrix, Span, nullspace_sparse
from .groups import CosetReps, FiniteGroup, Subgroup, right_coset_reps
from .hopf import HopfData, YDModule, _add, dual_group_hopf, group_hopf, yd_change_basis, yd_structures_equal


class ClosedFormMismatch(RuntimeError):
    pass


def spans_equal(vectors: list[dict], A: AdjointAlgebra) -> bool:
    """Exact mutual containment of span(vectors) and the solved space."""
    n = A.hopf.dim * A.target.dim
    mine = Span(vectors, n)
    return all(A.span.contains(v) for v in vectors) and all(mine.contains(b) for b in A.basis) and mine.dim == A.dim


# ---------------------------------------------------------------------------
# H = kG
# ---------------------------------------------------------------------------


@dataclass
class GroupCaseBasis:
    group: FiniteGroup
    subgroup: Subgroup
    psi: TwoCocycle
    cosets: CosetReps
    hopf: HopfData
    algebra: ComoduleAlgebraData
    keys: list[tuple[int, int]]  # (s, l) in reps-major order
    elements: list[dict]  # beta vectors over x*|F| + pos(f)

    def index(self, s: int, l: int) -> int:
        return self.keys.index((s, l))

    def name(self, i: int) -> str:
        s, l = self.keys[i]
        return f"alpha[{self.group.labels[s]},{self.group.labels[l]}]"

    def evaluate(self, i: int, x: int, h: int) -> dict:
        """alpha(x (x) e_h) from the stored tensor: beta(x) e_h."""
        pos = self.subgroup.position
        dF = self.subgroup.order
        beta = {u % dF: c for u, c in self.elements[i].items() if u // dF == x}
        return self.algebra.mul(beta, {pos[h]: ONE})

    def evaluate_formula(self, i: int, x: int, h: int) -> dict:
        """delta_{s,t} b(f, flf^-1) psi(flf^-1, h) e_{flf^-1 h} for x = f t."""
        G, psi = self.group, self.psi
        s, l = self.keys[i]
        f, t = self.cosets.decomp[x]
        if t != s:
            return {}
        c = G.prod(f, l, G.inv(f))
        return {self.subgroup.position[G.mul(c, h)]: b_function(psi, f, c) * psi(c, h)}


def group_case_basis(G: FiniteGroup, F: Subgroup, psi: TwoCocycle, check: bool = True) -> tuple[GroupCaseBasis, AdjointAlgebra]:
    H = group_hopf(G)
    K = twisted_group_comodule_algebra(G, F, psi, H)
    cos = right_coset_reps(G, F)
    pos = F.position
    dF = F.order
    keys, elements = [], []
    for s in cos.reps:
        for l in F.elements:
            vec: dict = {}
            for g, f in conjugation_fiber(F, l):
                _add(vec, G.mul(g, s) * dF + pos[f], b_function(psi, g, f))
            keys.append((s, l))
            elements.append(vec)
    B = GroupCaseBasis(G, F, psi, cos, H, K, keys, elements)
    A = adjoint_solve(H, K)
    if check and not spans_equal(elements, A):
        raise ClosedFormMismatch("alpha[s,l] do not span the solved adjoint space")
    return B, A


def group_case_yd(B: GroupCaseBasis) -> YDModule:
    """lambda(alpha[s,g]) = s^-1 g s (x) alpha[s,g];  x.alpha[s,g] = b(h^-1, h^-1 g h) alpha[r, h^-1 g h] where s x^-1 = h r."""
    G, psi = B.group, B.psi
    n = len(B.keys)
    coaction = [{(G.conj(s, g), i): ONE} for i, (s, g) in enumerate(B.keys)]
    action = []
    for x in range(G.order):
        row = []
        for s, g in B.keys:
            h, r = B.cosets.decomp[G.mul(s, G.inv(x))]
            hi = G.inv(h)
            g2 = G.conj(h, g)
            row.append({B.index(r, g2): b_function(psi, hi, g2)})
        action.append(row)
    return YDModule(B.hopf, n, action, coaction, labels=[B.name(i) for i in range(n)])


def group_case_check(G: FiniteGroup, F: Subgroup, psi: TwoCocycle) -> dict:
    B, A = group_case_basis(G, F, psi)
    closed = group_case_yd(B)
    generic = yd_change_basis(A.yd, [A.coords(v) for v in B.elements])
    if not yd_structures_equal(closed, generic, with_algebra=False):
        raise ClosedFormMismatch("closed-form kG structure differs from the generic one")
    return {"basis": B, "adjoint": A, "closed": closed, "generic": generic}


# ---------------------------------------------------------------------------
# H = k^G
# ---------------------------------------------------------------------------


def _normalize_first_entry(M: ExactMatrix) -> ExactMatrix:
    for row in M.entries:
        for x in row:
            if x:
                return M.scale(x.inverse())
    return M


def commutation_space(rep: ProjectiveRep, f: int) -> list[ExactMatrix]:
    """All T with U T = T (U.f) for every matrix unit U, where U.f = rho(f)^-1 U rho(f)."""
    d = rep.dim
    R, Ri = rep.matrices[f], rep.inverses[f]
    rows = []
    # U = E_ab:  (E_ab T)[i,j] = delta_ia T[b,j];  (T Ri E_ab R)[i,j] = (T Ri)[i,a] R[b,j]
    for a in range(d):
        for b in range(d):
            for i in range(d):
                for j in range(d):
                    row: dict = {}
                    if i == a:
                        _add(row, b * d + j, ONE)
                    if R[b, j]:
                        for m in range(d):
                            if Ri[m, a]:
                                _add(row, i * d + m, -(Ri[m, a] * R[b, j]))
                    if row:
                        rows.append(row)
    sols = nullspace_sparse(rows, d * d)
    return [ExactMatrix(d, d, [[v.get(i * d + j, ZERO) for j in range(d)] for i in range(d)]) for v in sols]


def t_f_solver(rep: ProjectiveRep, f: int) -> ExactMatrix:
    sols = commutation_space(rep, f)
    if len(sols) != 1:
        raise ClosedFormMismatch(f"commutation space for f={f} has dimension {len(sols)}, expected 1")
    G = rep.subgroup.parent
    if f == G.identity:
        return ExactMatrix.identity(rep.dim)
    return _normalize_first_entry(sols[0])


@dataclass
class DualCaseBasis:
    group: FiniteGroup
    subgroup: Subgroup
    psi: TwoCocycle
    rep: ProjectiveRep
    hopf: HopfData
    algebra: DualGroupComoduleAlgebra
    tf: dict[int, ExactMatrix]
    keys: list[tuple[int, int]]  # (f, s), reps-major
    elements: list[dict]  # beta vectors over y*dim(K) + k

    @property
    def cosets(self) -> CosetReps:
        return self.algebra.cosets

    def index(self, f: int, s: int) -> int:
        return self.keys.index((f, s))

    def name(self, i: int) -> str:
        f, s = self.keys[i]
        return f"alpha[({self.group.labels[f]},{self.group.labels[s]})]"


def dual_case_basis(G: FiniteGroup, F: Subgroup, psi: TwoCocycle, rep: ProjectiveRep, check: bool = True) -> tuple[DualCaseBasis, AdjointAlgebra]:
    """alpha[(f,s)] : delta_y -> delta_{y, s^-1 f s} (T_f (x) s)."""
    H = dual_group_hopf(G)
    K = dual_group_comodule_algebra(G, F, psi, rep, H)
    tf = {f: t_f_solver(rep, f) for f in F.elements}
    dK = K.dim
    keys, elements = [], []
    for s in K.cosets.reps:
        for f in F.elements:
            y = G.conj(s, f)
            vec = {y * dK + k: c for k, c in K.element(tf[f], s).items()}
            keys.append((f, s))
            elements.append(vec)
    B = DualCaseBasis(G, F, psi, rep, H, K, tf, keys, elements)
    A = adjoint_solve(H, K)
    if check:
        for v in elements:
            if membership_failures(H, K, A.target, v):
                raise ClosedFormMismatch("an alpha[(f,s)] violates the defining condition")
        if not spans_equal(elements, A):
            raise ClosedFormMismatch("alpha[(f,s)] do not span the solved adjoint space")
    return B, A


def dual_case_yd(B: DualCaseBasis) -> YDModule:
    """delta_g acts on alpha[(f,s)] by delta_{g, s^-1 f s}; the coaction component at delta_a is
    gamma_a : delta_y -> delta_{y, a^-1 s^-1 f s a} (T_f (x) sa), re-expressed in the basis."""
    G, K = B.group, B.algebra
    dK = K.dim
    n = len(B.keys)
    span = Span(B.elements, G.order * dK)
    action = []
    for g in range(G.order):
        row = []
        for f, s in B.keys:
            row.append({B.index(f, s): ONE} if g == G.conj(s, f) else {})
        action.append(row)
    coaction = []
    for f, s in B.keys:
        acc: dict = {}
        sfs = G.conj(s, f)
        for a in range(G.order):
            h = G.conj(a, sfs)
            gamma = {h * dK + k: c for k, c in K.element(B.tf[f], G.mul(s, a)).items()}
            for j, c in span.coordinates(gamma).items():
                _add(acc, (a, j), c)
        coaction.append(acc)
    return YDModule(B.hopf, n, action, coaction, labels=[B.name(i) for i in range(n)])


def dual_case_check(G: FiniteGroup, F: Subgroup, psi: TwoCocycle, rep: ProjectiveRep) -> dict:
    B, A = dual_case_basis(G, F, psi, rep)
    closed = dual_case_yd(B)
    generic = yd_change_basis(A.yd, [A.coords(v) for v in B.elements])
    if not yd_structures_equal(closed, generic, with_algebra=False):
        raise ClosedFormMismatch("closed-form k^G structure differs from the generic one")
    return {"basis": B, "adjoint": A, "closed": closed, "generic": generic}
