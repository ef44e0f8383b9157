"""Independent brute-force references used by the tests.

Everything here avoids the package's exact linear algebra: scalars are
evaluated to complex numbers straight from their coefficient lists, ranks
come from numpy's SVD, and group facts are recomputed from raw products.
The oracles only count dimensions or compare numbers, so floating tolerance
never leaks into an exact assertion.
"""

from __future__ import annotations

import cmath
import itertools

import numpy as np

TOL = 1e-8


def to_complex(x) -> complex:
    n = x.order
    return sum(complex(c) * cmath.exp(2j * cmath.pi * i / n) for i, c in enumerate(x.coeffs))


def numeric_rank(rows: list[list[complex]], ncols: int) -> int:
    if not rows:
        return 0
    m = np.array(rows, dtype=complex).reshape(len(rows), ncols)
    s = np.linalg.svd(m, compute_uv=False)
    return int((s > TOL * max(1.0, s[0])).sum())


def numeric_nullity(rows: list[list[complex]], ncols: int) -> int:
    return ncols - numeric_rank(rows, ncols)


def adjoint_dim(H, K) -> int:
    """dim of {beta : H -> K | beta(k_-1 h) k_0 = k beta(h)}, from dense float tensors."""
    dH, dK = H.dim, K.dim
    mult_H = np.zeros((dH, dH, dH), dtype=complex)  # mult_H[a, h, x] = <e^x, e_a e_h>
    for a in range(dH):
        for h in range(dH):
            for x, c in H.mult[a][h].items():
                mult_H[a, h, x] = to_complex(c)
    mult_K = np.zeros((dK, dK, dK), dtype=complex)
    for i in range(dK):
        for j in range(dK):
            for k, c in K.mult[i][j].items():
                mult_K[i, j, k] = to_complex(c)
    coact = np.zeros((dK, dH, dK), dtype=complex)  # coact[k, a, k0]
    for k in range(dK):
        for (a, k0), c in K.coaction[k].items():
            coact[k, a, k0] = to_complex(c)
    # variables beta[x, p]; for each (k, h, out-coordinate q) one equation
    rows = []
    for k in range(dK):
        for h in range(dH):
            block = np.zeros((dK, dH, dK), dtype=complex)  # [q, x, p]
            # sum_{a,k0} coact[k,a,k0] mult_H[a,h,x] beta[x,p] mult_K[p,k0,q]
            block += np.einsum("ab,ax,pbq->qxp", coact[k], mult_H[:, h, :], mult_K)
            # - k beta(h): mult_K[k, p, q] beta[h, p]
            block[:, h, :] -= mult_K[k, :, :].T
            rows.extend(block.reshape(dK, dH * dK).tolist())
    return numeric_nullity(rows, dH * dK)


def conjugacy_class_count(G) -> int:
    seen, count = set(), 0
    for x in range(G.order):
        if x in seen:
            continue
        count += 1
        seen.update(G.mul(G.mul(g, x), G.inv(g)) for g in range(G.order))
    return count


def group_axioms_hold(G) -> bool:
    n = G.order
    e = G.identity
    for a, b, c in itertools.product(range(n), repeat=3):
        if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
            return False
    return all(G.mul(e, a) == a == G.mul(a, e) and G.mul(a, G.inv(a)) == e for a in range(n))


def right_cosets(G, F) -> set[frozenset]:
    return {frozenset(G.mul(f, g) for f in F.elements) for g in range(G.order)}


def cocycle_identity_holds(psi) -> bool:
    F = psi.domain
    G = F.parent
    for a, b, c in itertools.product(F.elements, repeat=3):
        lhs = to_complex(psi(a, b)) * to_complex(psi(G.mul(a, b), c))
        rhs = to_complex(psi(b, c)) * to_complex(psi(a, G.mul(b, c)))
        if abs(lhs - rhs) > TOL:
            return False
    return True


def c_psi_dim_numeric(G, F, psi) -> int:
    """Functions phi(s, g) on S x F invariant under the twisted right G-action, counted numerically."""
    reps, decomp = brute_cosets(G, F)
    keys = [(s, g) for s in reps for g in F.elements]
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for s, g in keys:
        for x in range(G.order):
            h, r = decomp[G.mul(s, G.inv(x))]
            g2 = G.mul(G.mul(G.inv(h), g), h)
            row = [0j] * len(keys)
            row[index[(s, g)]] += 1
            row[index[(r, g2)]] -= b_numeric(psi, G.inv(h), g2)
            rows.append(row)
    return numeric_nullity(rows, len(keys))


def b_numeric(psi, l, f) -> complex:
    """b(l, f) = psi(l, l^-1 f l) / psi(f, l)."""
    G = psi.domain.parent
    conj = G.mul(G.mul(G.inv(l), f), l)
    return to_complex(psi(l, conj)) / to_complex(psi(f, l))


def brute_cosets(G, F):
    """Representatives (least element of each right coset) and g -> (f, s) with g = f s."""
    reps = sorted({min(c) for c in right_cosets(G, F)})
    decomp = {}
    for g in range(G.order):
        for f in F.elements:
            s = G.mul(G.inv(f), g)
            if s in reps:
                decomp[g] = (f, s)
    return reps, decomp
