"""Two-cocycles on a subgroup, their normalization, and the twisted conjugation scalar."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .exactfield import ONE, CycNumber, as_cyc, cyc_sqrt
from .groups import Subgroup


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class TwoCocycle:
    """psi: F x F -> k^x, stored as a table over F's sorted elements."""

    domain: Subgroup
    values: tuple[tuple[CycNumber, ...], ...]

    def __post_init__(self):
        n = self.domain.order
        if len(self.values) != n or any(len(r) != n for r in self.values):
            raise CocycleError(f"cocycle table must be {n} x {n}")
        for r in self.values:
            for x in r:
                if not x:
                    raise CocycleError("cocycle values must be nonzero")

    def __call__(self, f: int, g: int) -> CycNumber:
        pos = self.domain.position
        return self.values[pos[f]][pos[g]]

    @property
    def group(self):
        return self.domain.parent

    def max_order(self) -> int:
        from math import lcm

        return lcm(1, *(x.order for r in self.values for x in r))


def trivial_cocycle(F: Subgroup) -> TwoCocycle:
    n = F.order
    return TwoCocycle(F, tuple(tuple(ONE for _ in range(n)) for _ in range(n)))


def cocycle_from_function(F: Subgroup, fn: Callable[[int, int], object]) -> TwoCocycle:
    return TwoCocycle(F, tuple(tuple(as_cyc(fn(a, b)) for b in F.elements) for a in F.elements))


def coboundary(F: Subgroup, mu: Callable[[int], CycNumber]) -> TwoCocycle:
    """(d mu)(f, g) = mu(f) mu(g) / mu(fg)."""
    G = F.parent
    return cocycle_from_function(F, lambda a, b: mu(a) * mu(b) / mu(G.mul(a, b)))


def cocycle_defects(psi: TwoCocycle) -> list[tuple[int, int, int]]:
    G = psi.group
    out = []
    for a in psi.domain.elements:
        for b in psi.domain.elements:
            ab = G.mul(a, b)
            for c in psi.domain.elements:
                if psi(a, b) * psi(ab, c) != psi(b, c) * psi(a, G.mul(b, c)):
                    out.append((a, b, c))
    return out


def normalization_defects(psi: TwoCocycle) -> list[tuple[int, int]]:
    G = psi.group
    e = G.identity
    out = []
    for f in psi.domain.elements:
        if psi(f, e) != ONE or psi(e, f) != ONE:
            out.append((f, e))
        for g in psi.domain.elements:
            if psi(f, g) * psi(G.inv(g), G.inv(f)) != ONE:
                out.append((f, g))
    return out


def check_cocycle(psi: TwoCocycle) -> dict[str, bool]:
    return {"cocycle": not cocycle_defects(psi), "normalized": not normalization_defects(psi)}


def normalize_cocycle(psi: TwoCocycle) -> tuple[TwoCocycle, dict[int, CycNumber]]:
    """Return (psi * d mu, mu) with the result normalized.

    First divide by the constant psi(1,1), which makes psi(f,1) = psi(1,f) = 1.
    Then choose mu with mu(f) mu(f^-1) = psi(f,f^-1)^-1; this forces
    psi'(f, f^-1) = 1, and that in turn gives psi'(f,g) psi'(g^-1,f^-1) = 1.
    For involutions mu(f) is a square root, taken with cyc_sqrt.
    """
    if cocycle_defects(psi):
        raise CocycleError("input is not a 2-cocycle")
    F = psi.domain
    G = F.parent
    e = G.identity
    c = psi(e, e)
    # mu constant c^-1 has d mu = c^-1 and mu(1) = c^-1; fold into one mu below
    mu: dict[int, CycNumber] = {}
    scaled = cocycle_from_function(F, lambda a, b: psi(a, b) / c)
    for f in F.elements:
        if f in mu:
            continue
        fi = G.inv(f)
        if f == e:
            mu[f] = ONE
        elif f == fi:
            mu[f] = cyc_sqrt(scaled(f, f).inverse())
        else:
            mu[f] = scaled(f, fi).inverse()
            mu[fi] = ONE
    out = cocycle_from_function(F, lambda a, b: scaled(a, b) * mu[a] * mu[b] / mu[G.mul(a, b)])
    # the total coboundary factor relative to psi is (1/c) * d mu, i.e. d(mu/c)
    total = {f: mu[f] / c for f in F.elements}
    assert check_cocycle(out) == {"cocycle": True, "normalized": True}
    return out, total


def b_function(psi: TwoCocycle, l: int, f: int) -> CycNumber:
    """b(l, f) = psi(l, l^-1 f l) / psi(f, l)."""
    G = psi.group
    return psi(l, G.conj(l, f)) / psi(f, l)


def conjugation_fiber(F: Subgroup, l: int) -> list[tuple[int, int]]:
    """All (g, f) in F x F with g^-1 f g = l, ordered by g."""
    G = F.parent
    return [(g, G.prod(g, l, G.inv(g))) for g in F.elements]
