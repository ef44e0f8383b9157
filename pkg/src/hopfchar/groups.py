"""Finite groups stored as Cayley tables, with subgroups and right coset data."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

MAX_CLOSURE = 5000


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple[str, ...]
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def prod(self, *elts: int) -> int:
        out = self.identity
        for e in elts:
            out = self.cayley[out][e]
        return out

    def conj(self, g: int, x: int) -> int:
        """g^-1 x g."""
        return self.cayley[self.cayley[self.inverse[g]][x]][g]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GroupError(f"unknown element label {label!r}") from None

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.cayley[a][b] == self.cayley[b][a] for a in range(n) for b in range(a))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.cayley[x][g]
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm

        return lcm(*(self.element_order(g) for g in self.elements()))

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup.make(self, elements)

    def subgroup_by_labels(self, labels: Iterable[str]) -> "Subgroup":
        return Subgroup.make(self, [self.index(l) for l in labels])

    def generated_subgroup(self, gens: Iterable[int]) -> "Subgroup":
        elts = {self.identity}
        frontier = list(elts)
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.cayley[x][g]
                    if y not in elts:
                        elts.add(y)
                        nxt.append(y)
            frontier = nxt
        return Subgroup.make(self, elts)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup.make(self, [self.identity])

    def whole(self) -> "Subgroup":
        return Subgroup.make(self, range(self.order))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    @staticmethod
    def make(parent: FiniteGroup, elements: Iterable[int]) -> "Subgroup":
        elts = tuple(sorted(set(elements)))
        s = set(elts)
        if parent.identity not in s:
            raise GroupError("subset does not contain the identity")
        for a in elts:
            if parent.inverse[a] not in s:
                raise GroupError(f"subset not closed under inverse at {parent.labels[a]}")
            for b in elts:
                if parent.cayley[a][b] not in s:
                    raise GroupError(
                        f"subset not closed under product: {parent.labels[a]}*{parent.labels[b]}"
                    )
        return Subgroup(parent, elts)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.position

    @cached_property
    def position(self) -> dict[int, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def labels(self) -> list[str]:
        return [self.parent.labels[g] for g in self.elements]


@dataclass(frozen=True)
class CosetReps:
    """Right cosets F\\G: every g is uniquely f*s with f in F and s in reps."""

    subgroup: Subgroup
    reps: tuple[int, ...]
    decomp: tuple[tuple[int, int], ...]  # g -> (f, s)

    @property
    def index(self) -> int:
        return len(self.reps)

    def coset_of(self, g: int) -> int:
        """Position in reps of the representative of F*g."""
        return self.reps.index(self.decomp[g][1])


def _validate_table(labels: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
    n = len(labels)
    if n == 0:
        raise GroupError("empty group")
    if len(set(labels)) != n:
        raise GroupError("duplicate labels")
    if len(table) != n or any(len(r) != n for r in table):
        raise GroupError("Cayley table must be n x n")
    cay = tuple(tuple(int(x) for x in r) for r in table)
    if any(not 0 <= x < n for r in cay for x in r):
        raise GroupError("Cayley entries out of range")
    ident = next((e for e in range(n) if all(cay[e][g] == g and cay[g][e] == g for g in range(n))), None)
    if ident is None:
        raise GroupError("no identity element")
    inv = []
    for g in range(n):
        h = next((h for h in range(n) if cay[g][h] == ident and cay[h][g] == ident), None)
        if h is None:
            raise GroupError(f"element {labels[g]} has no inverse")
        inv.append(h)
    for a, b, c in product(range(n), repeat=3):
        if cay[cay[a][b]][c] != cay[a][cay[b][c]]:
            raise GroupError(f"not associative at ({labels[a]}, {labels[b]}, {labels[c]})")
    return FiniteGroup(tuple(labels), cay, ident, tuple(inv))


def group_from_cayley(labels: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteGroup:
    return _validate_table(labels, table)


def _perm_label(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]], max_order: int = MAX_CLOSURE) -> FiniteGroup:
    """Closure of permutation generators; elements sorted as tuples, product (gh)(i) = g(h(i))."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise GroupError(f"{list(g)} is not a permutation of 0..{degree - 1}")
    ident = tuple(range(degree))
    elts = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[g[i]] for i in range(degree))
                if y not in elts:
                    elts.add(y)
                    nxt.append(y)
                    if len(elts) > max_order:
                        raise GroupError(f"closure exceeds {max_order} elements")
        frontier = nxt
    perms = sorted(elts)
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(g[h[i]] for i in range(degree))] for h in perms] for g in perms]
    labels = [_perm_label(p) for p in perms]
    return _validate_table(labels, table)


def right_coset_reps(G: FiniteGroup, F: Subgroup) -> CosetReps:
    if F.parent is not G and F.parent != G:
        raise GroupError("subgroup belongs to a different group")
    Subgroup.make(G, F.elements)
    decomp: list = [None] * G.order
    reps = []
    order = [G.identity] + [g for g in range(G.order) if g != G.identity]
    for g in order:
        if decomp[g] is not None:
            continue
        reps.append(g)
        for f in F.elements:
            decomp[G.cayley[f][g]] = (f, g)
    return CosetReps(F, tuple(reps), tuple(decomp))


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for x in range(G.order):
        if x in seen:
            continue
        cls = sorted({G.conj(g, x) for g in range(G.order)})
        seen.update(cls)
        out.append(cls)
    return out


# ---------------------------------------------------------------------------
# named groups
# ---------------------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    labels = ["e"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
    return group_from_cayley(labels, [[(a + b) % n for b in range(n)] for a in range(n)])


def klein_group() -> FiniteGroup:
    labels = ["e", "a", "b", "ab"]
    return group_from_cayley(labels, [[a ^ b for b in range(4)] for a in range(4)])


def symmetric_group(n: int) -> FiniteGroup:
    gens = []
    if n >= 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
        gens.append(tuple(list(range(1, n)) + [0]))
    return group_from_permutations(n, gens)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon as rotations r^k and reflections r^k s (k < n)."""
    labels = [f"r{k}" for k in range(n)] + [f"s{k}" for k in range(n)]

    def mul(a: int, b: int) -> int:
        ka, fa = a % n, a // n
        kb, fb = b % n, b // n
        k = (ka + (-kb if fa else kb)) % n
        return (fa ^ fb) * n + k

    return group_from_cayley(labels, [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)])


_Q8_LABELS = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]


def quaternion_group() -> FiniteGroup:
    unit = {"1": (1, "1"), "i": (1, "i"), "j": (1, "j"), "k": (1, "k")}
    basic = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def split(lbl):
        return (-1, lbl[1:]) if lbl.startswith("-") else unit[lbl]

    def mul(a, b):
        sa, ua = split(a)
        sb, ub = split(b)
        s, u = basic[(ua, ub)]
        s *= sa * sb
        return u if s == 1 else "-" + u

    table = [[_Q8_LABELS.index(mul(a, b)) for b in _Q8_LABELS] for a in _Q8_LABELS]
    return group_from_cayley(_Q8_LABELS, table)


NAMED_GROUPS = {
    "C2": lambda: cyclic_group(2),
    "C4": lambda: cyclic_group(4),
    "Klein": klein_group,
    "S3": lambda: symmetric_group(3),
    "D4": lambda: dihedral_group(4),
    "Q8": quaternion_group,
}
