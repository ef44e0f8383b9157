"""Exact arithmetic in cyclotomic fields and exact linear algebra over them.

Elements of Q(zeta_n) are stored as coefficient tuples in the power basis
1, zeta_n, ..., zeta_n^(phi(n)-1), reduced modulo the n-th cyclotomic
polynomial.  Mixed-order arithmetic embeds both operands into Q(zeta_lcm).

Vectors used by the rest of the package are *sparse*: ``dict[int, CycNumber]``
with no zero values stored.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "CycNumber",
    "ExactMatrix",
    "NotInSpanError",
    "Quotient",
    "Span",
    "ZERO",
    "ONE",
    "as_cyc",
    "cyc_sqrt",
    "nullspace",
    "nullspace_sparse",
    "rank",
    "root_of_unity",
    "rref_sparse",
    "solve_linear_system",
]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# cyclotomic polynomials and reduction tables
# ---------------------------------------------------------------------------


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first, den monic)."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            out[i - dd] = c
            for j, d in enumerate(den):
                num[i - dd + j] -= c * d
    assert not any(num[:dd]), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coordinates of zeta_n^j for 0 <= j < n."""
    phi = euler_phi(n)
    cp = cyclotomic_poly(n)
    cur = [1] + [0] * (phi - 1)
    rows = []
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce the overflow coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * cp[j]
    return tuple(rows)


_F0 = Fraction(0)
_F1 = Fraction(1)


class CycNumber:
    """An exact element of the cyclotomic field Q(zeta_order)."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: Sequence[Fraction]):
        # callers guarantee reduced coefficients of length phi(order)
        self.order = order
        self.coeffs = tuple(coeffs)
        self._hash = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def _make(order: int, coeffs: Sequence[Fraction]) -> "CycNumber":
        if order != 1 and not any(coeffs[1:]):
            return CycNumber(1, (coeffs[0],))
        return CycNumber(order, coeffs)

    @classmethod
    def rational(cls, q) -> "CycNumber":
        return cls(1, (Fraction(q),))

    @classmethod
    def from_poly(cls, order: int, poly: Mapping[int, Fraction] | Sequence) -> "CycNumber":
        """Build sum_j poly[j] * zeta_order^j (any exponents)."""
        table = _power_table(order)
        acc = [_F0] * euler_phi(order)
        items = poly.items() if isinstance(poly, Mapping) else enumerate(poly)
        for j, c in items:
            c = Fraction(c)
            if c:
                for i, t in enumerate(table[j % order]):
                    if t:
                        acc[i] += c * t
        return cls._make(order, acc)

    # -- field embedding --------------------------------------------------

    def embed(self, order: int) -> "CycNumber":
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        if self.order == 1:
            return CycNumber(order, self.coeffs + (_F0,) * (euler_phi(order) - 1))
        step = order // self.order
        table = _power_table(order)
        acc = [_F0] * euler_phi(order)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, t in enumerate(table[(i * step) % order]):
                    if t:
                        acc[j] += c * t
        return CycNumber(order, acc)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return self.order == 1 or not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -------------------------------------------------------

    def _pair(self, other):
        if not isinstance(other, CycNumber):
            if isinstance(other, (int, Fraction)):
                other = CycNumber(1, (Fraction(other),))
            else:
                return None, None
        if self.order == other.order:
            return self, other
        if other.order == 1:
            return self, other.embed(self.order)
        if self.order == 1:
            return self.embed(other.order), other
        m = _lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.order == 1:
            return CycNumber(1, (a.coeffs[0] + b.coeffs[0],))
        return CycNumber._make(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.order == 1:
            return CycNumber(1, (a.coeffs[0] - b.coeffs[0],))
        return CycNumber._make(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CycNumber) and other.order == 1:
            q = other.coeffs[0]
            if self.order == 1:
                return CycNumber(1, (self.coeffs[0] * q,))
            if not q:
                return ZERO
            return CycNumber(self.order, [x * q for x in self.coeffs])
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        if a.order == 1:
            return CycNumber(1, (a.coeffs[0] * b.coeffs[0],))
        if b.order == 1 or (b.is_rational()):
            return b * a if a.order == 1 else CycNumber._make(a.order, [x * b.coeffs[0] for x in a.coeffs])
        if a.is_rational():
            return CycNumber._make(a.order, [x * a.coeffs[0] for x in b.coeffs])
        n = a.order
        phi = len(a.coeffs)
        conv = [_F0] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        acc = conv[:phi]
        table = _power_table(n)
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                for j, t in enumerate(table[k % n]):
                    if t:
                        acc[j] += c * t
        return CycNumber._make(n, acc)

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.order == 1:
            return CycNumber(1, (1 / self.coeffs[0],))
        n = self.order
        phi = len(self.coeffs)
        # column j of the multiplication-by-self matrix is self * zeta^j
        cols = []
        for j in range(phi):
            cols.append((self * CycNumber.from_poly(n, {j: 1})).embed(n).coeffs)
        mat = [[cols[j][i] for j in range(phi)] for i in range(phi)]
        rhs = [_F1] + [_F0] * (phi - 1)
        sol = _solve_square_rational(mat, rhs)
        return CycNumber._make(n, sol)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNumber(1, (Fraction(other),))
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "CycNumber":
        """Complex conjugate (zeta -> zeta^-1)."""
        if self.order == 1:
            return self
        n = self.order
        return CycNumber.from_poly(n, {(-i) % n: c for i, c in enumerate(self.coeffs) if c})

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def minimal(self) -> "CycNumber":
        """The same number written over the smallest cyclotomic field containing it."""
        cur = self if not self.is_rational() else CycNumber(1, (self.coeffs[0],))
        changed = True
        while changed and cur.order > 1:
            changed = False
            n = cur.order
            for p in _prime_factors(n):
                d = n // p
                pre = _preimage(cur, d)
                if pre is not None:
                    cur = pre
                    changed = True
                    break
        return cur

    def __hash__(self):
        if self._hash is None:
            m = self.minimal()
            self._hash = hash((m.order, m.coeffs))
        return self._hash

    # -- display ----------------------------------------------------------

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"CycNumber({self})"

    def __str__(self):
        m = self.minimal()
        if m.order == 1:
            return str(m.coeffs[0])
        terms = []
        for i, c in enumerate(m.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(f"zeta({m.order},{i})")
            elif c == -1:
                terms.append(f"-zeta({m.order},{i})")
            else:
                terms.append(f"{c}*zeta({m.order},{i})")
        return " + ".join(terms).replace("+ -", "- ")


ZERO = CycNumber(1, (_F0,))
ONE = CycNumber(1, (_F1,))


def as_cyc(x) -> CycNumber:
    if isinstance(x, CycNumber):
        return x
    return CycNumber(1, (Fraction(x),))


def root_of_unity(n: int, k: int = 1) -> CycNumber:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return ONE
    row = _power_table(n)[k % n]
    return CycNumber._make(n, [Fraction(t) for t in row])


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def _embedding_columns(d: int, n: int) -> tuple[tuple[Fraction, ...], ...]:
    cols = []
    for i in range(euler_phi(d)):
        cols.append(CycNumber.from_poly(d, {i: 1}).embed(n).coeffs if d > 1 else ONE.embed(n).coeffs)
    return tuple(cols)


def _preimage(x: CycNumber, d: int) -> CycNumber | None:
    """Write x (in Q(zeta_n)) over Q(zeta_d), d | n, if possible."""
    n = x.order
    cols = _embedding_columns(d, n)
    m = len(cols)
    rows = [[cols[j][i] for j in range(m)] + [x.coeffs[i]] for i in range(len(x.coeffs))]
    piv = _rref_dense_rational(rows, m)
    for r in rows:
        if not any(r[:m]) and r[m]:
            return None
    sol = [_F0] * m
    for r, c in piv:
        sol[c] = rows[r][m]
    return CycNumber._make(d, sol) if d > 1 else CycNumber(1, (sol[0],))


def _rref_dense_rational(rows: list[list[Fraction]], ncols: int) -> list[tuple[int, int]]:
    """In-place RREF of a dense rational matrix over its first ncols columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    return pivots


def _solve_square_rational(mat, rhs):
    n = len(mat)
    rows = [list(mat[i]) + [rhs[i]] for i in range(n)]
    piv = _rref_dense_rational(rows, n)
    if len(piv) != n:
        raise ZeroDivisionError("singular system")
    return [rows[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# square roots (used by cocycle normalization)
# ---------------------------------------------------------------------------


def as_rational_times_root(x: CycNumber) -> tuple[Fraction, int, int] | None:
    """Return (r, n, k) with x = r * zeta_n^k, or None if x has no such form."""
    if x.is_rational():
        return x.coeffs[0], 1, 0
    n = x.order
    for k in range(n):
        y = x * root_of_unity(n, -k)
        if y.is_rational():
            return y.coeffs[0], n, k
    return None


def _sqrt_prime(p: int) -> CycNumber:
    if p == 2:
        return root_of_unity(8, 1) + root_of_unity(8, 7)
    gauss = CycNumber.from_poly(p, {a: _legendre(a, p) for a in range(1, p)})
    if p % 4 == 1:
        return gauss
    return root_of_unity(4, 3) * gauss


def _legendre(a: int, p: int) -> int:
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _sqrt_rational(q: Fraction) -> CycNumber:
    if q == 0:
        return ZERO
    sign = q < 0
    q = abs(q)
    m = q.numerator * q.denominator
    out = CycNumber.rational(Fraction(1, q.denominator))
    square, free = 1, 1
    for p in _prime_factors(m):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        square *= p ** (e // 2)
        if e % 2:
            free *= p
    out = out * square
    for p in _prime_factors(free):
        out = out * _sqrt_prime(p)
    if sign:
        out = out * root_of_unity(4, 1)
    return out


def cyc_sqrt(x: CycNumber) -> CycNumber:
    """A fixed square root of x = r * zeta_n^k: sqrt(r) * zeta_2n^k.

    sqrt(r) is the positive real root for r > 0 and i*sqrt(-r) for r < 0.
    """
    form = as_rational_times_root(x)
    if form is None:
        raise ValueError(f"{x} is not a rational multiple of a root of unity")
    r, n, k = form
    return _sqrt_rational(r) * root_of_unity(2 * n, k)


# ---------------------------------------------------------------------------
# sparse vector helpers
# ---------------------------------------------------------------------------

SparseVec = dict


def vec_axpy(acc: dict, v: Mapping, c: CycNumber = ONE) -> dict:
    """acc += c * v, in place; zero entries are removed."""
    one = c == ONE if c.order == 1 else False
    for k, x in v.items():
        y = x if one else c * x
        if k in acc:
            s = acc[k] + y
            if s:
                acc[k] = s
            else:
                del acc[k]
        elif y:
            acc[k] = y
    return acc


def vec_scale(v: Mapping, c: CycNumber) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_sub(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    return vec_axpy(out, b, -ONE)


def vec_is_zero(v: Mapping) -> bool:
    return not any(x for x in v.values())


def unit_vec(i: int) -> dict:
    return {i: ONE}


def dense_to_sparse(row: Sequence) -> dict:
    out = {}
    for i, x in enumerate(row):
        x = as_cyc(x)
        if x:
            out[i] = x
    return out


def sparse_to_dense(v: Mapping, n: int) -> list[CycNumber]:
    return [v.get(i, ZERO) for i in range(n)]


# ---------------------------------------------------------------------------
# sparse Gauss-Jordan elimination
# ---------------------------------------------------------------------------


def rref_sparse(rows: Iterable[Mapping]) -> dict[int, dict]:
    """Reduced row echelon form of a list of sparse rows.

    Returns ``{pivot_column: row}`` with each row normalized to 1 at its
    pivot and zero at every other pivot column.  The result is the unique
    RREF of the row space, independent of the input row order.
    """
    work = [dict((k, v) for k, v in r.items() if v) for r in rows]
    work = [r for r in work if r]
    colidx: dict[int, set] = defaultdict(set)
    for i, r in enumerate(work):
        for c in r:
            colidx[c].add(i)
    active = set(range(len(work)))
    pivots: dict[int, int] = {}
    for c in sorted(colidx):
        cands = [i for i in colidx[c] if i in active]
        if not cands:
            continue
        p = min(cands, key=lambda i: (len(work[i]), i))
        active.discard(p)
        prow = work[p]
        inv = prow[c].inverse()
        if inv != ONE:
            for k in prow:
                prow[k] = prow[k] * inv
        for i in list(colidx[c]):
            if i == p:
                continue
            row = work[i]
            f = row[c]
            for k, x in prow.items():
                y = f * x
                if k in row:
                    s = row[k] - y
                    if s:
                        row[k] = s
                    else:
                        del row[k]
                        colidx[k].discard(i)
                else:
                    row[k] = -y
                    colidx[k].add(i)
        pivots[c] = p
    return {c: work[p] for c, p in sorted(pivots.items())}


def nullspace_sparse(rows: Iterable[Mapping], ncols: int) -> list[dict]:
    """Basis of {v : row . v = 0 for every row}; one vector per free column, ascending."""
    piv = rref_sparse(rows)
    free = [j for j in range(ncols) if j not in piv]
    # column j -> list of (pivot col, entry)
    bycol: dict[int, list] = defaultdict(list)
    for pc, row in piv.items():
        for j, x in row.items():
            if j != pc:
                bycol[j].append((pc, x))
    basis = []
    for j in free:
        v = {j: ONE}
        for pc, x in bycol.get(j, ()):
            v[pc] = -x
        basis.append(v)
    return basis


class NotInSpanError(ValueError):
    """A vector expected to lie in a subspace does not."""


class Span:
    """A subspace of k^n given by spanning vectors, with exact coordinate extraction."""

    def __init__(self, vectors: Sequence[Mapping], ncols: int):
        self.vectors = [dict(v) for v in vectors]
        self.ncols = ncols
        tagged = []
        for i, v in enumerate(self.vectors):
            r = dict(v)
            r[ncols + i] = ONE
            tagged.append(r)
        piv = rref_sparse(tagged)
        self._rows = {c: r for c, r in piv.items() if c < ncols}
        self.dim = len(self._rows)
        self.independent = self.dim == len(self.vectors)

    def reduce(self, v: Mapping) -> tuple[dict, dict]:
        """Return (residual, coordinates) of v modulo the span."""
        res = dict(v)
        coords: dict = {}
        for pc, row in self._rows.items():
            c = v.get(pc)
            if c:
                for k, x in row.items():
                    if k < self.ncols:
                        vec_axpy(res, {k: x}, -c)
                    else:
                        vec_axpy(coords, {k - self.ncols: x}, c)
        return res, coords

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)[0]

    def coordinates(self, v: Mapping) -> dict:
        """Coordinates of v in the spanning vectors (requires independence)."""
        res, coords = self.reduce(v)
        if res:
            raise NotInSpanError("vector is not in the span")
        return coords

    def __len__(self):
        return self.dim


class Quotient:
    """The quotient k^n / span(relations) with a fixed echelon section.

    Quotient coordinates are the non-pivot columns of the RREF of the
    relations, in ascending order.
    """

    def __init__(self, relations: Iterable[Mapping], ncols: int):
        self.ncols = ncols
        self._rows = rref_sparse(relations)
        self.basis_columns = [j for j in range(ncols) if j not in self._rows]
        self._pos = {j: i for i, j in enumerate(self.basis_columns)}
        self.dim = len(self.basis_columns)

    def project(self, v: Mapping) -> dict:
        res = dict(v)
        for pc, row in self._rows.items():
            c = v.get(pc)
            if c:
                vec_axpy(res, row, -c)
        return {self._pos[j]: x for j, x in res.items()}

    def lift(self, i: int) -> dict:
        return {self.basis_columns[i]: ONE}


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------


class ExactMatrix:
    """A dense matrix of CycNumber entries (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence] | None = None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[ZERO] * cols for _ in range(rows)]
        ent = [[as_cyc(x) for x in r] for r in entries]
        if len(ent) != rows or any(len(r) != cols for r in ent):
            raise ValueError("entry table does not match dimensions")
        self.entries = ent

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_sparse_columns(cls, columns: Sequence[Mapping], nrows: int) -> "ExactMatrix":
        ent = [[ZERO] * len(columns) for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                ent[i][j] = x
        return cls(nrows, len(columns), ent)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def sparse_rows(self) -> list[dict]:
        return [dense_to_sparse(r) for r in self.entries]

    def sparse_columns(self) -> list[dict]:
        return [{i: self.entries[i][j] for i in range(self.rows) if self.entries[i][j]} for j in range(self.cols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, [list(c) for c in zip(*self.entries)] if self.rows else [[] for _ in range(self.cols)])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        ocols = other.sparse_columns()
        for r in self.entries:
            row = []
            for col in ocols:
                s = ZERO
                for k, x in col.items():
                    if r[k]:
                        s = s + r[k] * x
                row.append(s)
            out.append(row)
        return ExactMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> list[CycNumber]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.entries:
            s = ZERO
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def __add__(self, other):
        return ExactMatrix(self.rows, self.cols, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return ExactMatrix(self.rows, self.cols, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def scale(self, c) -> "ExactMatrix":
        c = as_cyc(c)
        return ExactMatrix(self.rows, self.cols, [[c * a for a in r] for r in self.entries])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and all(
            a == b for r, s in zip(self.entries, other.entries) for a, b in zip(r, s)
        )

    __hash__ = None

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        n = self.rows
        tagged = []
        for i, r in enumerate(self.entries):
            row = dense_to_sparse(r)
            row[n + i] = ONE
            tagged.append(row)
        piv = rref_sparse(tagged)
        if any(c >= n for c in piv) or len(piv) != n:
            raise ZeroDivisionError("singular matrix")
        inv = [[ZERO] * n for _ in range(n)]
        for c, row in piv.items():
            for k, x in row.items():
                if k >= n:
                    inv[c][k - n] = x
        return ExactMatrix(n, n, inv)

    def __repr__(self):
        return "ExactMatrix(" + repr([[str(x) for x in r] for r in self.entries]) + ")"


def nullspace(m: ExactMatrix) -> list[list[CycNumber]]:
    """Basis of the right kernel of m, dense vectors, free columns ascending."""
    return [sparse_to_dense(v, m.cols) for v in nullspace_sparse(m.sparse_rows(), m.cols)]


def rank(m: ExactMatrix | Sequence[Mapping]) -> int:
    rows = m.sparse_rows() if isinstance(m, ExactMatrix) else m
    return len(rref_sparse(rows))


def solve_linear_system(m: ExactMatrix, rhs: Sequence) -> tuple[list[CycNumber], list[list[CycNumber]]] | None:
    """Solve m x = rhs exactly.

    Returns (particular solution, nullspace basis) or None when the system is
    inconsistent.  The particular solution has zeros at all free columns.
    """
    if len(rhs) != m.rows:
        raise ValueError(f"rhs has length {len(rhs)}, expected {m.rows}")
    n = m.cols
    rows = []
    for r, b in zip(m.entries, rhs):
        row = dense_to_sparse(r)
        b = as_cyc(b)
        if b:
            row[n] = b
        rows.append(row)
    piv = rref_sparse(rows)
    if n in piv:
        return None
    x = [ZERO] * n
    for c, row in piv.items():
        x[c] = row.get(n, ZERO)
    return x, nullspace(m)
