"""Exact linear algebra over the integers and rationals.

Everything here works with Python's arbitrary-precision ``int`` and
``fractions.Fraction``; there is no floating point and no overflow.  The
module provides the normal forms the rest of the package is built on:

* ``snf`` -- Smith normal form invariant factors and rank,
* ``gcd_minors`` -- gcd of all i-by-i minors, the classical oracle for
  the invariant factors (s_i = g_i / g_{i-1}),
* ``hnf_row_lattice`` -- a Hermite-style basis for the lattice spanned
  by the rows, plus a membership test,
* ``kernel_basis`` / ``int_kernel_basis`` -- exact right null spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major as nested tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for v in row:
                if type(v) is not int:
                    raise TypeError(f"entries must be int, got {v!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        ents = tuple(tuple(row) for row in rows)
        if cols is None:
            if not ents:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(ents[0])
        return cls(len(ents), cols, ents)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)


@dataclass(frozen=True)
class SnfResult:
    """Rank and invariant factors of an integer matrix.

    ``invariant_factors`` are the positive diagonal entries of the Smith
    normal form; each divides the next and there are exactly ``rank`` of
    them.
    """

    rank: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.invariant_factors) != self.rank:
            raise ValueError("factor count must equal rank")
        if any(s < 1 for s in self.invariant_factors):
            raise ValueError("invariant factors must be positive")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form of ``m``.

    Row/column elimination with the pivot chosen as the entry of minimal
    nonzero absolute value in the trailing submatrix (ties broken by
    smallest (row, col) position, so the run is deterministic).  After a
    corner is cleared, divisibility of the remaining submatrix by the
    pivot is enforced the usual way: fold an offending row into the
    pivot row and re-eliminate, which strictly shrinks the pivot.

    >>> snf(IntMatrix.from_rows([[0, 1, 2], [2, 1, 0]])).invariant_factors
    (1, 2)
    >>> snf(IntMatrix.from_rows([[2, 0], [0, 4]])).invariant_factors
    (2, 4)
    >>> snf(IntMatrix.identity(3))
    SnfResult(rank=3, invariant_factors=(1, 1, 1))
    """
    a = [list(row) for row in m.entries]
    nr, nc = m.rows, m.cols
    factors: list[int] = []
    r = 0
    while r < min(nr, nc):
        # Minimal |entry| in the trailing submatrix, lexicographic ties.
        best = None
        for i in range(r, nr):
            for j in range(r, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != r:
            a[r], a[bi] = a[bi], a[r]
        if bj != r:
            for row in a:
                row[r], row[bj] = row[bj], row[r]
        if a[r][r] < 0:
            a[r] = [-v for v in a[r]]
        p = a[r][r]
        dirty = False
        for i in range(r + 1, nr):
            if a[i][r]:
                q = a[i][r] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if a[i][r]:
                    dirty = True
        for j in range(r + 1, nc):
            if a[r][j]:
                q = a[r][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[r]
                if a[r][j]:
                    dirty = True
        if dirty:
            continue
        # Corner is clear; make the pivot divide everything that remains.
        offender = None
        for i in range(r + 1, nr):
            for j in range(r + 1, nc):
                if a[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[r] = [x + y for x, y in zip(a[r], a[offender])]
            continue
        factors.append(p)
        r += 1
    return SnfResult(rank=len(factors), invariant_factors=tuple(factors))


def det_laplace(rows: Sequence[Sequence[int]]) -> int:
    """Determinant by cofactor expansion.  Exponential; fine for n <= 5."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    rest = rows[1:]
    for j, v in enumerate(rows[0]):
        if v:
            minor = [r[:j] + r[j + 1:] for r in rest]
            term = v * det_laplace(minor)
            total += term if j % 2 == 0 else -term
    return total


def gcd_minors(m: IntMatrix, i: int) -> int:
    """gcd of all i-by-i minors of ``m`` (0 if they all vanish; 1 for i=0).

    For i <= 4 the minors are enumerated directly with cofactor
    determinants, a code path fully independent of ``snf``; the running
    gcd stops early once it reaches 1.  For larger i the value is taken
    from the invariant-factor product g_i = s_1 * ... * s_i.

    >>> gcd_minors(IntMatrix.from_rows([[0, 1, 2], [2, 1, 0]]), 2)
    2
    >>> gcd_minors(IntMatrix.from_rows([[2, 4], [6, 8]]), 1)
    2
    """
    if not 0 <= i <= min(m.rows, m.cols):
        raise ValueError(f"minor size {i} out of range for {m.rows}x{m.cols} matrix")
    if i == 0:
        return 1
    if i > 4:
        res = snf(m)
        if i > res.rank:
            return 0
        g = 1
        for s in res.invariant_factors[:i]:
            g *= s
        return g
    ents = [tuple(row) for row in m.entries]
    g = 0
    for rsel in combinations(range(m.rows), i):
        picked = [ents[r] for r in rsel]
        for csel in combinations(range(m.cols), i):
            minor = [tuple(row[c] for c in csel) for row in picked]
            g = gcd(g, det_laplace(minor))
            if g == 1:
                return 1
    return g


def _echelon_int(rows: Sequence[Sequence[int]], ncols: int):
    """Fraction-free (Bareiss) row echelon form of an integer matrix.

    Returns ``(echelon_rows, pivot_cols)``; all arithmetic stays in int,
    the interior divisions are exact.
    """
    m = [list(r) for r in rows]
    pivot_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(m)):
            if m[i][c]:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            m[r], m[sel] = m[sel], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * piv - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivot_cols.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivot_cols


def rank(m: IntMatrix) -> int:
    """Exact rank over the rationals.

    >>> rank(IntMatrix.from_rows([[0, 0, 1, 1], [1, 1, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0]]))
    3
    """
    _, pivots = _echelon_int(m.entries, m.cols)
    return len(pivots)


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector, first nonzero > 0."""
    lcm = 1
    for v in vec:
        d = v.denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(v * lcm) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def int_kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of the right null space of an integer matrix.

    One basis vector per free column, in column order; each is scaled to
    integers with gcd 1 and leading entry positive.  (This is a basis of
    the null space as a Q-vector space, not necessarily of the integer
    kernel lattice, which is all the geometry code needs.)
    """
    ech, pivot_cols = _echelon_int(rows, ncols)
    pivset = set(pivot_cols)
    basis: list[tuple[int, ...]] = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i in reversed(range(len(pivot_cols))):
            c = pivot_cols[i]
            row = ech[i]
            s = Fraction(0)
            for j in range(c + 1, ncols):
                if row[j] and x[j]:
                    s += row[j] * x[j]
            x[c] = -s / row[c]
        basis.append(_primitive(x))
    return basis


def kernel_basis(m: IntMatrix | Sequence[Sequence[Fraction | int]],
                 cols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space of a rational matrix.

    Accepts an ``IntMatrix`` or raw rows of ints/Fractions.  Rows are
    cleared to integers (row scaling does not change the kernel) and the
    exact integer path does the elimination.

    >>> kernel_basis(IntMatrix.from_rows([[1, 1]]))
    [(Fraction(1, 1), Fraction(-1, 1))]
    >>> kernel_basis(IntMatrix.identity(2))
    []
    """
    if isinstance(m, IntMatrix):
        rows = m.entries
        ncols = m.cols
    else:
        rows = [tuple(Fraction(v) for v in row) for row in m]
        if cols is not None:
            ncols = cols
        elif rows:
            ncols = len(rows[0])
        else:
            raise ValueError("cannot infer column count of an empty matrix")
    int_rows = []
    for row in rows:
        lcm = 1
        for v in row:
            d = Fraction(v).denominator
            lcm = lcm // gcd(lcm, d) * d
        int_rows.append([int(v * lcm) for v in row])
    return [tuple(Fraction(v) for v in vec) for vec in int_kernel_basis(int_rows, ncols)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def hnf_row_lattice(m: IntMatrix) -> IntMatrix:
    """Hermite-style basis of the lattice generated by the rows of ``m``.

    The result has one row per pivot, pivot entries positive, entries
    above each pivot reduced into [0, pivot), rows ordered by pivot
    column.  Zero input rows are dropped; a rank-0 input yields a
    0-by-cols matrix.

    >>> hnf_row_lattice(IntMatrix.from_rows([[2, 0], [0, 3], [1, 1]])).entries
    ((1, 0), (0, 1))
    >>> hnf_row_lattice(IntMatrix.from_rows([[0, 0]])).entries
    ()
    """
    pivots: dict[int, list[int]] = {}
    for row0 in m.entries:
        row = list(row0)
        while True:
            lead = next((j for j, v in enumerate(row) if v), None)
            if lead is None:
                break
            if lead not in pivots:
                if row[lead] < 0:
                    row = [-v for v in row]
                pivots[lead] = row
                break
            p = pivots[lead]
            g, x, y = _xgcd(p[lead], row[lead])
            coef_p = p[lead] // g
            coef_r = row[lead] // g
            new_p = [x * u + y * v for u, v in zip(p, row)]
            row = [coef_p * v - coef_r * u for u, v in zip(p, row)]
            pivots[lead] = new_p
    cols_sorted = sorted(pivots)
    # Reduce entries above each pivot so the basis is canonical.  Pivot
    # columns are swept left to right: reducing at column c only touches
    # columns >= c, so columns already canonical stay canonical.
    for idx, c in enumerate(cols_sorted):
        base = pivots[c]
        for b in cols_sorted[:idx]:
            upper = pivots[b]
            q = upper[c] // base[c]
            if q:
                pivots[b] = [u - q * v for u, v in zip(upper, base)]
    rows_out = tuple(tuple(pivots[c]) for c in cols_sorted)
    return IntMatrix(len(rows_out), m.cols, rows_out)


def in_row_lattice(hnf: IntMatrix, vec: Sequence[int]) -> bool:
    """Membership of ``vec`` in the row lattice described by an hnf basis."""
    if len(vec) != hnf.cols:
        raise ValueError("vector length does not match lattice ambient dimension")
    v = list(vec)
    for row in hnf.entries:
        c = next(j for j, x in enumerate(row) if x)
        if v[c]:
            q, rem = divmod(v[c], row[c])
            if rem:
                return False
            if q:
                v = [a - q * b for a, b in zip(v, row)]
    return not any(v)
