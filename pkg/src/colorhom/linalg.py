"""Exact linear algebra over the rationals.

Forward elimination is fraction-free (rows are kept as primitive integer
vectors); the final reduced row echelon form is expressed in ``Fraction``.
Rows are sparse ``{column: value}`` dictionaries while reducing and dense
tuples once canonicalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction")
    return Fraction(x)


def _primitive(row: dict) -> dict:
    """Scale an integer row so its content is 1 and its leading entry is positive."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integerize(row) -> dict:
    """Clear denominators of a sparse rational row, returning an integer row."""
    items = row.items() if isinstance(row, dict) else enumerate(row)
    fr = {c: to_fraction(v) for c, v in items if v != 0}
    if not fr:
        return {}
    den = 1
    for v in fr.values():
        den = lcm(den, v.denominator)
    return {c: int(v * den) for c, v in fr.items()}


class RowReducer:
    """Incremental fraction-free row echelon reduction.

    Rows may be fed one at a time; zero and dependent rows are discarded, so
    large redundant systems cost only as much memory as their rank.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, row) -> dict:
        """Return the remainder of ``row`` modulo the rows seen so far."""
        r = _integerize(row)
        pivots = self._pivots
        while r:
            hits = [c for c in r if c in pivots]
            if not hits:
                break
            c = min(hits)
            prow = pivots[c]
            a, b = prow[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: v * a for k, v in r.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
        return r

    def add(self, row) -> bool:
        """Insert a row; return True when it raised the rank."""
        r = self.reduce(row)
        if not r:
            return False
        r = _primitive(r)
        self._pivots[min(r)] = r
        return True

    def add_many(self, rows: Iterable) -> None:
        for row in rows:
            self.add(row)

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """Reduced row echelon form of everything added so far."""
        order = sorted(self._pivots)
        rows = {c: {k: Fraction(v, self._pivots[c][c]) for k, v in self._pivots[c].items()}
                for c in order}
        # back substitution, bottom pivot first
        for c in reversed(order):
            pr = rows[c]
            for c2 in order:
                if c2 >= c:
                    break
                r2 = rows[c2]
                f = r2.get(c)
                if f:
                    for k, v in pr.items():
                        nv = r2.get(k, 0) - f * v
                        if nv:
                            r2[k] = nv
                        else:
                            r2.pop(k, None)
        dense = tuple(
            tuple(rows[c].get(k, Fraction(0)) for k in range(self.ncols)) for c in order
        )
        return dense, tuple(order)


def rref(rows: Iterable, ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    red = RowReducer(ncols)
    red.add_many(rows)
    return red.rref()


def rank(rows: Iterable, ncols: int) -> int:
    red = RowReducer(ncols)
    red.add_many(rows)
    return red.rank


def nullspace(rows: Iterable, ncols: int) -> list[Vector]:
    """Basis of ``{v : row . v = 0 for every row}``, one vector per free column."""
    m, pivots = rref(rows, ncols)
    return nullspace_from_rref(m, pivots, ncols)


def nullspace_from_rref(m: Matrix, pivots: Sequence[int], ncols: int) -> list[Vector]:
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(m, pivots):
            if row[free]:
                v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def solve(rows: Sequence, rhs: Sequence, ncols: int):
    """One particular solution of ``A x = b`` or None when inconsistent."""
    red = RowReducer(ncols + 1)
    for row, b in zip(rows, rhs):
        r = dict(row) if isinstance(row, dict) else {i: v for i, v in enumerate(row) if v}
        if b:
            r[ncols] = -to_fraction(b)  # row . x - b = 0 encoded as [A | -b]
        red.add(r)
    m, pivots = red.rref()
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(m, pivots):
        x[p] = row[ncols] * -1 if row[ncols] else Fraction(0)
    return tuple(x)


# -- small dense helpers ---------------------------------------------------

def zeros(r: int, c: int) -> Matrix:
    z = Fraction(0)
    return tuple((z,) * c for _ in range(r))


def identity(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt)
        for row in a
    )


def matvec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a)


def matadd(a: Matrix, b: Matrix, scale=1) -> Matrix:
    return tuple(tuple(x + scale * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matscale(a: Matrix, s) -> Matrix:
    return tuple(tuple(s * x for x in row) for row in a)


def matpow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = matmul(out, a)
    return out


def lin_comb(coeffs: Sequence, vectors: Sequence[Vector]) -> Vector:
    n = len(vectors[0])
    acc = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v):
                if x:
                    acc[i] += c * x
    return tuple(acc)


def flatten(m: Matrix) -> Vector:
    """Row-major flattening; entry (r, c) goes to position r * ncols + c."""
    return tuple(x for row in m for x in row)


def unflatten(v: Sequence, d: int) -> Matrix:
    return tuple(tuple(v[r * d:(r + 1) * d]) for r in range(d))


def is_zero(m) -> bool:
    if m and isinstance(m[0], tuple):
        return all(x == 0 for row in m for x in row)
    return all(x == 0 for x in m)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n stored by its canonical reduced row echelon basis.

    Two Subspace values describe the same space exactly when they compare
    equal.
    """

    ambient_dim: int
    basis: Matrix = ()

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        m, _ = rref(vectors, ambient_dim)
        return cls(ambient_dim, m)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def contains(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        # the basis is reduced: v lies in the span iff v = sum v[p] * row_p
        r = list(v)
        for p, row in zip(self.pivots, self.basis):
            c = r[p]
            if c:
                for i, x in enumerate(row):
                    if x:
                        r[i] -= c * x
        return not any(r)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def first_outside(self, vectors: Iterable):
        """First vector not lying in this subspace, or None."""
        for v in vectors:
            if not self.contains(v):
                return v
        return None

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - (self + other).dim

    def is_zero(self) -> bool:
        return not self.basis

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"
