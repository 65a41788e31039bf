"""Operator spaces as exact nullspaces.

Every space is computed per twisting level ``k`` (the power of alpha) and
per homogeneous degree ``xi``. Unknowns are the entries of D and, for
quasiderivations and generalized derivations, of the auxiliary maps; the
defining identities are assembled on all basis tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from . import linalg
from .core import Algebra, AlgebraError, Endo, bracket
from .linalg import Subspace

KINDS = ("zder", "der", "qder", "gder", "c", "qc")

KIND_TITLES = {
    "der": "alpha^k-derivations",
    "gder": "generalized alpha^k-derivations",
    "qder": "alpha^k-quasiderivations",
    "c": "alpha^k-centroid",
    "qc": "alpha^k-quasicentroid",
    "zder": "alpha^k-center derivations",
}


@dataclass(frozen=True)
class SpaceQuery:
    kind: str
    k: int = 0
    degree: tuple = ()
    require_alpha_commuting: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}; expected one of {KINDS}")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        object.__setattr__(self, "degree", tuple(self.degree))

    def at(self, k=None, degree=None) -> "SpaceQuery":
        return SpaceQuery(self.kind, self.k if k is None else k,
                          self.degree if degree is None else degree,
                          self.require_alpha_commuting)


@dataclass(frozen=True)
class WitnessedMap:
    """D together with the auxiliary maps that certify it.

    qder: ``(D',)``; gder: ``(D^(1), ..., D^(n))``; other kinds: ``()``.
    """

    D: Endo
    witnesses: tuple = ()

    @property
    def maps(self) -> tuple:
        return (self.D,) + tuple(self.witnesses)


@dataclass(frozen=True)
class SpaceBasis:
    query: SpaceQuery
    vectors: tuple
    subspace: Subspace  # canonical span of the D parts, in flattened End coordinates

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, f: Endo) -> bool:
        return self.subspace.contains(f.flat())

    def maps(self) -> list:
        return [w.D for w in self.vectors]


def n_maps(kind: str, arity: int) -> int:
    return {"qder": 2, "gder": arity + 1}.get(kind, 1)


def _families(kind: str, n: int) -> list:
    """Defining equations as lists of terms.

    ``("outer", m, c)`` is ``c * M_m([x1, ..., xn])``;
    ``("slot", m, i, c)`` is ``c * eps(D, X_i) [a^k x1, ..., M_m(x_i), ..., a^k xn]``
    with 0-based slot ``i``.
    """
    if kind == "der":
        return [[("outer", 0, 1)] + [("slot", 0, i, -1) for i in range(n)]]
    if kind == "qder":
        return [[("outer", 1, 1)] + [("slot", 0, i, -1) for i in range(n)]]
    if kind == "gder":
        return [[("outer", n, 1), ("slot", 0, 0, -1)] + [("slot", i, i, -1) for i in range(1, n)]]
    if kind == "c":
        return [[("outer", 0, 1), ("slot", 0, i, -1)] for i in range(n)]
    if kind == "qc":
        return [[("slot", 0, 0, 1), ("slot", 0, i, -1)] for i in range(1, n)]
    if kind == "zder":
        return [[("outer", 0, 1)]] + [[("slot", 0, i, 1)] for i in range(n)]
    raise ValueError(kind)


def allowed_entries(a: Algebra, degree) -> list:
    """Flattened matrix positions (r, c) with deg e_r = deg e_c + degree."""
    g = a.group
    return [r * a.dim + c for r in range(a.dim) for c in range(a.dim)
            if a.degrees[r] == g.add(a.degrees[c], degree)]


class _Assembler:
    def __init__(self, a: Algebra, q: SpaceQuery):
        if not a.group.contains(q.degree):
            raise AlgebraError(f"degree {q.degree} is not an element of the grading group")
        self.a = a
        self.q = q
        d = a.dim
        self.d = d
        self.nm = n_maps(q.kind, a.arity)
        allowed = allowed_entries(a, q.degree)
        self.columns = [m * d * d + p for m in range(self.nm) for p in allowed]
        self.compact = {c: i for i, c in enumerate(self.columns)}
        self.n_d = len(allowed)
        A = linalg.matpow(a.alpha.matrix, q.k)
        self.alpha_k_cols = [tuple(A[r][c] for r in range(d)) for c in range(d)]

    def unknown(self, m, r, c):
        return self.compact.get(m * self.d * self.d + r * self.d + c)

    def rows(self):
        a, d, q = self.a, self.d, self.q
        fams = _families(q.kind, a.arity)
        need_slots = {t[2] for fam in fams for t in fam if t[0] == "slot"}
        eps = a.bicharacter
        units = [a.unit(i) for i in range(d)]
        cache = {}  # slot values do not depend on the entry in the slot itself

        def slot(i, t):
            key = (i, t[:i] + t[i + 1:])
            if key not in cache:
                args = [self.alpha_k_cols[j] for j in t]
                vals = []
                for m in range(d):
                    args[i] = units[m]
                    vals.append(bracket(a, *args))
                cache[key] = vals
            return cache[key]

        for t in product(range(d), repeat=a.arity):
            bt = a.structure.get(t, {})
            prefix = [a.group.zero]
            for j in t[:-1]:
                prefix.append(a.group.add(prefix[-1], a.degrees[j]))
            slot_vals = {i: slot(i, t) for i in need_slots}
            for fam in fams:
                out = [dict() for _ in range(d)]
                for term in fam:
                    if term[0] == "outer":
                        _, mi, c = term
                        for j, x in bt.items():
                            for o in range(d):
                                u = self.unknown(mi, o, j)
                                if u is not None:
                                    out[o][u] = out[o].get(u, 0) + c * x
                    else:
                        _, mi, i, c = term
                        s = c * eps(q.degree, prefix[i])
                        for mrow, vec in enumerate(slot_vals[i]):
                            u = self.unknown(mi, mrow, t[i])
                            if u is None:
                                continue
                            for o, x in enumerate(vec):
                                if x:
                                    out[o][u] = out[o].get(u, 0) + s * x
                for row in out:
                    row = {u: v for u, v in row.items() if v}
                    if row:
                        yield row
        if q.require_alpha_commuting:
            yield from self.commuting_rows()

    def commuting_rows(self):
        al = self.a.alpha.matrix
        d = self.d
        for mi in range(self.nm):
            for r in range(d):
                for c in range(d):
                    row = {}
                    for m in range(d):
                        if al[m][c]:
                            u = self.unknown(mi, r, m)
                            if u is not None:
                                row[u] = row.get(u, 0) + al[m][c]
                        if al[r][m]:
                            u = self.unknown(mi, m, c)
                            if u is not None:
                                row[u] = row.get(u, 0) - al[r][m]
                    row = {u: v for u, v in row.items() if v}
                    if row:
                        yield row

    def expand(self, vec) -> list:
        """Compact solution vector -> list of Endo, one per unknown map."""
        d = self.d
        flat = [Fraction(0)] * (self.nm * d * d)
        for i, c in enumerate(self.columns):
            flat[c] = vec[i]
        return [Endo.from_flat(flat[m * d * d:(m + 1) * d * d], d, self.q.degree)
                for m in range(self.nm)]


def solve_space(a: Algebra, q: SpaceQuery) -> SpaceBasis:
    asm = _Assembler(a, q)
    ncols = len(asm.columns)
    red = linalg.RowReducer(ncols)
    red.add_many(asm.rows())
    m, piv = red.rref()
    null = linalg.nullspace_from_rref(m, piv, ncols)
    # RREF of the joint solution space with D coordinates first: the rows
    # pivoting inside D give the canonical projection plus one witness each.
    joint, jpiv = linalg.rref(null, ncols)
    vectors = []
    for row, p in zip(joint, jpiv):
        if p >= asm.n_d:
            break
        maps = asm.expand(row)
        vectors.append(WitnessedMap(maps[0], tuple(maps[1:])))
    d2 = a.dim * a.dim
    # D-parts of the leading rows of an RREF are themselves in RREF
    sub = Subspace(d2, tuple(w.D.flat() for w in vectors))
    return SpaceBasis(q, tuple(vectors), sub)


def solve_all_degrees(a: Algebra, kind: str, k: int = 0,
                      require_alpha_commuting: bool = True) -> dict:
    return {g: solve_space(a, SpaceQuery(kind, k, g, require_alpha_commuting))
            for g in a.group.elements()}


def null_witnesses(a: Algebra, q: SpaceQuery) -> list:
    """Basis of the freedom in the auxiliary maps: solutions with D = 0."""
    asm = _Assembler(a, q)
    ncols = len(asm.columns)
    rows = list(asm.rows())
    rows += [{i: 1} for i in range(asm.n_d)]
    out = []
    for v in linalg.nullspace(rows, ncols):
        maps = asm.expand(v)
        out.append(tuple(maps[1:]))
    return out


# -- spaces attached to T itself --------------------------------------

def commutant(a: Algebra, degree=None) -> Subspace:
    """{u : u alpha = alpha u}, optionally inside End_degree(T)."""
    d = a.dim
    al = a.alpha.matrix
    keep = None if degree is None else set(allowed_entries(a, degree))
    rows = []
    for r in range(d):
        for c in range(d):
            row = {}
            for m in range(d):
                if al[m][c]:
                    row[r * d + m] = row.get(r * d + m, 0) + al[m][c]
                if al[r][m]:
                    row[m * d + c] = row.get(m * d + c, 0) - al[r][m]
            rows.append({u: v for u, v in row.items() if v})
    if keep is not None:
        rows += [{p: 1} for p in range(d * d) if p not in keep]
    return Subspace.span(linalg.nullspace(rows, d * d), d * d)


def annihilator(a: Algebra) -> Subspace:
    d, n = a.dim, a.arity
    rows = []
    for i in range(n):
        for rest in product(range(d), repeat=n - 1):
            out = [dict() for _ in range(d)]
            for m in range(d):
                t = rest[:i] + (m,) + rest[i:]
                for o, c in a.structure.get(t, {}).items():
                    out[o][m] = c
            rows.extend(r for r in out if r)
    return Subspace.span(linalg.nullspace(rows, d), d)


def derived_subspace(a: Algebra) -> Subspace:
    d = a.dim
    vecs = [tuple(out.get(j, Fraction(0)) for j in range(d)) for _, out in sorted(a.structure.items())]
    return Subspace.span(vecs, d)


class SpaceAtlas:
    """Memoized spaces of one algebra, keyed by (kind, k, degree)."""

    def __init__(self, a: Algebra, require_alpha_commuting: bool = True):
        self.a = a
        self.require_alpha_commuting = require_alpha_commuting
        self._cache: dict = {}
        self._ann: Optional[Subspace] = None
        self._derived: Optional[Subspace] = None

    def get(self, kind: str, k: int, degree) -> SpaceBasis:
        key = (kind, k, self.a.group.element(degree))
        if key not in self._cache:
            self._cache[key] = solve_space(
                self.a, SpaceQuery(kind, k, key[2], self.require_alpha_commuting))
        return self._cache[key]

    def elements(self, kind: str, k: int) -> list:
        """Basis maps of level k, all degrees, each tagged with its degree."""
        return [w.D for g in self.a.group.elements() for w in self.get(kind, k, g).vectors]

    def witnessed(self, kind: str, k: int) -> list:
        return [w for g in self.a.group.elements() for w in self.get(kind, k, g).vectors]

    def contains(self, kind: str, k: int, f: Endo) -> bool:
        return self.get(kind, k, f.degree).contains(f)

    @property
    def ann(self) -> Subspace:
        if self._ann is None:
            self._ann = annihilator(self.a)
        return self._ann

    @property
    def derived(self) -> Subspace:
        if self._derived is None:
            self._derived = derived_subspace(self.a)
        return self._derived
