"""Graded algebras given by structure constants.

Conventions shared by every module:

* basis indices are 0-based;
* a linear map is a d x d matrix whose column ``i`` holds the image of
  ``e_i`` (so ``M[j][i]`` is the ``e_j`` coefficient of ``M(e_i)``);
* group elements are tuples of residues, one per cyclic factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional, Sequence

from . import linalg
from .linalg import Matrix, Vector

GroupElement = tuple


class AlgebraError(ValueError):
    """Structurally malformed input (dimension or shape mismatch)."""


@dataclass(frozen=True)
class GradingGroup:
    """Z_{m1} x ... x Z_{mr}; the empty product is the trivial group."""

    cyclic_orders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cyclic_orders", tuple(int(m) for m in self.cyclic_orders))
        if any(m < 1 for m in self.cyclic_orders):
            raise AlgebraError("cyclic orders must be >= 1")

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def order(self) -> int:
        out = 1
        for m in self.cyclic_orders:
            out *= m
        return out

    @property
    def zero(self) -> GroupElement:
        return (0,) * self.rank

    def element(self, g: Sequence[int]) -> GroupElement:
        g = tuple(int(x) for x in g)
        if len(g) != self.rank:
            raise AlgebraError(f"group element {g} has {len(g)} components, expected {self.rank}")
        return tuple(x % m for x, m in zip(g, self.cyclic_orders))

    def add(self, *gs: GroupElement) -> GroupElement:
        acc = [0] * self.rank
        for g in gs:
            for i, x in enumerate(g):
                acc[i] += x
        return tuple(x % m for x, m in zip(acc, self.cyclic_orders))

    def neg(self, g: GroupElement) -> GroupElement:
        return tuple((-x) % m for x, m in zip(g, self.cyclic_orders))

    def elements(self) -> list[GroupElement]:
        return [tuple(g) for g in product(*(range(m) for m in self.cyclic_orders))]

    def contains(self, g) -> bool:
        return len(g) == self.rank and all(0 <= x < m for x, m in zip(g, self.cyclic_orders))


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str, witness=()):
        self.violations.append(Violation(kind, message, tuple(witness)))

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Bicharacter:
    """A {+1, -1}-valued bicharacter given by its values on generator pairs."""

    group: GradingGroup
    gen_values: tuple = ()

    def __post_init__(self):
        vals = tuple(tuple(int(x) for x in row) for row in self.gen_values)
        object.__setattr__(self, "gen_values", vals)
        r = self.group.rank
        if len(vals) != r or any(len(row) != r for row in vals):
            raise AlgebraError(f"bicharacter matrix must be {r}x{r}")

    @classmethod
    def trivial(cls, group: GradingGroup) -> "Bicharacter":
        return cls(group, tuple((1,) * group.rank for _ in range(group.rank)))

    def __call__(self, g: GroupElement, h: GroupElement) -> int:
        sign = 1
        for i, gi in enumerate(g):
            if not gi:
                continue
            row = self.gen_values[i]
            for j, hj in enumerate(h):
                if row[j] == -1 and (gi * hj) % 2:
                    sign = -sign
        return sign


def validate_bicharacter(b: Bicharacter) -> ValidationReport:
    rep = ValidationReport()
    orders = b.group.cyclic_orders
    for i, row in enumerate(b.gen_values):
        for j, v in enumerate(row):
            if v not in (1, -1):
                rep.add("values", f"eps(g{i}, g{j}) = {v} is not +1 or -1", (i, j))
                continue
            if v * b.gen_values[j][i] != 1:
                rep.add("symmetry", f"eps(g{i}, g{j}) eps(g{j}, g{i}) != 1", (i, j))
            if v == -1 and (orders[i] % 2 or orders[j] % 2):
                rep.add("well-defined",
                        f"(-1)^{orders[i] if orders[i] % 2 else orders[j]} != 1 for generators "
                        f"({i}, {j})", (i, j))
    return rep


@dataclass(frozen=True)
class Endo:
    """A linear map on T, optionally tagged with a homogeneous degree."""

    matrix: Matrix
    degree: Optional[GroupElement] = None

    def __post_init__(self):
        m = tuple(tuple(linalg.to_fraction(x) for x in row) for row in self.matrix)
        if any(len(row) != len(m) for row in m):
            raise AlgebraError("Endo matrix must be square")
        object.__setattr__(self, "matrix", m)
        if self.degree is not None:
            object.__setattr__(self, "degree", tuple(self.degree))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, d: int, degree=None) -> "Endo":
        return cls(linalg.identity(d), degree)

    @classmethod
    def zero(cls, d: int, degree=None) -> "Endo":
        return cls(linalg.zeros(d, d), degree)

    @classmethod
    def from_flat(cls, v: Sequence, d: int, degree=None) -> "Endo":
        return cls(linalg.unflatten(v, d), degree)

    def flat(self) -> Vector:
        return linalg.flatten(self.matrix)

    def __call__(self, v: Vector) -> Vector:
        return linalg.matvec(self.matrix, v)

    def __matmul__(self, other: "Endo") -> "Endo":
        # the product degree needs the group to reduce; callers tag it
        return Endo(linalg.matmul(self.matrix, other.matrix))

    def __add__(self, other: "Endo") -> "Endo":
        deg = self.degree if self.degree == other.degree else None
        return Endo(linalg.matadd(self.matrix, other.matrix), deg)

    def __sub__(self, other: "Endo") -> "Endo":
        deg = self.degree if self.degree == other.degree else None
        return Endo(linalg.matadd(self.matrix, other.matrix, -1), deg)

    def scale(self, s) -> "Endo":
        return Endo(linalg.matscale(self.matrix, linalg.to_fraction(s)), self.degree)

    def with_degree(self, degree) -> "Endo":
        return Endo(self.matrix, degree)

    def is_zero(self) -> bool:
        return linalg.is_zero(self.matrix)

    def power(self, k: int) -> "Endo":
        return Endo(linalg.matpow(self.matrix, k), self.degree)


@dataclass(frozen=True)
class Algebra:
    """A G-graded n-ary algebra with twisting map, by structure constants.

    ``structure`` maps an n-tuple of basis indices to a sparse output
    ``{j: c}``; absent tuples bracket to zero.
    """

    name: str
    arity: int
    dim: int
    group: GradingGroup
    degrees: tuple
    bicharacter: Bicharacter
    structure: Mapping
    alpha: Endo
    basis_names: tuple = ()

    def __post_init__(self):
        if self.arity < 2:
            raise AlgebraError("arity must be at least 2")
        if self.dim < 1:
            raise AlgebraError("dimension must be at least 1")
        degs = tuple(self.group.element(g) for g in self.degrees)
        if len(degs) != self.dim:
            raise AlgebraError(f"{len(degs)} degrees given for dimension {self.dim}")
        object.__setattr__(self, "degrees", degs)
        if self.alpha.dim != self.dim:
            raise AlgebraError("alpha has the wrong size")
        if self.bicharacter.group != self.group:
            raise AlgebraError("bicharacter is defined on a different group")
        clean = {}
        for args, out in self.structure.items():
            args = tuple(int(a) for a in args)
            if len(args) != self.arity:
                raise AlgebraError(f"bracket entry {args} does not have {self.arity} arguments")
            if any(not 0 <= a < self.dim for a in args):
                raise AlgebraError(f"bracket entry {args} has an index out of range")
            vals = {}
            for j, c in dict(out).items():
                j = int(j)
                if not 0 <= j < self.dim:
                    raise AlgebraError(f"bracket value index {j} out of range")
                c = linalg.to_fraction(c)
                if c:
                    vals[j] = c
            if vals:
                clean[args] = vals
        object.__setattr__(self, "structure", clean)
        names = tuple(self.basis_names) or tuple(f"e{i + 1}" for i in range(self.dim))
        if len(names) != self.dim:
            raise AlgebraError("basis_names has the wrong length")
        object.__setattr__(self, "basis_names", names)

    @property
    def eps(self) -> Bicharacter:
        return self.bicharacter

    def unit(self, i: int) -> Vector:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def degree_of(self, *indices: int) -> GroupElement:
        return self.group.add(*(self.degrees[i] for i in indices))

    def same_structure(self, other: "Algebra") -> bool:
        return (self.arity == other.arity and self.dim == other.dim
                and self.group == other.group and self.degrees == other.degrees
                and self.bicharacter == other.bicharacter
                and self.structure == other.structure and self.alpha.matrix == other.alpha.matrix)


def bracket(a: Algebra, *vectors: Vector) -> Vector:
    """n-linear extension of the structure constants."""
    if len(vectors) != a.arity:
        raise AlgebraError(f"bracket of {a.name} takes {a.arity} arguments, got {len(vectors)}")
    supports = []
    for v in vectors:
        if len(v) != a.dim:
            raise AlgebraError("vector length does not match algebra dimension")
        s = [(i, x) for i, x in enumerate(v) if x]
        if not s:
            return tuple([Fraction(0)] * a.dim)
        supports.append(s)
    out = [Fraction(0)] * a.dim
    st = a.structure
    for combo in product(*supports):
        val = st.get(tuple(i for i, _ in combo))
        if val is None:
            continue
        c = Fraction(1)
        for _, x in combo:
            c *= x
        for j, y in val.items():
            out[j] += c * y
    return tuple(out)


def endo_is_homogeneous(a: Algebra, f: Endo, degree=None) -> bool:
    xi = f.degree if degree is None else degree
    if xi is None:
        return True
    xi = a.group.element(xi)
    for j, row in enumerate(f.matrix):
        for i, x in enumerate(row):
            if x and a.degrees[j] != a.group.add(a.degrees[i], xi):
                return False
    return True


def _need_degrees(f: Endo, g: Endo):
    if f.degree is None or g.degree is None:
        raise AlgebraError("color products need homogeneous maps with declared degrees")


def color_commutator(b: Bicharacter, f: Endo, g: Endo) -> Endo:
    """[f, g] = fg - eps(f, g) gf."""
    _need_degrees(f, g)
    s = b(f.degree, g.degree)
    m = linalg.matadd(linalg.matmul(f.matrix, g.matrix), linalg.matmul(g.matrix, f.matrix), -s)
    return Endo(m, b.group.add(f.degree, g.degree))


def jordan_product(b: Bicharacter, f: Endo, g: Endo) -> Endo:
    """f . g = (fg + eps(f, g) gf) / 2."""
    _need_degrees(f, g)
    s = b(f.degree, g.degree)
    m = linalg.matadd(linalg.matmul(f.matrix, g.matrix), linalg.matmul(g.matrix, f.matrix), s)
    return Endo(linalg.matscale(m, Fraction(1, 2)), b.group.add(f.degree, g.degree))


def hom_associator(a: Algebra, x: Vector, y: Vector, z: Vector) -> Vector:
    """[[x, y], alpha(z)] - [alpha(x), [y, z]] for a binary algebra."""
    if a.arity != 2:
        raise AlgebraError("the Hom-associator is defined for binary algebras")
    left = bracket(a, bracket(a, x, y), a.alpha(z))
    right = bracket(a, a.alpha(x), bracket(a, y, z))
    return tuple(p - q for p, q in zip(left, right))


def validate_algebra(a: Algebra) -> ValidationReport:
    rep = validate_bicharacter(a.bicharacter)
    for args, out in sorted(a.structure.items()):
        target = a.degree_of(*args)
        for j in sorted(out):
            if a.degrees[j] != target:
                rep.add("grading", f"[{', '.join(a.basis_names[i] for i in args)}] has a "
                        f"component on {a.basis_names[j]} outside degree {target}", args + (j,))
    for j, row in enumerate(a.alpha.matrix):
        for i, x in enumerate(row):
            if x and a.degrees[i] != a.degrees[j]:
                rep.add("alpha-even", f"alpha maps {a.basis_names[i]} onto {a.basis_names[j]}",
                        (i, j))
    images = [a.alpha(a.unit(i)) for i in range(a.dim)]
    for args in product(range(a.dim), repeat=a.arity):
        lhs = a.alpha(bracket(a, *(a.unit(i) for i in args)))
        rhs = bracket(a, *(images[i] for i in args))
        if lhs != rhs:
            rep.add("multiplicative", f"alpha([...]) != [alpha(...)] at {args}",
                    args + (tuple(p - q for p, q in zip(lhs, rhs)),))
    return rep


def is_surjective(f: Endo) -> bool:
    return linalg.rank(f.matrix, f.dim) == f.dim
