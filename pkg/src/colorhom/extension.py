"""The enlarged algebra T t + T t^n and the embedding of quasiderivations.

Basis of the extension: indices ``0..d-1`` are ``e_i t``, indices
``d..2d-1`` are ``e_i t^n``. The formal variable t carries degree 0, so
the extension is graded by the same group as T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from . import linalg
from .core import Algebra, AlgebraError, Endo, endo_is_homogeneous
from .lemmas import Check, _mat_json
from .linalg import Subspace
from .membership import check_membership
from .solver import SpaceAtlas, SpaceQuery, WitnessedMap, derived_subspace, null_witnesses

T_DEGREE_NOTE = "t is given degree 0 in the grading group"


@dataclass(frozen=True)
class ExtendedAlgebra:
    base: Algebra
    alg: Algebra
    slot_tags: tuple  # exponent of t for each basis vector: 1 or n

    @property
    def d(self) -> int:
        return self.base.dim

    def t_half(self) -> range:
        return range(self.d)

    def tn_half(self) -> range:
        return range(self.d, 2 * self.d)


def extend(a: Algebra) -> ExtendedAlgebra:
    n, d = a.arity, a.dim
    exps = (1,) * d + (n,) * d
    index = {1: 0, n: d}  # exponent -> offset of its half

    structure = {}
    for t in product(range(2 * d), repeat=n):
        s = sum(exps[i] for i in t)
        if s not in index:  # t^s = 0 for s > n
            continue
        out = a.structure.get(tuple(i % d for i in t))
        if out:
            structure[t] = {index[s] + j: c for j, c in out.items()}

    al = a.alpha.matrix
    alpha = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
    for r in range(d):
        for c in range(d):
            alpha[r][c] = alpha[r + d][c + d] = al[r][c]
    names = (tuple(f"{x}·t" for x in a.basis_names)
             + tuple(f"{x}·t^n" for x in a.basis_names))
    alg = Algebra(f"{a.name}-ext", n, 2 * d, a.group, a.degrees + a.degrees,
                  a.bicharacter, structure, Endo(tuple(map(tuple, alpha))), names)
    return ExtendedAlgebra(a, alg, exps)


def graded_complement(a: Algebra, derived: Optional[Subspace] = None) -> Subspace:
    """Homogeneous U with T = U + [T, ..., T], by greedy pivots over e_1, e_2, ..."""
    d = a.dim
    derived = derived if derived is not None else derived_subspace(a)
    red = linalg.RowReducer(d)
    red.add_many(derived.basis)
    chosen = []
    for g in a.group.elements():
        for i in range(d):
            if a.degrees[i] == g and red.add(a.unit(i)):
                chosen.append(a.unit(i))
    return Subspace.span(chosen, d)


def projection_along(a: Algebra, derived: Subspace, U: Subspace) -> Endo:
    """Projection onto ``derived`` with kernel ``U``."""
    d = a.dim
    if derived.dim + U.dim != d or (derived + U).dim != d:
        raise AlgebraError("U is not a complement of the derived subspace")
    cols = list(U.basis) + list(derived.basis)
    rows = [tuple(col[r] for col in cols) for r in range(d)]
    P = [[Fraction(0)] * d for _ in range(d)]
    for j in range(d):
        coords = linalg.solve(rows, a.unit(j), d)
        img = linalg.lin_comb(coords[U.dim:], derived.basis) if derived.dim else (Fraction(0),) * d
        for r in range(d):
            P[r][j] = img[r]
    return Endo(tuple(map(tuple, P)), a.group.zero)


@dataclass(frozen=True)
class PhiMap:
    source: WitnessedMap
    matrix: Endo
    complement: Subspace

    @property
    def degree(self):
        return self.matrix.degree


def _block(D: Endo, E: Endo, degree) -> Endo:
    d = D.dim
    m = [[Fraction(0)] * (2 * d) for _ in range(2 * d)]
    for r in range(d):
        for c in range(d):
            m[r][c] = D.matrix[r][c]
            m[r + d][c + d] = E.matrix[r][c]
    return Endo(tuple(map(tuple, m)), degree)


def phi(x: ExtendedAlgebra, w: WitnessedMap, U: Subspace, k: int = 0,
        require_alpha_commuting: bool = True, check: bool = True,
        derived: Optional[Subspace] = None) -> PhiMap:
    """phi(D)(a t + u t^n + b t^n) = D(a) t + D'(b) t^n, with u in U and b in [T, ..., T]."""
    a = x.base
    degree = w.D.degree if w.D.degree is not None else a.group.zero
    if check:
        q = SpaceQuery("qder", k, degree, require_alpha_commuting)
        if len(w.witnesses) != 1 or not check_membership(a, q, w):
            raise AlgebraError("phi needs a quasiderivation together with its witness D'")
    derived = derived if derived is not None else derived_subspace(a)
    P = projection_along(a, derived, U)
    return PhiMap(w, _block(w.D, w.witnesses[0] @ P, degree), U)


# -- verification --------------------------------------------------------

@dataclass
class EmbeddingReport:
    algebra: str
    kmax: int
    complement: Subspace
    checks: dict = field(default_factory=dict)  # id -> Check
    dims: list = field(default_factory=list)  # one dict per (k, degree)
    notes: tuple = (T_DEGREE_NOTE,)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks.values())


def verify_embedding(a: Algebra, kmax: int = 1, atlas: Optional[SpaceAtlas] = None,
                     x: Optional[ExtendedAlgebra] = None) -> EmbeddingReport:
    atlas = atlas or SpaceAtlas(a)
    commuting = atlas.require_alpha_commuting
    x = x or extend(a)
    ext_atlas = SpaceAtlas(x.alg, commuting)
    U = graded_complement(a, atlas.derived)
    rep = EmbeddingReport(a.name, kmax, U)
    even = Check("3.4-1", "phi(D) is homogeneous of the degree of D")
    inj = Check("3.4-2:injective", "rank of phi(basis of QDer) = dim QDer")
    indep = Check("3.4-2:witness-independent", "phi(D, D') = phi(D, D' + Z) for Z killing [T, ..., T]")
    inside = Check("3.4-3", "phi(QDer(T)) <= Der(T ext)")
    split = Check("3.5", "Der(T ext) = phi(QDer(T)) + ZDer(T ext), direct")
    rep.checks = {c.id: c for c in (even, inj, indep, inside, split)}
    ann_zero = atlas.ann.is_zero()
    if not ann_zero:
        split.status = "skipped"
        split.witness = {"reason": "hypothesis: Ann(T) != 0"}

    for k in range(kmax + 1):
        for g in a.group.elements():
            basis = atlas.get("qder", k, g)
            q = SpaceQuery("qder", k, g, commuting)
            zs = null_witnesses(a, q)
            images = []
            for w in basis.vectors:
                p = phi(x, w, U, k, commuting, check=False, derived=atlas.derived)
                images.append(p.matrix)
                even.instances += 1
                if not endo_is_homogeneous(x.alg, p.matrix, g):
                    even.fail(k=k, degree=list(g), D=_mat_json(w.D))
                inside.instances += 1
                if not check_membership(x.alg, SpaceQuery("der", k, g, commuting), p.matrix):
                    inside.fail(k=k, degree=list(g), D=_mat_json(w.D), phi=_mat_json(p.matrix))
                for (Z,) in zs:
                    indep.instances += 1
                    w2 = WitnessedMap(w.D, (w.witnesses[0] + Z,))
                    p2 = phi(x, w2, U, k, commuting, check=False, derived=atlas.derived)
                    if p2.matrix.matrix != p.matrix.matrix:
                        indep.fail(k=k, degree=list(g), D=_mat_json(w.D), Z=_mat_json(Z))
            image = Subspace.span([f.flat() for f in images], (2 * a.dim) ** 2)
            inj.instances += 1
            if image.dim != basis.dim:
                inj.fail(k=k, degree=list(g), rank=image.dim, dim_qder=basis.dim)
            row = {"k": k, "degree": list(g), "qder": basis.dim, "phi_rank": image.dim}
            if ann_zero:
                der = ext_atlas.get("der", k, g).subspace
                zder = ext_atlas.get("zder", k, g).subspace
                split.instances += 1
                total = image + zder
                meet = image.intersection_dim(zder)
                row.update(der=der.dim, zder=zder.dim, intersection=meet)
                if total.basis != der.basis or meet != 0:
                    split.fail(k=k, degree=list(g), der=der.dim, phi=image.dim,
                               zder=zder.dim, intersection=meet)
            rep.dims.append(row)
    return rep
