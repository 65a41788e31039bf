"""Instance verification of the structural results on operator spaces.

Every check runs over all pairs of computed basis elements with levels
``k, s <= kmax`` and over all degrees, and places the combined map in the
computed target space. Statements about infinite direct sums over k are
truncated at the computed levels; the report says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Optional

from . import linalg
from .core import (Algebra, Endo, color_commutator, is_surjective, jordan_product)
from .membership import check_membership
from .solver import SpaceAtlas, SpaceQuery, WitnessedMap


@dataclass
class Check:
    id: str
    description: str
    status: str = "pass"  # pass | fail | skipped
    witness: Optional[dict] = None
    instances: int = 0

    def fail(self, **witness):
        if self.status != "fail":
            self.status = "fail"
            self.witness = witness


@dataclass
class LemmaEntry:
    lemma: str
    hypotheses_satisfied: bool = True
    checks: list = field(default_factory=list)
    note: str = ""

    @property
    def status(self) -> str:
        if not self.hypotheses_satisfied:
            return "skipped"
        if any(c.status == "fail" for c in self.checks):
            return "fail"
        return "pass"


@dataclass
class LemmaReport:
    algebra: str
    kmax: int
    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    def entry(self, lemma: str) -> LemmaEntry:
        return next(e for e in self.entries if e.lemma == lemma)

    def checks(self):
        for e in self.entries:
            for c in e.checks:
                yield e, c


LEMMAS = ("2.1", "2.2", "2.3", "2.5", "2.6", "2.7")


def _mat_json(f: Endo):
    return [[str(x) for x in row] for row in f.matrix]


def _alpha_tilde(a: Algebra, f: Endo) -> Endo:
    return (a.alpha @ f).with_degree(f.degree)


def _compose(a: Algebra, f: Endo, g: Endo) -> Endo:
    return (f @ g).with_degree(a.group.add(f.degree, g.degree))


def _levels(kmax):
    return [(k, s) for k in range(kmax + 1) for s in range(kmax + 1)]


def _pair_closure(atlas, check, src1, src2, op, target, kmax):
    """Every op(D1, D2) with D1 in src1_k, D2 in src2_s lies in target_{k+s}."""
    a = atlas.a
    for k, s in _levels(kmax):
        for f in atlas.elements(src1, k):
            for g in atlas.elements(src2, s):
                h = op(f, g)
                check.instances += 1
                if not atlas.contains(target, k + s, h):
                    check.fail(k=k, s=s, left=_mat_json(f), right=_mat_json(g),
                               result=_mat_json(h), target=f"{target}_{k + s}")
                    return check
    return check


def _alpha_closure(atlas, check, kind, kmax):
    a = atlas.a
    for k in range(kmax + 1):
        for f in atlas.elements(kind, k):
            h = _alpha_tilde(a, f)
            check.instances += 1
            if not atlas.contains(kind, k + 1, h):
                check.fail(k=k, map=_mat_json(f), result=_mat_json(h), target=f"{kind}_{k + 1}")
                return check
    return check


def _containment(atlas, check, small, big, kmax):
    for k in range(2 * kmax + 1):
        for f in atlas.elements(small, k):
            check.instances += 1
            if not atlas.contains(big, k, f):
                check.fail(k=k, map=_mat_json(f), target=f"{big}_{k}")
                return check
    return check


def inclusion_chain(a: Algebra, kmax: int = 2, degrees=None, atlas: Optional[SpaceAtlas] = None):
    """ZDer <= Der <= QDer <= GDer at every level k <= kmax and degree."""
    atlas = atlas or SpaceAtlas(a)
    degrees = a.group.elements() if degrees is None else [a.group.element(g) for g in degrees]
    checks = []
    chain = ("zder", "der", "qder", "gder")
    for k in range(kmax + 1):
        for g in degrees:
            for small, big in zip(chain, chain[1:]):
                s, b = atlas.get(small, k, g), atlas.get(big, k, g)
                c = Check(f"chain:{small}<={big}", f"{small} <= {big} at k={k}, degree {g}",
                          instances=s.dim)
                v = b.subspace.first_outside(s.subspace.basis)
                if v is not None:
                    c.fail(k=k, degree=list(g), vector=[str(x) for x in v])
                checks.append(c)
    return checks


def _lemma_2_1(atlas, kmax):
    a, b = atlas.a, atlas.a.bicharacter
    br = lambda f, g: color_commutator(b, f, g)
    e = LemmaEntry("2.1")
    for kind, label in (("gder", "GDer"), ("qder", "QDer"), ("c", "C"), ("der", "Der")):
        e.checks.append(_pair_closure(
            atlas, Check(f"2.1:{kind}-bracket", f"[{label}_k, {label}_s] <= {label}_(k+s)"),
            kind, kind, br, kind, kmax))
        e.checks.append(_alpha_closure(
            atlas, Check(f"2.1:{kind}-alpha", f"alpha~({label}_k) <= {label}_(k+1)"), kind, kmax))
    e.checks.append(_pair_closure(
        atlas, Check("2.1:zder-ideal-left", "[ZDer_k, Der_s] <= ZDer_(k+s)"),
        "zder", "der", br, "zder", kmax))
    e.checks.append(_pair_closure(
        atlas, Check("2.1:zder-ideal-right", "[Der_k, ZDer_s] <= ZDer_(k+s)"),
        "der", "zder", br, "zder", kmax))
    e.checks.append(_alpha_closure(
        atlas, Check("2.1:zder-alpha", "alpha~(ZDer_k) <= ZDer_(k+1)"), "zder", kmax))
    return e


def _lemma_2_2(atlas, kmax):
    a, b = atlas.a, atlas.a.bicharacter
    br = lambda f, g: color_commutator(b, f, g)
    comp = lambda f, g: _compose(a, f, g)
    e = LemmaEntry("2.2")
    e.checks.append(_pair_closure(atlas, Check("2.2(1)", "[Der, C] <= C"),
                                  "der", "c", br, "c", kmax))
    e.checks.append(_pair_closure(atlas, Check("2.2(2)", "[QDer, QC] <= QC"),
                                  "qder", "qc", br, "qc", kmax))
    e.checks.append(_pair_closure(atlas, Check("2.2(3)", "C . Der <= Der"),
                                  "c", "der", comp, "der", kmax))
    c4 = _containment(atlas, Check("2.2(4)", "C <= QDer, with D' = n D"), "c", "qder", kmax)
    if c4.status == "pass":
        for k in range(2 * kmax + 1):
            for f in atlas.elements("c", k):
                w = WitnessedMap(f, (f.scale(a.arity),))
                if not check_membership(a, SpaceQuery("qder", k, f.degree,
                                                      atlas.require_alpha_commuting), w):
                    c4.fail(k=k, map=_mat_json(f), reason="D' = n D is not a witness")
    e.checks.append(c4)
    e.checks.append(_pair_closure(atlas, Check("2.2(5)", "[QC, QC] <= QDer"),
                                  "qc", "qc", br, "qder", kmax))
    e.checks.append(_containment(atlas, Check("2.2(6a)", "QDer <= GDer"), "qder", "gder", kmax))
    e.checks.append(_containment(atlas, Check("2.2(6b)", "QC <= GDer"), "qc", "gder", kmax))
    return e


def _qc_plus_brackets(atlas, level):
    """Spanning maps of (QC + [QC, QC]) at one level, all degrees."""
    b = atlas.a.bicharacter
    out = list(atlas.elements("qc", level))
    for k in range(level + 1):
        for f in atlas.elements("qc", k):
            for g in atlas.elements("qc", level - k):
                out.append(color_commutator(b, f, g))
    return out


def _lemma_2_3(atlas, kmax):
    a, b = atlas.a, atlas.a.bicharacter
    e = LemmaEntry("2.3")
    top = max(2 * kmax, kmax + 1)
    spans = {}
    for lvl in range(top + 1):
        by_deg = {}
        for f in _qc_plus_brackets(atlas, lvl):
            by_deg.setdefault(f.degree, []).append(f.flat())
        spans[lvl] = {g: linalg.Subspace.span(v, a.dim ** 2) for g, v in by_deg.items()}

    def basis(lvl):
        return [Endo.from_flat(v, a.dim, g) for g, sp in sorted(spans[lvl].items())
                for v in sp.basis]

    def inside(lvl, f):
        sp = spans.get(lvl, {}).get(f.degree)
        if sp is None:
            return f.is_zero()
        return sp.contains(f.flat())

    sub = Check("2.3:in-gder", "QC + [QC, QC] <= GDer")
    for lvl in range(top + 1):
        for f in basis(lvl):
            sub.instances += 1
            if not atlas.contains("gder", lvl, f):
                sub.fail(k=lvl, map=_mat_json(f))
                break
    e.checks.append(sub)
    clo = Check("2.3:bracket", "[QC + [QC,QC], QC + [QC,QC]] <= QC + [QC,QC]")
    for k, s in _levels(kmax):
        for f in basis(k):
            for g in basis(s):
                h = color_commutator(b, f, g)
                clo.instances += 1
                if not inside(k + s, h):
                    clo.fail(k=k, s=s, left=_mat_json(f), right=_mat_json(g))
    e.checks.append(clo)
    alc = Check("2.3:alpha", "alpha~(QC + [QC,QC]) <= QC + [QC,QC]")
    for k in range(kmax + 1):
        for f in basis(k):
            alc.instances += 1
            if not inside(k + 1, _alpha_tilde(a, f)):
                alc.fail(k=k, map=_mat_json(f))
    e.checks.append(alc)
    e.note = f"levels 0..{top}; sums over all k truncated there"
    return e


def _lemma_2_5(atlas, kmax):
    a, b = atlas.a, atlas.a.bicharacter
    e = LemmaEntry("2.5")
    if not is_surjective(a.alpha):
        e.hypotheses_satisfied = False
        e.note = "skipped: hypothesis (alpha is not surjective)"
        return e
    ann = atlas.ann
    img = Check("2.5:image", "[C, QC] maps T into Ann(T)")
    zero = Check("2.5:zero", "Ann(T) = 0 implies [C, QC] = 0")
    if not ann.is_zero():
        zero.status = "skipped"
        zero.witness = {"reason": "hypothesis: Ann(T) != 0"}
    for k, s in _levels(kmax):
        for f in atlas.elements("c", k):
            for g in atlas.elements("qc", s):
                h = color_commutator(b, f, g)
                img.instances += 1
                cols = list(zip(*h.matrix))
                v = ann.first_outside(cols)
                if v is not None:
                    img.fail(k=k, s=s, left=_mat_json(f), right=_mat_json(g),
                             image=[str(x) for x in v])
                if zero.status != "skipped":
                    zero.instances += 1
                    if not h.is_zero():
                        zero.fail(k=k, s=s, left=_mat_json(f), right=_mat_json(g))
    e.checks += [img, zero]
    return e


def hom_jordan_defect(a, x, y, z, w, jp=None, at=None):
    """Cyclic Hom-Jordan sum for (S, ., alpha~), with alpha~ kept on the product.

    S is not multiplicative for alpha~, so alpha~(x . y) may not be
    rewritten as alpha~(x) . alpha~(y) here. ``jp`` and ``at`` may be
    memoized versions of the product and of alpha~.
    """
    b, g = a.bicharacter, a.group
    jp = jp or (lambda f, h: jordan_product(b, f, h))
    at = at or (lambda f: _alpha_tilde(a, f))

    def assoc(p, q, r):
        return jp(jp(p, q), at(r)) - jp(at(p), jp(q, r))

    total = Endo.zero(a.dim)
    for u, v, t in ((x, y, z), (y, z, x), (z, x, y)):
        sign = b(t.degree, g.add(u.degree, w.degree))
        total = total + assoc(jp(u, v), at(w), at(t)).scale(sign)
    return total


def _integer_matrix(m) -> tuple:
    den = 1
    for row in m:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    return tuple(tuple(int(x * den) for x in row) for row in m)


def _imul(p, q):
    cols = list(zip(*q))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in p)


def _hom_jordan_zero_all(a, elems):
    """First quadruple of ``elems`` with a nonzero Hom-Jordan defect, or None.

    The defect is multilinear in its four arguments and homogeneous in
    alpha, and every term nests three Jordan products; so each map is
    rescaled to an integer matrix and the factors 1/2 are dropped. Zero
    stays zero, and the arithmetic stays in machine integers.
    """
    b, g = a.bicharacter, a.group
    al = _integer_matrix(a.alpha.matrix)
    items = [(_integer_matrix(f.matrix), f.degree) for f in elems]
    jcache, acache = {}, {}

    def jp(u, v):
        key = (u, v)
        if key not in jcache:
            s = b(u[1], v[1])
            fg, gf = _imul(u[0], v[0]), _imul(v[0], u[0])
            m = tuple(tuple(x + s * y for x, y in zip(r1, r2)) for r1, r2 in zip(fg, gf))
            jcache[key] = (m, g.add(u[1], v[1]))
        return jcache[key]

    def at(u):
        if u not in acache:
            acache[u] = (_imul(al, u[0]), u[1])
        return acache[u]

    d = a.dim
    for x, y, z, w in product(items, repeat=4):
        total = [[0] * d for _ in range(d)]
        for u, v, t in ((x, y, z), (y, z, x), (z, x, y)):
            sign = b(t[1], g.add(u[1], w[1]))
            uv = jp(u, v)
            left = jp(jp(uv, at(w)), at(at(t)))[0]
            right = jp(at(uv), jp(at(w), at(t)))[0]
            for r in range(d):
                tr, lr, rr = total[r], left[r], right[r]
                for c in range(d):
                    tr[c] += sign * (lr[c] - rr[c])
        if any(any(row) for row in total):
            return tuple(elems[items.index(q)] for q in (x, y, z, w))
    return None


def _lemma_2_6(atlas, kmax):
    a, b = atlas.a, atlas.a.bicharacter
    e = LemmaEntry("2.6")
    jp = lambda f, g: jordan_product(b, f, g)
    e.checks.append(_pair_closure(atlas, Check("2.6:closure", "QC . QC <= QC (Jordan product)"),
                                  "qc", "qc", jp, "qc", kmax))
    elems = [f for k in range(kmax + 1) for f in atlas.elements("qc", k)]

    comm = Check("2.6:commutative", "x . y = eps(x, y) y . x on QC",
                 instances=len(elems) ** 2)
    for f in elems:
        for h in elems:
            if jp(f, h) != jp(h, f).scale(b(f.degree, h.degree)):
                comm.fail(left=_mat_json(f), right=_mat_json(h))
    e.checks.append(comm)
    jor = Check("2.6:hom-jordan",
                "eps(z,x+w) as(x.y, a~w, a~z) + eps(x,y+w) as(y.z, a~w, a~x)"
                " + eps(y,z+w) as(z.x, a~w, a~y) = 0 on QC",
                instances=len(elems) ** 4)
    bad = _hom_jordan_zero_all(a, elems)
    if bad is not None:
        jor.fail(**{v: _mat_json(f) for v, f in zip("xyzw", bad)})
    e.checks.append(jor)
    e.note = f"QC elements of levels 0..{kmax}"
    return e


def _lemma_2_7(atlas, kmax):
    a, b = atlas.a, atlas.a.bicharacter
    e = LemmaEntry("2.7")
    pairs = [(k, s, f, g) for k, s in _levels(kmax)
             for f in atlas.elements("qc", k) for g in atlas.elements("qc", s)]
    bracket_closed = all(atlas.contains("qc", k + s, color_commutator(b, f, g))
                         for k, s, f, g in pairs)
    comp_closed = all(atlas.contains("qc", k + s, _compose(a, f, g)) for k, s, f, g in pairs)
    c1 = Check("2.7(1)", "QC closed under [,] iff closed under composition",
               instances=len(pairs))
    summary = {"bracket_closed": bracket_closed, "composition_closed": comp_closed}
    c1.witness = summary
    if bracket_closed != comp_closed:
        c1.fail(**summary)
    e.checks.append(c1)
    c2 = Check("2.7(2)", "alpha onto, Ann(T) = 0: QC closed under [,] iff [QC, QC] = 0",
               instances=len(pairs))
    if is_surjective(a.alpha) and atlas.ann.is_zero():
        all_zero = all(color_commutator(b, f, g).is_zero() for _, _, f, g in pairs)
        c2.witness = {"bracket_closed": bracket_closed, "brackets_vanish": all_zero}
        if bracket_closed != all_zero:
            c2.fail(bracket_closed=bracket_closed, brackets_vanish=all_zero)
    else:
        c2.status = "skipped"
        c2.witness = {"reason": "hypothesis: needs alpha surjective and Ann(T) = 0"}
    e.checks.append(c2)
    e.note = f"truncated: only QC levels 0..{kmax} and their products are examined"
    return e


_RUNNERS = {"2.1": _lemma_2_1, "2.2": _lemma_2_2, "2.3": _lemma_2_3,
            "2.5": _lemma_2_5, "2.6": _lemma_2_6, "2.7": _lemma_2_7}


def verify_lemmas(a: Algebra, kmax: int = 2, lemmas=LEMMAS,
                  atlas: Optional[SpaceAtlas] = None) -> LemmaReport:
    atlas = atlas or SpaceAtlas(a)
    rep = LemmaReport(a.name, kmax)
    for lem in lemmas:
        if lem not in _RUNNERS:
            raise ValueError(f"unknown lemma {lem!r}; known: {', '.join(_RUNNERS)}")
        rep.entries.append(_RUNNERS[lem](atlas, kmax))
    return rep
