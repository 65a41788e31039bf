"""Direct evaluation of the defining identities of the operator spaces.

This is the cross-check for :mod:`colorhom.solver`: nothing here touches the
solver's equation assembly. Each definition is written out on concrete
vectors with :func:`colorhom.core.bracket`, and the only linear solving is
a black-box search for auxiliary maps, done by probing the residual.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from . import linalg
from .core import Algebra, Endo, bracket, endo_is_homogeneous
from .solver import SpaceQuery, WitnessedMap, allowed_entries, n_maps


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _axpy(acc, s, v):
    return tuple(x + s * y if y else x for x, y in zip(acc, v))


def residuals(a: Algebra, q: SpaceQuery, maps) -> list:
    """Concatenated defect of the definition of ``q.kind`` over all basis tuples.

    ``maps`` is ``(D, *auxiliary)``; the degree used in the signs is
    ``q.degree``.
    """
    n, d = a.arity, a.dim
    eps = a.bicharacter
    ak = a.alpha.power(q.k)
    D = maps[0]
    zero = (Fraction(0),) * d
    units = [a.unit(j) for j in range(d)]
    ak_units = [ak(x) for x in units]
    images = {}  # (map index, basis index) -> image

    def image(M, j):
        key = (id(M), j)
        if key not in images:
            images[key] = M(units[j])
        return images[key]

    out = []
    for t in product(range(d), repeat=n):
        xs = [units[j] for j in t]
        axs = [ak_units[j] for j in t]
        sgn = []
        acc = a.group.zero
        for j in t:
            sgn.append(eps(q.degree, acc))
            acc = a.group.add(acc, a.degrees[j])

        def ins(M, i):
            return bracket(a, *(axs[:i] + [image(M, t[i])] + axs[i + 1:]))

        top = bracket(a, *xs)
        if q.kind == "der":
            r = D(top)
            for i in range(n):
                r = _axpy(r, -sgn[i], ins(D, i))
            out.append(r)
        elif q.kind == "qder":
            r = maps[1](top)
            for i in range(n):
                r = _axpy(r, -sgn[i], ins(D, i))
            out.append(r)
        elif q.kind == "gder":
            r = _sub(maps[n](top), ins(D, 0))
            for i in range(1, n):
                r = _axpy(r, -sgn[i], ins(maps[i], i))
            out.append(r)
        elif q.kind == "c":
            dt = D(top)
            for i in range(n):
                out.append(_axpy(dt, -sgn[i], ins(D, i)))
        elif q.kind == "qc":
            first = ins(D, 0)
            for i in range(1, n):
                out.append(_axpy(first, -sgn[i], ins(D, i)))
        elif q.kind == "zder":
            out.append(D(top))
            for i in range(n):
                out.append(ins(D, i))
        else:
            raise ValueError(q.kind)
    return [x for v in out for x in v] or list(zero)


def _commutes(a: Algebra, f: Endo) -> bool:
    return (f @ a.alpha).matrix == (a.alpha @ f).matrix


def check_membership(a: Algebra, q: SpaceQuery, w) -> bool:
    """Does ``w`` (a WitnessedMap or a bare Endo) satisfy the definition of ``q``?

    For qder/gder without stored auxiliary maps, one is searched for.
    """
    if isinstance(w, Endo):
        w = WitnessedMap(w)
    need = n_maps(q.kind, a.arity) - 1
    if need and len(w.witnesses) != need:
        if w.witnesses:
            return False
        return find_witnesses(a, q, w.D) is not None
    if len(w.witnesses) != need:
        return False
    for f in w.maps:
        if f.dim != a.dim or not endo_is_homogeneous(a, f, q.degree):
            return False
        if q.require_alpha_commuting and not _commutes(a, f):
            return False
    return not any(residuals(a, q, w.maps))


def find_witnesses(a: Algebra, q: SpaceQuery, D: Endo):
    """Auxiliary maps completing D, or None when none exist."""
    need = n_maps(q.kind, a.arity) - 1
    d = a.dim
    if not endo_is_homogeneous(a, D, q.degree):
        return None
    if q.require_alpha_commuting and not _commutes(a, D):
        return None
    if not need:
        return () if not any(residuals(a, q, (D,))) else None
    zero = Endo.zero(d, q.degree)
    base = residuals(a, q, (D,) + (zero,) * need)
    entries = [(m, p) for m in range(need) for p in allowed_entries(a, q.degree)]
    columns = []
    for m, p in entries:
        probe = [zero] * need
        flat = [Fraction(0)] * (d * d)
        flat[p] = Fraction(1)
        probe[m] = Endo.from_flat(flat, d, q.degree)
        columns.append(_sub(residuals(a, q, (D,) + tuple(probe)), base))
    # rows of the system: one per residual coordinate
    rows = [tuple(col[r] for col in columns) for r in range(len(base))]
    rhs = [-x for x in base]
    if q.require_alpha_commuting:
        al = a.alpha.matrix
        index = {e: i for i, e in enumerate(entries)}
        for m in range(need):
            for r in range(d):
                for c in range(d):
                    row = [Fraction(0)] * len(entries)
                    for k in range(d):
                        i1 = index.get((m, r * d + k))
                        if i1 is not None:
                            row[i1] += al[k][c]
                        i2 = index.get((m, k * d + c))
                        if i2 is not None:
                            row[i2] -= al[r][k]
                    if any(row):
                        rows.append(tuple(row))
                        rhs.append(Fraction(0))
    if not entries:
        return () if not any(base) else None
    x = linalg.solve(rows, rhs, len(entries))
    if x is None:
        return None
    maps = []
    for m in range(need):
        flat = [Fraction(0)] * (d * d)
        for (mm, p), v in zip(entries, x):
            if mm == m:
                flat[p] = v
        maps.append(Endo.from_flat(flat, d, q.degree))
    return tuple(maps)
