from fractions import Fraction

import pytest

from colorhom.core import AlgebraError, Endo, bracket, color_commutator, validate_algebra
from colorhom.extension import (extend, graded_complement, phi, projection_along,
                                verify_embedding)
from colorhom.identity import builtin, check_identity
from colorhom.linalg import Subspace
from colorhom.membership import check_membership
from colorhom.solver import SpaceAtlas, SpaceQuery, WitnessedMap, annihilator, derived_subspace


def test_extend_shape(entries):
    for e in entries.values():
        x = extend(e.algebra)
        assert x.alg.dim == 2 * e.algebra.dim
        assert validate_algebra(x.alg).ok
        assert x.alg.degrees == e.algebra.degrees * 2
        for item in e.satisfies:
            for cid in builtin(item, e.algebra.arity):
                assert check_identity(x.alg, cid), (e.name, cid.name)


def test_heis3_products(alg):
    x = extend(alg("heis3"))
    u = x.alg.unit
    assert bracket(x.alg, u(0), u(1)) == u(5)  # [e1 t, e2 t] = e3 t^2
    assert not any(bracket(x.alg, u(0), u(4)))  # [e1 t, e2 t^2] = e3 t^3 = 0
    assert x.alg.basis_names[0] == "e1·t" and x.alg.basis_names[5] == "e3·t^n"


def test_ternary_exponents(alg):
    # n = 3: only all-t arguments survive, landing in the t^3 half
    x = extend(alg("filippov4"))
    assert all(max(args) < 4 and min(out) >= 4 for args, out in x.alg.structure.items())


def test_ann_of_extension(entries):
    for e in entries.values():
        x = extend(e.algebra)
        d = e.algebra.dim
        ann = annihilator(x.alg)
        half = Subspace.span([x.alg.unit(i) for i in x.tn_half()], 2 * d)
        assert ann.contains_space(half)
        if e.ann_zero:
            assert ann == half


def test_graded_complement(alg):
    assert graded_complement(alg("trivial2")) == Subspace.full(2)
    assert graded_complement(alg("heis3")) == Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    assert graded_complement(alg("sl2")).is_zero()
    a = alg("super-osc")
    U = graded_complement(a)
    assert U == Subspace.span([(0, 1)], 2)  # derived = span(e1), complement homogeneous
    assert (U + derived_subspace(a)).dim == U.dim + derived_subspace(a).dim == 2


def test_projection(alg):
    a = alg("heis3")
    P = projection_along(a, derived_subspace(a), graded_complement(a))
    assert P.matrix == ((0, 0, 0), (0, 0, 0), (0, 0, 1))
    with pytest.raises(AlgebraError):
        projection_along(a, derived_subspace(a), Subspace.zero(3))


def test_phi_examples(alg, heis3_id):
    for a in (alg("sl2"), heis3_id, alg("filippov4")):
        x = extend(a)
        U = graded_complement(a)
        d, n = a.dim, a.arity
        zero = phi(x, WitnessedMap(Endo.zero(d, ()), (Endo.zero(d, ()),)), U)
        assert zero.matrix.is_zero()
        ident = Endo.identity(d, ())
        p = phi(x, WitnessedMap(ident, (ident.scale(n),)), U)
        # a t + u t^n + b t^n -> a t + n b t^n
        P = projection_along(a, derived_subspace(a), U)
        for i in range(d):
            assert p.matrix(x.alg.unit(i)) == x.alg.unit(i)
            img = p.matrix(x.alg.unit(d + i))
            assert img[d:] == tuple(n * c for c in P(a.unit(i)))


def test_phi_kills_complement(alg):
    a = alg("heis3")
    x = extend(a)
    U = graded_complement(a)
    for w in SpaceAtlas(a).witnessed("qder", 0):
        assert not any(phi(x, w, U).matrix(x.alg.unit(3)))  # e1 t^n


def test_phi_rejects_non_quasiderivation(alg):
    a = alg("sl2")
    x = extend(a)
    f = Endo(((1, 0, 0), (0, 0, 0), (0, 0, 0)), ())
    with pytest.raises(AlgebraError):
        phi(x, WitnessedMap(f, (f,)), graded_complement(a))


def test_phi_linear(alg):
    a = alg("heis3")
    x = extend(a)
    U = graded_complement(a)
    w1, w2 = SpaceAtlas(a).witnessed("qder", 0)[:2]
    comb = WitnessedMap(w1.D.scale(3) + w2.D, (w1.witnesses[0].scale(3) + w2.witnesses[0],))
    lhs = phi(x, comb, U).matrix
    rhs = phi(x, w1, U).matrix.scale(3) + phi(x, w2, U).matrix
    assert lhs.matrix == rhs.matrix


def test_phi_brackets_land_in_der(alg):
    # observed empirically: [phi D1, phi D2] is again a derivation
    a = alg("sl2")
    x = extend(a)
    U = graded_complement(a)
    ws = SpaceAtlas(a).witnessed("qder", 0)
    ps = [phi(x, w, U).matrix for w in ws[:4]]
    for f in ps:
        for g in ps:
            h = color_commutator(x.alg.bicharacter, f, g)
            assert check_membership(x.alg, SpaceQuery("der"), h)


def test_verify_embedding(entries):
    for e in entries.values():
        rep = verify_embedding(e.algebra, kmax=1)
        assert rep.ok, e.name
        split = rep.checks["3.5"]
        if e.ann_zero:
            assert split.status == "pass" and split.instances > 0
            for row in rep.dims:
                assert row["der"] == row["phi_rank"] + row["zder"]
                assert row["intersection"] == 0
        else:
            assert split.status == "skipped"
        for row in rep.dims:
            assert row["phi_rank"] == row["qder"]


def test_sl2_split_dims(alg):
    rep = verify_embedding(alg("sl2"), kmax=0)
    assert rep.dims == [{"k": 0, "degree": [], "qder": 9, "phi_rank": 9, "der": 18, "zder": 9,
                         "intersection": 0}]


def test_extension_dims_against_oracle(alg):
    from oracle import space_dim
    x = extend(alg("hom-sl2")).alg
    assert (space_dim(x, "der"), space_dim(x, "zder")) == (10, 5)
    rep = verify_embedding(alg("hom-sl2"), kmax=0)
    assert (rep.dims[0]["der"], rep.dims[0]["zder"]) == (10, 5)
