from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from colorhom.core import (Algebra, AlgebraError, Bicharacter, Endo, GradingGroup, bracket,
                           color_commutator, endo_is_homogeneous, hom_associator,
                           is_surjective, jordan_product, validate_algebra,
                           validate_bicharacter)

Z2xZ2 = GradingGroup((2, 2))
# a genuine color bicharacter on Z2 x Z2 (not of super type)
COLOR = Bicharacter(Z2xZ2, ((1, -1), (-1, 1)))


def elements_of(group):
    return st.tuples(*(st.integers(0, m - 1) for m in group.cyclic_orders))


@given(elements_of(Z2xZ2), elements_of(Z2xZ2), elements_of(Z2xZ2))
def test_bicharacter_axioms(g, h, k):
    e = COLOR
    assert e(g, h) * e(h, g) == 1
    assert e(Z2xZ2.add(g, h), k) == e(g, k) * e(h, k)
    assert e(g, Z2xZ2.add(h, k)) == e(g, h) * e(g, k)


def test_validate_bicharacter():
    assert validate_bicharacter(COLOR).ok
    # -1 on a generator of odd order is not well defined
    bad = Bicharacter(GradingGroup((3,)), ((-1,),))
    assert [v.kind for v in validate_bicharacter(bad).violations] == ["well-defined"]
    asym = Bicharacter(Z2xZ2, ((1, -1), (1, 1)))
    assert "symmetry" in {v.kind for v in validate_bicharacter(asym).violations}
    assert "values" in {v.kind for v in validate_bicharacter(Bicharacter(GradingGroup((2,)), ((3,),))).violations}


def test_group():
    g = GradingGroup((2, 3))
    assert g.order == 6 and len(g.elements()) == 6
    assert g.add((1, 2), (1, 2)) == (0, 1)
    assert g.neg((1, 1)) == (1, 2)
    assert g.element((5, -1)) == (1, 2)
    with pytest.raises(AlgebraError):
        g.element((1,))
    assert GradingGroup().elements() == [()]


vec3 = st.tuples(*(st.fractions(min_value=-4, max_value=4, max_denominator=4) for _ in range(3)))


@given(vec3, vec3, vec3, st.integers(-3, 3))
@settings(max_examples=50, deadline=None)
def test_bracket_multilinear(alg, x, y, z, c):
    a = alg("sl2")
    lhs = bracket(a, tuple(c * p + q for p, q in zip(x, z)), y)
    rhs = tuple(c * p + q for p, q in zip(bracket(a, x, y), bracket(a, z, y)))
    assert lhs == rhs


def test_sl2_brackets(alg):
    a = alg("sl2")
    e, f, h = (a.unit(i) for i in range(3))
    assert bracket(a, e, f) == h
    assert bracket(a, h, e) == tuple(2 * x for x in e)
    assert bracket(a, f, e) == tuple(-x for x in h)
    with pytest.raises(AlgebraError):
        bracket(a, e)


def test_hom_associator_of_trivial(alg):
    a = alg("trivial2")
    assert not any(hom_associator(a, a.unit(0), a.unit(1), a.unit(0)))
    with pytest.raises(AlgebraError):
        hom_associator(alg("filippov4"), *(alg("filippov4").unit(0),) * 3)


mats = st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2)


@given(mats, mats, st.integers(0, 1), st.integers(0, 1))
def test_color_products(m1, m2, d1, d2):
    b = Bicharacter(GradingGroup((2,)), ((-1,),))
    f, g = Endo(m1, (d1,)), Endo(m2, (d2,))
    s = b((d1,), (d2,))
    assert color_commutator(b, f, g) == color_commutator(b, g, f).scale(-s)
    assert jordan_product(b, f, g) == jordan_product(b, g, f).scale(s)
    assert color_commutator(b, f, g).degree == ((d1 + d2) % 2,)


def test_endo_arithmetic():
    f = Endo(((1, 2), (3, 4)), ())
    assert (f + f).matrix == f.scale(2).matrix
    assert (f - f).is_zero()
    assert (f @ Endo.identity(2)).matrix == f.matrix
    assert f.power(2).matrix == ((7, 10), (15, 22))
    assert Endo.from_flat(f.flat(), 2).matrix == f.matrix
    assert f((1, 0)) == (1, 3)  # column 0 is the image of e_1
    assert is_surjective(f) and not is_surjective(Endo(((1, 2), (2, 4))))
    with pytest.raises(AlgebraError):
        Endo(((1, 2),))


def test_homogeneity(alg):
    a = alg("super-osc")
    odd = Endo(((0, 1), (1, 0)), (1,))
    assert endo_is_homogeneous(a, odd)
    assert not endo_is_homogeneous(a, odd, (0,))
    assert endo_is_homogeneous(a, Endo.identity(2), (0,))


def _alg(**kw):
    base = dict(name="t", arity=2, dim=2, group=GradingGroup((2,)), degrees=((0,), (1,)),
                bicharacter=Bicharacter(GradingGroup((2,)), ((-1,),)),
                structure={(1, 1): {0: 1}}, alpha=Endo.identity(2))
    base.update(kw)
    return Algebra(**base)


def test_validate_algebra_catches_problems():
    assert validate_algebra(_alg()).ok
    bad_grading = _alg(structure={(0, 1): {0: 1}})
    assert {v.kind for v in validate_algebra(bad_grading).violations} == {"grading"}
    bad_alpha = _alg(alpha=Endo(((1, 1), (0, 1))))
    kinds = {v.kind for v in validate_algebra(bad_alpha).violations}
    assert "alpha-even" in kinds
    not_mult = _alg(alpha=Endo(((1, 0), (0, 2))))
    assert {v.kind for v in validate_algebra(not_mult).violations} == {"multiplicative"}


def test_algebra_constructor_errors():
    with pytest.raises(AlgebraError):
        _alg(arity=1)
    with pytest.raises(AlgebraError):
        _alg(structure={(0, 5): {0: 1}})
    with pytest.raises(AlgebraError):
        _alg(degrees=((0,),))
    with pytest.raises(AlgebraError):
        _alg(alpha=Endo.identity(3))
    # zero entries are cleaned away
    assert _alg(structure={(0, 0): {0: 0}}).structure == {}
    assert _alg().basis_names == ("e1", "e2")


def test_fraction_entries_exact():
    a = _alg(structure={(1, 1): {0: Fraction(1, 3)}})
    v = bracket(a, a.unit(1), (0, Fraction(3)))
    assert v == (Fraction(1), Fraction(0))
