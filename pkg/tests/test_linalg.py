from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from colorhom import linalg
from colorhom.linalg import RowReducer, Subspace

small = st.integers(-4, 4)


def matrices(rows=4, cols=5):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=1, max_size=rows)


def test_to_fraction_rejects_float():
    with pytest.raises(TypeError):
        linalg.to_fraction(0.5)
    assert linalg.to_fraction("3/4") == Fraction(3, 4)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_and_rref_match_sympy(m):
    ours, piv = linalg.rref(m, 5)
    ref, ref_piv = sp.Matrix(m).rref()
    assert tuple(piv) == tuple(ref_piv)
    assert [list(r) for r in ours] == [[Fraction(int(x.p), int(x.q)) for x in ref.row(i)]
                                       for i in range(len(piv))]
    assert linalg.rank(m, 5) == sp.Matrix(m).rank()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_nullspace_is_kernel(m):
    null = linalg.nullspace(m, 5)
    assert len(null) == 5 - sp.Matrix(m).rank()
    for v in null:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


def test_sparse_dict_rows():
    red = RowReducer(3)
    assert red.add({0: 1, 2: 2})
    assert not red.add({0: 2, 2: 4})
    assert red.add((0, 1, 0))
    assert red.rank == 2


def test_solve():
    rows = [(1, 1, 0), (0, 1, 1)]
    x = linalg.solve(rows, (2, 3), 3)
    assert linalg.matvec(rows, x) == (2, 3)
    assert linalg.solve([(1, 1), (1, 1)], (1, 2), 2) is None


@given(matrices(3, 4), st.lists(small, min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_subspace_canonical(m, coeffs):
    s = Subspace.span(m, 4)
    # a reshuffled, rescaled spanning set gives the identical object
    other = [tuple(3 * x for x in row) for row in reversed(m)]
    other.append(tuple(sum(Fraction(r[i]) for r in m) for i in range(4)))
    assert Subspace.span(other, 4) == s
    v = linalg.lin_comb(coeffs[: len(m)], [tuple(map(Fraction, r)) for r in m])
    assert s.contains(v)


def test_subspace_sum_and_intersection():
    a = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    b = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    assert (a + b).dim == 3
    assert a.intersection_dim(b) == 1
    assert Subspace.zero(3).is_zero()
    assert Subspace.full(3).contains_space(a)
    assert a.first_outside([(1, 1, 0), (0, 0, 5)]) == (0, 0, 5)


def test_matpow():
    m = ((1, 1), (0, 1))
    assert linalg.matpow(m, 3) == ((1, 3), (0, 1))
    assert linalg.matpow(m, 0) == ((1, 0), (0, 1))
