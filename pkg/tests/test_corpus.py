import json

import pytest

from colorhom import corpus
from colorhom.core import validate_algebra
from colorhom.fileio import algebra_to_dict, loads_algebra
from colorhom.identity import builtin, check_identity
from colorhom.solver import annihilator


def test_names():
    assert corpus.NAMES == ("trivial2", "heis3", "sl2", "hom-sl2", "super-osc", "filippov4")
    with pytest.raises(KeyError):
        corpus.builtin("nope")


@pytest.mark.parametrize("name", corpus.NAMES)
def test_entry(name):
    e = corpus.builtin(name)
    assert validate_algebra(e.algebra).ok
    for item in e.satisfies:
        for cid in builtin(item, e.algebra.arity):
            assert check_identity(e.algebra, cid), cid.name
    assert annihilator(e.algebra).is_zero() == e.ann_zero


@pytest.mark.parametrize("name", corpus.NAMES)
def test_round_trip(name):
    text = corpus.corpus_path(name).read_text(encoding="utf-8")
    a = loads_algebra(text)
    again = loads_algebra(json.dumps(algebra_to_dict(a)))
    assert again.same_structure(a)
    assert algebra_to_dict(again) == algebra_to_dict(a)


def test_catalog_details():
    sl2 = corpus.builtin("sl2").algebra
    assert sl2.structure[(0, 1)] == {2: 1}
    assert sl2.structure[(2, 0)] == {0: 2}
    assert sl2.structure[(2, 1)] == {1: -2}
    heis = corpus.builtin("heis3").algebra
    assert heis.alpha.matrix == ((2, 0, 0), (0, 3, 0), (0, 0, 6))
    hom = corpus.builtin("hom-sl2").algebra
    assert hom.alpha.matrix == ((0, 1, 0), (1, 0, 0), (0, 0, -1))
    # Yau twist: new bracket = alpha o old bracket
    for args, out in sl2.structure.items():
        img = hom.alpha(tuple(out.get(j, 0) for j in range(3)))
        assert hom.structure.get(args, {}) == {j: c for j, c in enumerate(img) if c}
    osc = corpus.builtin("super-osc").algebra
    assert osc.structure == {(1, 1): {0: 1}} and osc.degrees == ((0,), (1,))
    f4 = corpus.builtin("filippov4").algebra
    # [e_i, e_j, e_k] = sgn(sigma) e_l, sigma sorting (i, j, k, l)
    assert f4.structure[(1, 2, 3)] == {0: -1}  # (2,3,4,1) is an odd permutation
    assert f4.structure[(0, 1, 2)] == {3: 1}
    assert f4.structure[(0, 2, 3)] == {1: 1}
    assert f4.structure[(1, 0, 2)] == {3: -1}
