import dataclasses
from fractions import Fraction

import pytest

from colorhom import corpus
from colorhom.core import Endo


@pytest.fixture(scope="session")
def entries():
    return {e.name: e for e in corpus.entries()}


@pytest.fixture(scope="session")
def alg(entries):
    return lambda name: entries[name].algebra


@pytest.fixture(scope="session")
def heis3_id(entries):
    """heis3 with alpha replaced by the identity."""
    a = entries["heis3"].algebra
    return dataclasses.replace(a, name="heis3-id", alpha=Endo.identity(a.dim))


def F(*xs):
    return tuple(Fraction(x) for x in xs)
