"""Exact operator spaces of graded n-ary Hom-algebras.

Algebras are given by structure constants over the rationals, graded by a
finite abelian group with a {+1, -1}-valued bicharacter, and twisted by a
linear map alpha. The package computes derivation-like operator spaces as
exact nullspaces, checks polynomial identities, and instance-verifies the
structural results relating these spaces.
"""

from .core import (Algebra, AlgebraError, Bicharacter, Endo, GradingGroup, bracket,
                   color_commutator, jordan_product, validate_algebra)
from .extension import (EmbeddingReport, ExtendedAlgebra, PhiMap, extend, graded_complement,
                        phi, verify_embedding)
from .fileio import FileFormatError, load_algebra, loads_algebra, save_algebra
from .identity import (ColorHomIdentity, Identity, check_identity, colorize, homize,
                       parse_identity)
from .lemmas import LEMMAS, verify_lemmas
from .linalg import Subspace
from .membership import check_membership, find_witnesses
from .solver import (KINDS, SpaceAtlas, SpaceBasis, SpaceQuery, WitnessedMap, annihilator,
                     derived_subspace, solve_space)

__version__ = "0.1.0"

__all__ = [
    "Algebra", "AlgebraError", "Bicharacter", "ColorHomIdentity", "EmbeddingReport", "Endo",
    "ExtendedAlgebra", "FileFormatError", "GradingGroup", "Identity", "KINDS", "LEMMAS",
    "PhiMap", "SpaceAtlas", "SpaceBasis", "SpaceQuery", "Subspace", "WitnessedMap",
    "annihilator", "bracket", "check_identity", "check_membership", "color_commutator",
    "colorize", "derived_subspace", "extend", "find_witnesses", "graded_complement",
    "homize", "jordan_product", "load_algebra", "loads_algebra", "parse_identity", "phi",
    "save_algebra", "solve_space", "validate_algebra", "verify_embedding", "verify_lemmas",
]
