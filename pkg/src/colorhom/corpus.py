"""Built-in example algebras, shipped as JSON files in ``colorhom/corpus``."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .core import Algebra
from .fileio import loads_algebra


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    algebra: Algebra
    satisfies: tuple
    ann_zero: bool
    alpha_kind: str  # identity | diagonal | automorphism-twist


_CATALOG = {
    "trivial2": (("skew(2)", "hom_jacobi(2)", "hom_associative(2)", "hom_lie", "hom_jordan"),
                 False, "identity"),
    "heis3": (("skew(2)", "hom_jacobi(2)", "hom_lie"), False, "diagonal"),
    "sl2": (("skew(2)", "hom_jacobi(2)", "hom_lie"), True, "identity"),
    "hom-sl2": (("skew(2)", "hom_jacobi(2)", "hom_lie"), True, "automorphism-twist"),
    "super-osc": (("skew(2)", "hom_jacobi(2)", "hom_lie"), False, "identity"),
    "filippov4": (("skew(3)", "hom_jacobi(3)"), True, "identity"),
}

NAMES = tuple(_CATALOG)


def corpus_path(name: str):
    """Traversable for the JSON file of a corpus entry."""
    if name not in _CATALOG:
        raise KeyError(f"unknown corpus algebra {name!r}; known: {', '.join(NAMES)}")
    return resources.files("colorhom") / "corpus" / f"{name}.json"


def builtin(name: str) -> CorpusEntry:
    text = corpus_path(name).read_text(encoding="utf-8")
    satisfies, ann_zero, kind = _CATALOG[name]
    return CorpusEntry(name, loads_algebra(text), satisfies, ann_zero, kind)


def entries() -> list:
    return [builtin(n) for n in NAMES]
