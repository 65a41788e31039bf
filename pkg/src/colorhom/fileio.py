"""JSON algebra files and JSON reports.

Rationals travel as strings (``"3"``, ``"-2/5"``), never as floats.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path

from .core import Algebra, AlgebraError, Bicharacter, Endo, GradingGroup
from .linalg import Subspace

TOOL_VERSION = "colorhom-report/1"

_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


class FileFormatError(ValueError):
    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def parse_rational(s, where: str = "") -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise FileFormatError(f"expected a rational string, got {s!r}", where)
    if isinstance(s, int):
        return Fraction(s)
    m = _RATIONAL.fullmatch(s)
    if not m:
        raise FileFormatError(f"cannot read {s!r} as a rational", where)
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise FileFormatError(f"zero denominator in {s!r}", where)
    return Fraction(int(m.group(1)), den)


def rational_str(x) -> str:
    return str(Fraction(x))


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise FileFormatError(f"missing field {key!r}", where)
    return obj[key]


def algebra_from_dict(data: dict) -> Algebra:
    if not isinstance(data, dict):
        raise FileFormatError("top level must be an object")
    name = str(data.get("name", "unnamed"))
    arity = _need(data, "arity", "$")
    if not isinstance(arity, int) or arity < 2:
        raise FileFormatError("arity must be an integer >= 2", "$.arity")
    orders = _need(_need(data, "group", "$"), "cyclic_orders", "$.group")
    if not isinstance(orders, list) or not all(isinstance(m, int) and m >= 1 for m in orders):
        raise FileFormatError("cyclic_orders must be a list of integers >= 1",
                              "$.group.cyclic_orders")
    group = GradingGroup(tuple(orders))
    degrees = _need(data, "degrees", "$")
    if not isinstance(degrees, list) or not degrees:
        raise FileFormatError("degrees must be a nonempty list", "$.degrees")
    for i, g in enumerate(degrees):
        if not isinstance(g, list) or len(g) != group.rank or not all(isinstance(x, int) for x in g):
            raise FileFormatError(f"degree must be a list of {group.rank} integers",
                                  f"$.degrees[{i}]")
    d = len(degrees)
    bich = data.get("bicharacter", [])
    if not isinstance(bich, list) or len(bich) != group.rank:
        raise FileFormatError(f"bicharacter must be a {group.rank}x{group.rank} matrix",
                              "$.bicharacter")
    vals = []
    for i, row in enumerate(bich):
        if not isinstance(row, list) or len(row) != group.rank:
            raise FileFormatError("bicharacter row has the wrong length", f"$.bicharacter[{i}]")
        vals.append(tuple(int(parse_rational(v, f"$.bicharacter[{i}][{j}]"))
                          for j, v in enumerate(row)))
    alpha_rows = data.get("alpha")
    if alpha_rows is None:
        alpha = Endo.identity(d)
    else:
        if not isinstance(alpha_rows, list) or len(alpha_rows) != d:
            raise FileFormatError(f"alpha must be a {d}x{d} matrix", "$.alpha")
        for i, row in enumerate(alpha_rows):
            if not isinstance(row, list) or len(row) != d:
                raise FileFormatError(f"alpha row must have {d} entries", f"$.alpha[{i}]")
        alpha = Endo(tuple(tuple(parse_rational(v, f"$.alpha[{i}][{j}]")
                                 for j, v in enumerate(row)) for i, row in enumerate(alpha_rows)))
    structure = {}
    for b, entry in enumerate(data.get("brackets", [])):
        where = f"$.brackets[{b}]"
        args = _need(entry, "args", where)
        if (not isinstance(args, list) or len(args) != arity
                or not all(isinstance(x, int) and 0 <= x < d for x in args)):
            raise FileFormatError(f"args must be {arity} basis indices in [0, {d})", where + ".args")
        key = tuple(args)
        if key in structure:
            raise FileFormatError(f"duplicate bracket entry for args {args}", where)
        out = {}
        for v, item in enumerate(_need(entry, "value", where)):
            w = f"{where}.value[{v}]"
            idx = _need(item, "idx", w)
            if not isinstance(idx, int) or not 0 <= idx < d:
                raise FileFormatError(f"idx must be a basis index in [0, {d})", w)
            if idx in out:
                raise FileFormatError(f"duplicate idx {idx}", w)
            out[idx] = parse_rational(_need(item, "c", w), w + ".c")
        structure[key] = out
    names = data.get("basis_names", ())
    try:
        return Algebra(name, arity, d, group, tuple(tuple(g) for g in degrees),
                       Bicharacter(group, tuple(vals)), structure, alpha, tuple(names))
    except AlgebraError as e:
        raise FileFormatError(str(e), "$") from e


def algebra_to_dict(a: Algebra) -> dict:
    brackets = []
    for args in sorted(a.structure):
        out = a.structure[args]
        brackets.append({"args": list(args),
                         "value": [{"idx": j, "c": rational_str(out[j])} for j in sorted(out)]})
    return {
        "name": a.name,
        "arity": a.arity,
        "group": {"cyclic_orders": list(a.group.cyclic_orders)},
        "degrees": [list(g) for g in a.degrees],
        "bicharacter": [[str(v) for v in row] for row in a.bicharacter.gen_values],
        "alpha": [[rational_str(x) for x in row] for row in a.alpha.matrix],
        "basis_names": list(a.basis_names),
        "brackets": brackets,
    }


def load_algebra(path) -> Algebra:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e.msg}", f"line {e.lineno}, column {e.colno}")
    return algebra_from_dict(data)


def loads_algebra(text: str) -> Algebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e.msg}", f"line {e.lineno}, column {e.colno}")
    return algebra_from_dict(data)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_algebra(a: Algebra, path) -> None:
    Path(path).write_text(dumps(algebra_to_dict(a)), encoding="utf-8")


# -- report helpers ------------------------------------------------------

def matrix_json(m) -> list:
    return [[rational_str(x) for x in row] for row in m]


def vector_json(v) -> list:
    return [rational_str(x) for x in v]


def subspace_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "dim": s.dim, "basis": matrix_json(s.basis)}


def degree_key(g) -> str:
    return ",".join(str(x) for x in g) if g else "0"


def input_hash(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()
