"""Command-line interface. Every command prints one JSON report on stdout.

Exit codes: 0 when every check passes, 1 when a check fails or the algebra
is invalid, 2 on usage errors and unreadable files.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus
from .core import AlgebraError, validate_algebra
from .extension import extend, graded_complement, verify_embedding
from .fileio import (TOOL_VERSION, FileFormatError, algebra_to_dict, degree_key, dumps,
                     input_hash, loads_algebra, matrix_json, save_algebra, subspace_json)
from .identity import IdentityError, builtin as builtin_identity, color_hom, parse_identity
from .identity import check_identity
from .lemmas import LEMMAS, verify_lemmas
from .membership import check_membership
from .solver import KINDS, SpaceAtlas, SpaceQuery

EMBEDDING = ("3.4", "3.5")


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def _check_json(c) -> dict:
    return {"id": c.id, "description": c.description, "status": c.status,
            "instances": c.instances, "witness": _jsonable(c.witness)}


def _read_input(path: str):
    """Bytes of an algebra file. ``corpus/NAME.json`` falls back to the shipped corpus."""
    p = Path(path)
    if p.is_file():
        data = p.read_bytes()
    else:
        name = p.stem if p.suffix == ".json" else p.name
        if name in corpus.NAMES and (len(p.parts) == 1 or p.parent.name == "corpus"):
            data = corpus.corpus_path(name).read_bytes()
        else:
            raise UsageError(f"{path}: no such file")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise UsageError(f"{path}: not UTF-8 ({e.reason})")
    try:
        return loads_algebra(text), data
    except FileFormatError as e:
        raise UsageError(f"{path}: {e}")


def _parse_degree(s: str, a):
    s = s.strip()
    if a.group.rank == 0:
        if s not in ("", "0"):
            raise UsageError("the grading group is trivial; the only degree is 0")
        return ()
    try:
        parts = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise UsageError(f"cannot read degree {s!r}; expected r1,r2,...")
    if len(parts) != a.group.rank:
        raise UsageError(f"degree needs {a.group.rank} components, got {len(parts)}")
    return a.group.element(parts)


def _report(data: bytes, query: dict, result: dict, checks: list) -> dict:
    return {"tool_version": TOOL_VERSION, "input_hash": input_hash(data),
            "query": query, "result": _jsonable(result), "checks": checks}


def _space_json(basis, with_witnesses=True) -> dict:
    out = {"dim": basis.dim, "basis": [matrix_json(w.D.matrix) for w in basis.vectors]}
    if with_witnesses and any(w.witnesses for w in basis.vectors):
        out["witnesses"] = [[matrix_json(m.matrix) for m in w.witnesses] for w in basis.vectors]
    return out


# -- commands --------------------------------------------------------------

def cmd_validate(args):
    a, data = _read_input(args.file)
    rep = validate_algebra(a)
    checks = []
    for cid, kinds in (("bicharacter", ("values", "symmetry", "well-defined")),
                       ("grading", ("grading",)), ("alpha-even", ("alpha-even",)),
                       ("multiplicative", ("multiplicative",))):
        bad = [v for v in rep.violations if v.kind in kinds]
        checks.append({"id": cid, "status": "fail" if bad else "pass",
                       "witness": _jsonable({"message": bad[0].message, "at": bad[0].witness})
                       if bad else None})
    result = {"name": a.name, "dim": a.dim, "arity": a.arity,
              "cyclic_orders": list(a.group.cyclic_orders), "valid": rep.ok,
              "violations": len(rep.violations)}
    return _report(data, {"command": "validate"}, result, checks)


def cmd_solve(args):
    a, data = _read_input(args.file)
    commuting = not args.no_commute_alpha
    degrees = a.group.elements() if args.degree is None else [_parse_degree(args.degree, a)]
    atlas = SpaceAtlas(a, commuting)
    dims, bases, checks = {}, {}, []
    for g in degrees:
        b = atlas.get(args.space, args.k, g)
        key = degree_key(g)
        dims[key] = b.dim
        bases[key] = _space_json(b)
        q = SpaceQuery(args.space, args.k, g, commuting)
        bad = [i for i, w in enumerate(b.vectors) if not check_membership(a, q, w)]
        checks.append({"id": f"membership[{key}]", "status": "fail" if bad else "pass",
                       "witness": {"failing_basis_indices": bad} if bad else None})
    query = {"command": "solve", "space": args.space, "k": args.k,
             "degrees": [degree_key(g) for g in degrees], "commute_alpha": commuting}
    result = {"dims": dims, "total": sum(dims.values()), "spaces": bases}
    return _report(data, query, result, checks)


def _identities(item: str, arity: int):
    if item.startswith("@"):
        try:
            lines = Path(item[1:]).read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise UsageError(f"{item[1:]}: {e.strerror}")
        out = []
        for no, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(color_hom(parse_identity(line), f"{item[1:]}:{no}"))
            except IdentityError as e:
                raise UsageError(f"{item[1:]}:{no}: {e}")
        if not out:
            raise UsageError(f"{item[1:]}: no identities")
        return out
    try:
        return builtin_identity(item, arity)
    except IdentityError as e:
        raise UsageError(str(e))


def cmd_check(args):
    a, data = _read_input(args.file)
    cids = [c for item in args.identity for c in _identities(item, a.arity)]
    results, checks = [], []
    for cid in cids:
        if cid.arity != a.arity:
            raise UsageError(f"identity {cid.name} has arity {cid.arity}, the algebra {a.arity}")
        r = check_identity(a, cid)
        results.append({"name": cid.name, "identity": cid.text(), "passed": r.passed})
        checks.append({"id": cid.name, "status": "pass" if r else "fail",
                       "witness": None if r else _jsonable(
                           {"basis_indices": r.failing_tuple, "residual": r.residual})})
    query = {"command": "check", "identities": list(args.identity)}
    return _report(data, query, {"identities": results}, checks)


def cmd_ann(args):
    a, data = _read_input(args.file)
    s = SpaceAtlas(a).ann
    return _report(data, {"command": "ann"}, {"ann": subspace_json(s)}, [])


def cmd_derived(args):
    a, data = _read_input(args.file)
    atlas = SpaceAtlas(a)
    result = {"derived": subspace_json(atlas.derived),
              "complement": subspace_json(graded_complement(a, atlas.derived))}
    return _report(data, {"command": "derived"}, result, [])


def cmd_extend(args):
    a, data = _read_input(args.file)
    x = extend(a)
    rep = validate_algebra(x.alg)
    checks = [{"id": "valid", "status": "pass" if rep.ok else "fail",
               "witness": None if rep.ok else {"message": rep.violations[0].message}}]
    if args.output is None:
        return algebra_to_dict(x.alg), (0 if rep.ok else 1)
    save_algebra(x.alg, args.output)
    result = {"output": args.output, "dim": x.alg.dim,
              "notes": ["t is given degree 0 in the grading group"]}
    return _report(data, {"command": "extend"}, result, checks)


def _lemma_list(item: str) -> list:
    if item == "all":
        return list(LEMMAS) + list(EMBEDDING)
    out = [s.strip() for s in item.split(",") if s.strip()]
    known = set(LEMMAS) | set(EMBEDDING)
    for s in out:
        if s not in known:
            raise UsageError(f"unknown lemma {s!r}; known: {', '.join(sorted(known))}, all")
    return out


def _verification(a, atlas, lemmas, kmax):
    checks, summary = [], {}
    lem = [x for x in lemmas if x in LEMMAS]
    if lem:
        rep = verify_lemmas(a, kmax, tuple(lem), atlas)
        for e in rep.entries:
            summary[e.lemma] = {"status": e.status, "note": e.note}
            checks += [_check_json(c) for c in e.checks]
    emb = [x for x in lemmas if x in EMBEDDING]
    if emb:
        rep = verify_embedding(a, kmax, atlas)
        for cid, c in rep.checks.items():
            if cid.split(":")[0].split("-")[0] in emb:
                checks.append(_check_json(c))
        summary["embedding"] = {"complement": subspace_json(rep.complement), "dims": rep.dims,
                                "notes": list(rep.notes)}
    return checks, summary


def cmd_verify(args):
    a, data = _read_input(args.file)
    lemmas = _lemma_list(args.lemmas)
    checks, summary = _verification(a, SpaceAtlas(a), lemmas, args.kmax)
    query = {"command": "verify", "lemmas": lemmas, "kmax": args.kmax}
    return _report(data, query, summary, checks)


def cmd_report(args):
    a, data = _read_input(args.file)
    atlas = SpaceAtlas(a)
    spaces = {}
    for kind in KINDS:
        spaces[kind] = {str(k): {degree_key(g): _space_json(atlas.get(kind, k, g), False)
                                 for g in a.group.elements()}
                        for k in range(args.kmax + 1)}
    v = validate_algebra(a)
    checks = [{"id": "valid", "status": "pass" if v.ok else "fail",
               "witness": None if v.ok else {"message": v.violations[0].message}}]
    more, summary = _verification(a, atlas, list(LEMMAS) + list(EMBEDDING), args.kmax)
    result = {"name": a.name, "spaces": spaces, "ann": subspace_json(atlas.ann),
              "derived": subspace_json(atlas.derived), "verification": summary}
    return _report(data, {"command": "report", "kmax": args.kmax}, result, checks + more)


# -- entry point -----------------------------------------------------------

def _nonneg(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="colorhom",
                                description="Exact operator spaces of graded n-ary Hom-algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file", help="algebra file (JSON); corpus/NAME.json uses the shipped corpus")
        s.set_defaults(func=fn)
        return s

    cmd("validate", cmd_validate, "check grading, bicharacter and multiplicativity")
    s = cmd("solve", cmd_solve, "compute one operator space")
    s.add_argument("--space", required=True, choices=KINDS)
    s.add_argument("--k", type=_nonneg, default=0, help="power of alpha (default 0)")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--degree", help="homogeneous degree r1,r2,...")
    g.add_argument("--all-degrees", action="store_true", help="every degree (the default)")
    s.add_argument("--no-commute-alpha", action="store_true",
                   help="drop the requirement that the maps commute with alpha")
    s = cmd("check", cmd_check, "check polynomial identities")
    s.add_argument("--identity", action="append", required=True,
                   help="built-in name such as hom_jacobi(2), or @file with one identity per line")
    cmd("ann", cmd_ann, "annihilator")
    cmd("derived", cmd_derived, "derived subspace and its graded complement")
    s = cmd("extend", cmd_extend, "build the enlarged algebra T t + T t^n")
    s.add_argument("-o", "--output", help="write the algebra here; otherwise print it")
    s = cmd("verify", cmd_verify, "instance-check the lemmas and the embedding")
    s.add_argument("--lemmas", default="all", help="all, or a list such as 2.1,2.6,3.4")
    s.add_argument("--kmax", type=_nonneg, default=2)
    s = cmd("report", cmd_report, "all spaces, all lemmas, the embedding")
    s.add_argument("--kmax", type=_nonneg, default=2)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        out = args.func(args)
    except UsageError as e:
        print(f"colorhom: error: {e}", file=sys.stderr)
        return 2
    except AlgebraError as e:
        print(f"colorhom: error: {e}", file=sys.stderr)
        return 2
    if isinstance(out, tuple):  # extend without -o prints the algebra itself
        doc, code = out
        sys.stdout.write(dumps(doc))
        return code
    sys.stdout.write(dumps(out))
    return 1 if any(c["status"] == "fail" for c in out["checks"]) else 0


if __name__ == "__main__":
    sys.exit(main())
