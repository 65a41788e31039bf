"""Multilinear identities: parsing, colorization, Hom-ization and evaluation.

A *word* is either a variable number (``int``, 1-based as in the text
``x1``) or a tuple of ``arity`` sub-words, one per bracket slot. So
``[x1,[x2,x3]]`` is ``(1, (2, 3))``.

Signs are kept formally as multisets of ordered variable pairs ``(a, b)``
standing for ``eps(x_a, x_b)``; they are only turned into numbers when an
identity is evaluated on a concrete algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Union

from .core import Algebra, AlgebraError, bracket

Word = Union[int, tuple]


class IdentityError(ValueError):
    pass


class IdentitySyntaxError(IdentityError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# -- words -----------------------------------------------------------------

def variables(w: Word) -> list[int]:
    """Variables of a word in left-to-right reading order."""
    if isinstance(w, int):
        return [w]
    out = []
    for c in w:
        out.extend(variables(c))
    return out


def depths(w: Word, level: int = 0) -> dict[int, int]:
    """Number of bracket nodes strictly above each variable."""
    if isinstance(w, int):
        return {w: level}
    out = {}
    for c in w:
        out.update(depths(c, level + 1))
    return out


def node_count(w: Word) -> int:
    if isinstance(w, int):
        return 0
    return 1 + sum(node_count(c) for c in w)


def word_text(w: Word, exponents: Optional[dict] = None) -> str:
    if isinstance(w, int):
        p = (exponents or {}).get(w, 0)
        if p == 0:
            return f"x{w}"
        if p == 1:
            return f"a(x{w})"
        return f"a^{p}(x{w})"
    return "[" + ",".join(word_text(c, exponents) for c in w) + "]"


def _arities(w: Word) -> set:
    if isinstance(w, int):
        return set()
    out = {len(w)}
    for c in w:
        out |= _arities(c)
    return out


# -- formal signs ----------------------------------------------------------

def normalize_signs(pairs) -> tuple:
    """Cancel eps(a, b) eps(b, a) = 1 and sort; the result is canonical."""
    counts: dict = {}
    for a, b in pairs:
        if (b, a) in counts and a != b:
            counts[(b, a)] -= 1
            if not counts[(b, a)]:
                del counts[(b, a)]
        else:
            counts[(a, b)] = counts.get((a, b), 0) + 1
    out = []
    for p in sorted(counts):
        out.extend([p] * counts[p])
    return tuple(out)


def invert_signs(pairs) -> tuple:
    return tuple((b, a) for a, b in pairs)


def inversion_signs(base_order: Sequence[int], order: Sequence[int]) -> tuple:
    """eps-pairs (a, b) for every a before b in ``base_order`` with b before a in ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for i, a in enumerate(base_order):
        for b in base_order[i + 1:]:
            if pos[b] < pos[a]:
                out.append((a, b))
    return tuple(sorted(out))


def shift_signs(base_order: Sequence[int], swaps: Sequence[int]) -> tuple:
    """Apply adjacent transpositions to ``base_order`` recording eps(x_{j_i}, x_{j_{i+1}}).

    ``swaps`` lists positions i (0-based) of the swapped neighbours in turn.
    """
    cur = list(base_order)
    out = []
    for i in swaps:
        out.append((cur[i], cur[i + 1]))
        cur[i], cur[i + 1] = cur[i + 1], cur[i]
    return tuple(out)


def eval_signs(pairs, eps) -> int:
    """Numeric value of a formal sign; ``eps(a, b)`` gives eps on variables."""
    s = 1
    for a, b in pairs:
        s *= eps(a, b)
    return s


# -- identities ------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    """sum of coefficient * word; the word at ``base_term_index`` fixes the base order."""

    arity: int
    terms: tuple  # of (Fraction, Word)
    base_term_index: int = 0

    @property
    def variables(self) -> tuple:
        return tuple(sorted(variables(self.terms[0][1])))

    def text(self) -> str:
        return _terms_text((c, (), w, {}) for c, w in self.terms)


@dataclass(frozen=True)
class HomTerm:
    coeff: Fraction
    signs: tuple  # eps-pairs, normalized
    word: Word
    exponents: tuple = ()  # (variable, power) pairs with power > 0, sorted

    @property
    def exponent_map(self) -> dict:
        return dict(self.exponents)


@dataclass(frozen=True)
class ColorHomIdentity:
    arity: int
    terms: tuple  # of HomTerm
    name: str = ""

    @property
    def variables(self) -> tuple:
        return tuple(sorted(variables(self.terms[0].word)))

    @property
    def max_depth(self) -> int:
        return max(max(depths(t.word).values()) for t in self.terms)

    def text(self) -> str:
        return _terms_text((t.coeff, t.signs, t.word, t.exponent_map) for t in self.terms)


def _terms_text(items) -> str:
    parts = []
    for c, signs, w, exps in items:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        pre = "" if mag == 1 else f"{mag}*"
        eps = "".join(f"e(x{a},x{b})*" for a, b in signs)
        parts.append(f"{sign} {pre}{eps}{word_text(w, exps)}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


# -- parser ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<op>[\[\],+\-*/]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(p):
        line = max(i for i, s in enumerate(line_starts) if s <= p)
        return line + 1, p - line_starts[line] + 1

    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise IdentitySyntaxError(f"unexpected character {text[start]!r}", *where(start))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), where(start)))
        pos = m.end()
    return tokens, where(len(text))


class _Parser:
    def __init__(self, text: str):
        self.tokens, self.end = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end)

    def take(self, value=None, kind=None):
        tok = self.peek()
        if tok[0] is None:
            raise IdentitySyntaxError(f"unexpected end of input, expected {value or kind}",
                                      *tok[2])
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            raise IdentitySyntaxError(f"expected {value or kind}, found {tok[1]!r}", *tok[2])
        self.i += 1
        return tok

    def identity(self):
        terms = []
        sign = 1
        tok = self.peek()
        if tok[1] in ("+", "-"):
            self.i += 1
            sign = -1 if tok[1] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] is not None:
            tok = self.take(kind="op")
            if tok[1] not in ("+", "-"):
                raise IdentitySyntaxError(f"expected '+' or '-', found {tok[1]!r}", *tok[2])
            terms.append(self.term(-1 if tok[1] == "-" else 1))
        return terms

    def term(self, sign):
        coeff = Fraction(sign)
        start = self.peek()[2]
        if self.peek()[0] == "num":
            num = int(self.take(kind="num")[1])
            den = 1
            if self.peek()[1] == "/":
                self.take("/")
                tok = self.take(kind="num")
                den = int(tok[1])
                if den == 0:
                    raise IdentitySyntaxError("zero denominator", *tok[2])
            self.take("*")
            coeff *= Fraction(num, den)
        return coeff, self.word(), start

    def word(self):
        self.take("[")
        children = [self.elem()]
        while self.peek()[1] == ",":
            self.take(",")
            children.append(self.elem())
        self.take("]")
        return tuple(children)

    def elem(self):
        tok = self.peek()
        if tok[0] == "var":
            self.i += 1
            v = int(tok[1][1:])
            if v < 1:
                raise IdentitySyntaxError("variables are numbered from x1", *tok[2])
            return v
        if tok[1] == "[":
            return self.word()
        if tok[0] is None:
            raise IdentitySyntaxError("unexpected end of input, expected a variable or '['",
                                      *tok[2])
        raise IdentitySyntaxError(f"expected a variable or '[', found {tok[1]!r}", *tok[2])


def parse_identity(text: str) -> Identity:
    """Parse DSL text such as ``"[x1,[x2,x3]] - 2*[[x1,x2],x3]"``."""
    raw = _Parser(text).identity()
    arity = None
    varset = None
    terms = []
    for coeff, w, (line, col) in raw:
        ar = _arities(w)
        if len(ar) != 1 or (arity is not None and ar != {arity}):
            raise IdentitySyntaxError("mixed bracket arity", line, col)
        arity = ar.pop()
        if arity < 2:
            raise IdentitySyntaxError("brackets need at least two entries", line, col)
        vs = variables(w)
        if len(set(vs)) != len(vs):
            dup = sorted(v for v in set(vs) if vs.count(v) > 1)
            raise IdentitySyntaxError(f"repeated variable x{dup[0]} in a multilinear term",
                                      line, col)
        if varset is None:
            varset = set(vs)
            expected = set(range(1, len(vs) + 1))
            if varset != expected:
                missing = sorted(expected - varset)
                raise IdentitySyntaxError(
                    f"variables must be x1..x{len(vs)}; x{missing[0]} is missing", line, col)
        elif set(vs) != varset:
            raise IdentitySyntaxError("terms use different variable sets", line, col)
        terms.append((coeff, w))
    return Identity(arity, tuple(terms))


# -- colorization and Hom-ization ----------------------------------------

def colorize(ident: Identity, name: str = "") -> ColorHomIdentity:
    """Insert Koszul signs relative to the base word's reading order."""
    base = variables(ident.terms[ident.base_term_index][1])
    terms = []
    for coeff, w in ident.terms:
        terms.append(HomTerm(coeff, normalize_signs(inversion_signs(base, variables(w))), w))
    return ColorHomIdentity(ident.arity, tuple(terms), name)


def homize(cid: ColorHomIdentity) -> ColorHomIdentity:
    """Twist every variable by alpha^(max depth - its depth)."""
    top = cid.max_depth
    terms = []
    for t in cid.terms:
        exps = tuple(sorted((v, top - dv) for v, dv in depths(t.word).items() if top - dv))
        terms.append(HomTerm(t.coeff, t.signs, t.word, exps))
    return ColorHomIdentity(cid.arity, tuple(terms), cid.name)


def plain(ident: Identity, name: str = "") -> ColorHomIdentity:
    """The identity as written: no signs, no twisting."""
    return ColorHomIdentity(ident.arity, tuple(HomTerm(c, (), w) for c, w in ident.terms), name)


def color_hom(ident: Identity, name: str = "") -> ColorHomIdentity:
    return homize(colorize(ident, name))


def equivalent_up_to_unit(a: ColorHomIdentity, b: ColorHomIdentity) -> bool:
    """True when b = c * u * a termwise for one rational c and one formal sign u."""
    if a.arity != b.arity or len(a.terms) != len(b.terms):
        return False
    bt = {(t.word, t.exponents): t for t in b.terms}
    if len(bt) != len(b.terms):
        return False
    ratio = unit = None
    for t in a.terms:
        other = bt.get((t.word, t.exponents))
        if other is None:
            return False
        r = other.coeff / t.coeff
        u = normalize_signs(other.signs + invert_signs(t.signs))
        if ratio is None:
            ratio, unit = r, u
        elif r != ratio or u != unit:
            return False
    return True


# -- built-in identities --------------------------------------------------

def _br(items) -> str:
    return "[" + ",".join(items) + "]"


def _x(i) -> str:
    return f"x{i}"


def skew(n: int) -> list[Identity]:
    """[.., x_i, x_{i+1}, ..] + [.., x_{i+1}, x_i, ..] for each adjacent pair."""
    out = []
    for i in range(1, n):
        vs = list(range(1, n + 1))
        sw = vs[:]
        sw[i - 1], sw[i] = sw[i], sw[i - 1]
        out.append(parse_identity(f"{_br(map(_x, vs))} + {_br(map(_x, sw))}"))
    return out


def hom_jacobi(n: int) -> list[Identity]:
    """Filippov-style identity: x's act on the bracket of y's by the Leibniz rule."""
    xs = [_x(i) for i in range(1, n)]
    ys = [_x(i) for i in range(n, 2 * n)]
    text = _br(xs + [_br(ys)])
    for i in range(n):
        inner = _br(xs + [ys[i]])
        text += " - " + _br(ys[:i] + [inner] + ys[i + 1:])
    return [parse_identity(text)]


def hom_associative(n: int) -> list[Identity]:
    xs = [_x(i) for i in range(1, 2 * n)]
    right = _br(xs[:n - 1] + [_br(xs[n - 1:])])
    out = []
    for i in range(n - 1):
        left = _br(xs[:i] + [_br(xs[i:i + n])] + xs[i + n:])
        out.append(parse_identity(f"{left} - {right}"))
    return out


def hom_lie() -> list[Identity]:
    return skew(2) + [parse_identity("[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]")]


def hom_jordan() -> list[Identity]:
    # x = x1, y = x2, z = x3, w = x4; as(a, b, c) = [[a, b], c] - [a, [b, c]]
    jordan = ("[[[x1,x2],x4],x3] - [[x1,x2],[x4,x3]]"
              " + [[[x2,x3],x4],x1] - [[x2,x3],[x4,x1]]"
              " + [[[x3,x1],x4],x2] - [[x3,x1],[x4,x2]]")
    return [parse_identity("[x1,x2] - [x2,x1]"), parse_identity(jordan)]


_FAMILIES = {
    "skew": skew,
    "hom_jacobi": hom_jacobi,
    "hom_associative": hom_associative,
}
_FIXED = {"hom_lie": (hom_lie, 2), "hom_jordan": (hom_jordan, 2)}

BUILTIN_NAMES = ("skew", "hom_jacobi", "hom_associative", "hom_lie", "hom_jordan")


def builtin(name: str, arity: Optional[int] = None) -> list[ColorHomIdentity]:
    """Colorized, Hom-ized built-in family, e.g. ``builtin("hom_jacobi(3)")``.

    A bare family name takes its arity from ``arity``.
    """
    m = re.fullmatch(r"\s*(\w+)\s*(?:\(\s*(\d+)\s*\))?\s*", name)
    if not m:
        raise IdentityError(f"cannot read identity name {name!r}")
    base, n = m.group(1), m.group(2)
    if base in _FIXED:
        fn, fixed = _FIXED[base]
        if n is not None and int(n) != fixed:
            raise IdentityError(f"{base} is binary")
        idents = fn()
        label = base
    elif base in _FAMILIES:
        n = int(n) if n is not None else arity
        if n is None:
            raise IdentityError(f"{base} needs an arity, e.g. {base}(2)")
        if n < 2:
            raise IdentityError("arity must be at least 2")
        idents = _FAMILIES[base](n)
        label = f"{base}({n})"
    else:
        raise IdentityError(f"unknown identity {base!r}; known: {', '.join(BUILTIN_NAMES)}")
    return [color_hom(f, f"{label}#{i}") for i, f in enumerate(idents)]


# -- evaluation ------------------------------------------------------------

@dataclass
class CheckResult:
    passed: bool
    identity: str = ""
    failing_tuple: Optional[tuple] = None  # basis index per variable x1..xm
    residual: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.passed


def _alpha_powers(a: Algebra, top: int) -> list:
    """powers[p][i] = alpha^p(e_i)."""
    cols = [a.unit(i) for i in range(a.dim)]
    out = [cols]
    for _ in range(top):
        cols = [a.alpha(v) for v in cols]
        out.append(cols)
    return out


def _evaluate(a, w, assign, exps, powers):
    if isinstance(w, int):
        return powers[exps.get(w, 0)][assign[w - 1]]
    return bracket(a, *(_evaluate(a, c, assign, exps, powers) for c in w))


def evaluate(a: Algebra, cid: ColorHomIdentity, assign: Sequence[int], powers=None) -> tuple:
    """Value of the identity with x_v replaced by the basis vector e_{assign[v-1]}."""
    if powers is None:
        top = max((p for t in cid.terms for _, p in t.exponents), default=0)
        powers = _alpha_powers(a, top)
    eps = a.bicharacter
    total = [Fraction(0)] * a.dim
    for t in cid.terms:
        s = eval_signs(t.signs, lambda u, v: eps(a.degrees[assign[u - 1]],
                                                   a.degrees[assign[v - 1]]))
        val = _evaluate(a, t.word, assign, t.exponent_map, powers)
        c = t.coeff * s
        for j, x in enumerate(val):
            if x:
                total[j] += c * x
    return tuple(total)


def check_identity(a: Algebra, cid: ColorHomIdentity) -> CheckResult:
    """Evaluate on every tuple of basis vectors; stops at the first nonzero residual."""
    if cid.arity != a.arity:
        raise AlgebraError(f"identity has arity {cid.arity}, algebra {a.name} has {a.arity}")
    m = len(cid.variables)
    top = max((p for t in cid.terms for _, p in t.exponents), default=0)
    powers = _alpha_powers(a, top)
    for assign in product(range(a.dim), repeat=m):
        r = evaluate(a, cid, assign, powers)
        if any(r):
            return CheckResult(False, cid.name or cid.text(), tuple(assign), r)
    return CheckResult(True, cid.name or cid.text())


def check_all(a: Algebra, cids: Sequence[ColorHomIdentity]) -> CheckResult:
    for cid in cids:
        res = check_identity(a, cid)
        if not res:
            return res
    return CheckResult(True, ", ".join(c.name for c in cids))
