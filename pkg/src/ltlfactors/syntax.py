"""LTL abstract syntax: parsing, printing, positive normal form, ordering.

Formulas are immutable dataclass trees.  ``F`` and ``G`` are kept as their
own constructors instead of being desugared to ``tt U _`` / ``ff R _``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Iterator


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return show(self)

    def __lt__(self, other: Formula) -> bool:
        return sort_key(self) < sort_key(other)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Tt(Formula):
    def __repr__(self):
        return "TT"


@dataclass(frozen=True, repr=False)
class Ff(Formula):
    def __repr__(self):
        return "FF"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula


@dataclass(frozen=True)
class Eventually(Formula):
    arg: Formula


@dataclass(frozen=True)
class Always(Formula):
    arg: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Release(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


UNARY = (Not, Next, Eventually, Always)
BINARY = (Until, Release, And, Or)


def _memo_hash(cls):
    # formulas are deep trees used as dict keys everywhere
    structural = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = self.__dict__["_hash"] = structural(self)
            return h

    cls.__hash__ = __hash__


for _cls in (Atom, Tt, Ff) + UNARY + BINARY:
    _memo_hash(_cls)

TT = Tt()
FF = Ff()

# fixed constructor rank used by the total order
_RANK = {Ff: 0, Tt: 1, Atom: 2, Not: 3, Next: 4, Eventually: 5, Always: 6,
         Until: 7, Release: 8, And: 9, Or: 10}


@lru_cache(maxsize=None)
def sort_key(f: Formula) -> tuple:
    """Key realising the total formula order: constructor rank, then children."""
    rank = _RANK[type(f)]
    if isinstance(f, Atom):
        return (rank, f.name)
    if isinstance(f, UNARY):
        return (rank, sort_key(f.arg))
    if isinstance(f, BINARY):
        return (rank, sort_key(f.left), sort_key(f.right))
    return (rank,)


def compare(a: Formula, b: Formula) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = sort_key(a), sort_key(b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# printing

_OR, _AND, _BIN, _UN, _ATOM = range(5)
_SYMBOL = {Or: "|", And: "&", Until: "U", Release: "R",
           Not: "!", Next: "X", Eventually: "F", Always: "G"}


def _prec(f: Formula) -> int:
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    if isinstance(f, (Until, Release)):
        return _BIN
    if isinstance(f, UNARY):
        return _UN
    return _ATOM


def show(f: Formula, ctx: int = _OR) -> str:
    """Render with the fewest parentheses that still parse back to ``f``."""
    match f:
        case Atom(name):
            s = name
        case Tt():
            s = "tt"
        case Ff():
            s = "ff"
        case Not(arg):
            s = "!" + show(arg, _UN)
        case Next(arg) | Eventually(arg) | Always(arg):
            s = _SYMBOL[type(f)] + " " + show(arg, _UN)
        case Or(l, r):
            s = f"{show(l, _OR)} | {show(r, _AND)}"
        case And(l, r):
            s = f"{show(l, _AND)} & {show(r, _BIN)}"
        case Until(l, r) | Release(l, r):
            s = f"{show(l, _UN)} {_SYMBOL[type(f)]} {show(r, _BIN)}"
        case _:
            raise TypeError(f"not a formula: {f!r}")
    return f"({s})" if _prec(f) < ctx else s


# ---------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<kw>tt|ff)(?![a-zA-Z0-9_])
  | (?P<ident>[a-z][a-zA-Z0-9_]*)
  | (?P<op>[!&|()XFGUR])
""", re.VERBOSE)

_PREFIX_OPS = {"!": Not, "X": Next, "F": Eventually, "G": Always}
_ATOM_START = {"tt", "ff", "identifier", "("}


def _tokenize(text: str) -> Iterator[tuple[str, str, int, int]]:
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        value = m.group()
        if kind == "ws":
            for i, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            tok = "identifier" if kind == "ident" else value
            yield tok, value, line, pos - line_start + 1
        pos = m.end()
    yield "end of input", "", line, pos - line_start + 1


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, expected):
        kind, value, line, col = self.tok
        found = repr(value) if value else kind
        raise ParseError(f"unexpected {found}", line, col, expected)

    def formula(self):
        f = self.disj()
        if self.tok[0] != "end of input":
            self.fail({"&", "|", "U", "R", "end of input"})
        return f

    def disj(self):
        f = self.conj()
        while self.tok[0] == "|":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.binary()
        while self.tok[0] == "&":
            self.i += 1
            f = And(f, self.binary())
        return f

    def binary(self):
        f = self.unary()
        kind = self.tok[0]
        if kind in ("U", "R"):
            self.i += 1
            cls = Until if kind == "U" else Release
            return cls(f, self.binary())
        return f

    def unary(self):
        kind = self.tok[0]
        if kind in _PREFIX_OPS:
            self.i += 1
            return _PREFIX_OPS[kind](self.unary())
        return self.atomic()

    def atomic(self):
        kind, value, _, _ = self.tok
        if kind == "tt":
            self.i += 1
            return TT
        if kind == "ff":
            self.i += 1
            return FF
        if kind == "identifier":
            self.i += 1
            return Atom(value)
        if kind == "(":
            self.i += 1
            f = self.disj()
            if self.tok[0] != ")":
                self.fail({")", "&", "|", "U", "R"})
            self.i += 1
            return f
        self.fail(_ATOM_START | set(_PREFIX_OPS))


def parse(text: str) -> Formula:
    """Parse concrete syntax; raises :class:`ParseError` on malformed input."""
    return _Parser(text).formula()


# ---------------------------------------------------------------------------
# normal forms and structural queries

def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.arg, Atom))


def is_pnf(f: Formula) -> bool:
    match f:
        case Not(arg):
            return isinstance(arg, Atom)
        case Next(arg) | Eventually(arg) | Always(arg):
            return is_pnf(arg)
        case And(l, r) | Or(l, r) | Until(l, r) | Release(l, r):
            return is_pnf(l) and is_pnf(r)
    return True


def is_temporal(f: Formula) -> bool:
    """A PNF formula whose top constructor is neither a conjunction nor a disjunction."""
    return not isinstance(f, (And, Or))


def to_pnf(f: Formula) -> Formula:
    """Push negations down to the atoms (linear in the size of ``f``)."""
    match f:
        case Not(arg):
            return _negate(arg)
        case Next(arg) | Eventually(arg) | Always(arg):
            return type(f)(to_pnf(arg))
        case And(l, r) | Or(l, r) | Until(l, r) | Release(l, r):
            return type(f)(to_pnf(l), to_pnf(r))
    return f


_DUAL = {And: Or, Or: And, Until: Release, Release: Until,
         Eventually: Always, Always: Eventually, Next: Next}


def _negate(f: Formula) -> Formula:
    match f:
        case Atom():
            return Not(f)
        case Tt():
            return FF
        case Ff():
            return TT
        case Not(arg):
            return to_pnf(arg)
        case Next(arg) | Eventually(arg) | Always(arg):
            return _DUAL[type(f)](_negate(arg))
        case And(l, r) | Or(l, r) | Until(l, r) | Release(l, r):
            return _DUAL[type(f)](_negate(l), _negate(r))
    raise TypeError(f"not a formula: {f!r}")


def size(f: Formula) -> int:
    """Literals plus temporal and Boolean operators; a negated atom counts once."""
    if isinstance(f, (Atom, Tt, Ff)) or is_literal(f):
        return 1
    if isinstance(f, UNARY):
        return 1 + size(f.arg)
    return 1 + size(f.left) + size(f.right)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, UNARY):
        return (f.arg,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


def subformulae(f: Formula) -> frozenset[Formula]:
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g not in seen:
            seen.add(g)
            stack.extend(children(g))
    return frozenset(seen)


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulae(f) if isinstance(g, Atom))


def conjuncts(f: Formula) -> list[Formula]:
    """Flatten top-level conjunctions."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def big_and(fs: Iterable[Formula]) -> Formula:
    fs = list(fs)
    return reduce(And, fs) if fs else TT


def big_or(fs: Iterable[Formula]) -> Formula:
    fs = list(fs)
    return reduce(Or, fs) if fs else FF


# ---------------------------------------------------------------------------
# formal conjunctions

@dataclass(frozen=True)
class Conj:
    """Normalised conjunction of temporal formulas; the empty one is the top element.

    ``tt`` is the unit and never stored.
    """
    elems: tuple[Formula, ...] = ()

    @classmethod
    def of(cls, formulas: Iterable[Formula]) -> Conj:
        return cls(tuple(sorted({f for f in formulas if f != TT}, key=sort_key)))

    @property
    def is_top(self) -> bool:
        return not self.elems

    def __and__(self, other: Conj) -> Conj:
        return conj(self, other)

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return len(self.elems)

    def __lt__(self, other: Conj) -> bool:
        return conj_key(self) < conj_key(other)

    def formula(self) -> Formula:
        return big_and(self.elems)

    def __str__(self) -> str:
        return show(self.formula())


TOP = Conj()


def conj(a: Conj, b: Conj) -> Conj:
    if a.is_top:
        return b
    if b.is_top:
        return a
    return Conj.of(a.elems + b.elems)


def conj_key(c: Conj) -> tuple:
    return tuple(sort_key(e) for e in c.elems)


def sorted_conjs(cs: Iterable[Conj]) -> list[Conj]:
    return sorted(cs, key=conj_key)
