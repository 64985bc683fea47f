"""Monomials, the set-based normal form SIMP, and linear factors."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .syntax import (TOP, FF, Always, And, Atom, Conj, Eventually, Ff,
                     Formula, Next, Not, Or, Release, Tt, Until, big_and,
                     big_or, conj, conj_key, is_literal)


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    negated: bool = False

    def __invert__(self) -> Literal:
        return Literal(self.atom, not self.negated)

    def formula(self) -> Formula:
        return Not(Atom(self.atom)) if self.negated else Atom(self.atom)

    def __str__(self):
        return ("!" if self.negated else "") + self.atom

    @classmethod
    def from_formula(cls, f: Formula) -> Literal:
        if isinstance(f, Atom):
            return cls(f.name)
        if is_literal(f):
            return cls(f.arg.name, True)
        raise ValueError(f"not a literal: {f}")


class Bottom:
    """The contradictory monomial ``ff``."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __str__(self):
        return "ff"


BOTTOM = Bottom()


@dataclass(frozen=True)
class Monomial:
    """A consistent set of literals, stored sorted; the empty monomial is ``tt``."""
    lits: tuple[Literal, ...] = ()

    def __post_init__(self):
        lits = tuple(sorted(set(self.lits)))
        if any(~l in lits for l in lits):
            raise ValueError("contradictory literals; use smart_and to get BOTTOM")
        object.__setattr__(self, "lits", lits)

    def __iter__(self):
        return iter(self.lits)

    def __str__(self):
        return " & ".join(map(str, self.lits)) if self.lits else "tt"


MonomialOrBottom = Union[Monomial, Bottom]
TRUE_MONOMIAL = Monomial()


def monomial(*lits: str) -> Monomial:
    """Build from strings like ``"p"`` and ``"!q"``."""
    return Monomial(tuple(Literal(s.lstrip("!"), s.startswith("!")) for s in lits))


def monomial_key(m: Monomial) -> tuple:
    # literal monomials before tt, then literal sequences lexicographically
    return (not m.lits, m.lits)


def theta_monomial(m: MonomialOrBottom) -> Formula:
    if m is BOTTOM:
        return FF
    return big_and(l.formula() for l in m.lits)


def smart_and(a: MonomialOrBottom, b: MonomialOrBottom) -> MonomialOrBottom:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    union = set(a.lits) | set(b.lits)
    if any(~l in union for l in union):
        return BOTTOM
    return Monomial(tuple(union))


def monomial_sat(x: frozenset[str], m: MonomialOrBottom) -> bool:
    if m is BOTTOM:
        return False
    return all((l.atom in x) != l.negated for l in m.lits)


@dataclass(frozen=True)
class LinearFactor:
    monomial: Monomial
    next: Conj

    def __post_init__(self):
        if self.monomial is BOTTOM:
            raise ValueError("a linear factor never carries the ff monomial")

    def __str__(self):
        return f"<{self.monomial} | {self.next}>"

    def to_json(self) -> dict:
        return {"monomial": [str(l) for l in self.monomial.lits],
                "next": [str(f) for f in self.next.elems]}


def factor_key(lf_: LinearFactor) -> tuple:
    return (monomial_key(lf_.monomial), conj_key(lf_.next))


def sorted_factors(fs: Iterable[LinearFactor]) -> list[LinearFactor]:
    return sorted(fs, key=factor_key)


@lru_cache(maxsize=None)
def simp(f: Formula) -> frozenset[Conj]:
    """Set-based conjunctive normal form; the disjunction of the result is ``f``."""
    if isinstance(f, And):
        return frozenset(conj(a, b) for a in simp(f.left) for b in simp(f.right))
    if isinstance(f, Or):
        return simp(f.left) | simp(f.right)
    return frozenset({Conj.of([f])})


def factor_product(xs: Iterable[LinearFactor], ys: Iterable[LinearFactor]) -> set[LinearFactor]:
    out = set()
    for a in xs:
        for b in ys:
            m = smart_and(a.monomial, b.monomial)
            if m is not BOTTOM:
                out.add(LinearFactor(m, conj(a.next, b.next)))
    return out


def _extend(fs: Iterable[LinearFactor], c: Conj) -> set[LinearFactor]:
    return {LinearFactor(x.monomial, conj(x.next, c)) for x in fs}


@lru_cache(maxsize=None)
def lf(f: Formula) -> frozenset[LinearFactor]:
    """Linear factors of a PNF formula; F and G use their shortcut clauses."""
    match f:
        case Tt():
            return frozenset({LinearFactor(TRUE_MONOMIAL, TOP)})
        case Ff():
            return frozenset()
        case Atom() | Not(Atom()):
            return frozenset({LinearFactor(Monomial((Literal.from_formula(f),)), TOP)})
        case Or(l, r):
            return lf(l) | lf(r)
        case And(l, r):
            return frozenset(factor_product(lf(l), lf(r)))
        case Next(g):
            return frozenset(LinearFactor(TRUE_MONOMIAL, c) for c in simp(g))
        case Until(l, r):
            return lf(r) | _extend(lf(l), Conj.of([f]))
        case Release(l, r):
            return frozenset(factor_product(lf(l), lf(r))) | _extend(lf(r), Conj.of([f]))
        case Eventually(g):
            return lf(g) | {LinearFactor(TRUE_MONOMIAL, Conj.of([f]))}
        case Always(g):
            return frozenset(_extend(lf(g), Conj.of([f])))
    raise TypeError(f"not a PNF formula: {f!r}")


def lf_conj(c: Conj) -> frozenset[LinearFactor]:
    """Linear factors of a formal conjunction (product over its elements)."""
    out = {LinearFactor(TRUE_MONOMIAL, TOP)}
    for e in c.elems:
        out = factor_product(out, lf(e))
    return frozenset(out)


def theta_factor(x: LinearFactor) -> Formula:
    return And(theta_monomial(x.monomial), Next(x.next.formula()))


def theta_lf(fs: Iterable[LinearFactor]) -> Formula:
    """The linear form denoted by a factor set; the empty set is ``ff``."""
    return big_or(theta_factor(x) for x in sorted_factors(fs))
