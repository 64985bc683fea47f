"""Partial derivatives of LTL formulas.

Two independent routes compute the derivative with respect to a symbol:
``pderiv`` goes through linear factors, ``rho`` recurses on the formula
directly.  They must agree on every input.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .factors import lf, monomial_sat, simp
from .semantics import alphabet
from .syntax import (TOP, Always, And, Atom, Conj, Eventually, Ff, Formula,
                     Next, Not, Or, Release, Tt, Until, atoms, conj,
                     is_temporal)


def _products(sets: Iterable[frozenset[Conj]]) -> frozenset[Conj]:
    out = {TOP}
    for s in sets:
        out = {conj(a, b) for a in out for b in s}
        if not out:
            break
    return frozenset(out)


def pderiv(c: Conj, x: frozenset[str]) -> frozenset[Conj]:
    """Derivative of a formal conjunction via the linear factors of its elements."""
    return _products(_pderiv_temporal(e, x) for e in c.elems)


@lru_cache(maxsize=None)
def _pderiv_temporal(f: Formula, x: frozenset[str]) -> frozenset[Conj]:
    return frozenset(fac.next for fac in lf(f) if monomial_sat(x, fac.monomial))


def pderiv_formula(f: Formula, x: frozenset[str]) -> frozenset[Conj]:
    """Derivative of an arbitrary PNF formula: normalise with SIMP, then derive."""
    out = set()
    for c in simp(f):
        out |= pderiv(c, x)
    return frozenset(out)


@lru_cache(maxsize=None)
def rho(f: Formula, x: frozenset[str]) -> frozenset[Conj]:
    """Direct partial derivative."""
    match f:
        case Tt():
            return frozenset({TOP})
        case Ff():
            return frozenset()
        case Atom(name):
            return frozenset({TOP}) if name in x else frozenset()
        case Not(Atom(name)):
            return frozenset() if name in x else frozenset({TOP})
        case Or(l, r):
            return rho(l, x) | rho(r, x)
        case And(l, r):
            return _products([rho(l, x), rho(r, x)])
        case Next(g):
            return simp(g)
        case Until(l, r):
            me = Conj.of([f])
            return rho(r, x) | {conj(c, me) for c in rho(l, x)}
        case Release(l, r):
            me = Conj.of([f])
            return _products([rho(l, x), rho(r, x)]) | {conj(c, me) for c in rho(r, x)}
        case Eventually(g):
            return rho(g, x) | {Conj.of([f])}
        case Always(g):
            me = Conj.of([f])
            return frozenset(conj(c, me) for c in rho(g, x))
    raise TypeError(f"not a PNF formula: {f!r}")


def rho_conj(c: Conj, x: frozenset[str]) -> frozenset[Conj]:
    return _products(rho(e, x) for e in c.elems)


def seeds(f: Formula) -> frozenset[Conj]:
    """The empty-word derivative of ``f`` as formal conjunctions.

    A temporal ``f`` gives ``{[f]}``; otherwise the SIMP elements are the seeds.
    """
    if is_temporal(f):
        return frozenset({Conj.of([f])})
    return simp(f)


def rho_word(f: Formula, w: Sequence[frozenset[str]]) -> frozenset[Conj]:
    if not w:
        return seeds(f)
    current = rho(f, w[0])
    for x in w[1:]:
        current = frozenset().union(*(rho_conj(c, x) for c in current))
    return current


def descendants(f: Formula, aps: Iterable[str] | None = None) -> frozenset[Conj]:
    """All derivative descendants over the alphabet P(atoms(f)), by least fixpoint."""
    sigma = alphabet(atoms(f) if aps is None else aps)
    seen = set(seeds(f))
    todo = list(seen)
    while todo:
        c = todo.pop()
        for x in sigma:
            for d in rho_conj(c, x):
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
    return frozenset(seen)


@lru_cache(maxsize=None)
def iterated(f: Formula) -> frozenset[Formula]:
    """Iterated partial derivatives: the temporal subformulas reachable by derivation."""
    match f:
        case Tt() | Ff() | Atom() | Not():
            return frozenset({f})
        case Or(l, r) | And(l, r):
            return iterated(l) | iterated(r)
        case Next(g) | Eventually(g) | Always(g):
            return frozenset({f}) | iterated(g)
        case Until(l, r) | Release(l, r):
            return frozenset({f}) | iterated(r) | iterated(l)
    raise TypeError(f"not a PNF formula: {f!r}")


def in_set_closure(c: Conj, base: Iterable[Formula]) -> bool:
    """Membership in SET(base) without materialising it."""
    base = set(base)
    return all(e in base for e in c.elems)


def descendant_bound(f: Formula) -> int:
    return 2 ** len(iterated(f)) + 1
