"""Lasso-word semantics: the oracle every construction is checked against.

Symbols are sets of atomic propositions (the interpretation is the identity).
A lasso ``prefix ; loop`` denotes the infinite word ``prefix . loop^omega``.
Evaluation works on the finite ring of positions ``0 .. len(prefix)+len(loop)-1``
where the successor of the last position is ``len(prefix)``.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .syntax import (Always, And, Atom, Eventually, Ff, Formula, Next, Not, Or,
                     Release, Tt, Until, atoms)


def symbol(*props: str) -> frozenset[str]:
    return frozenset(props)


def symbol_key(x: frozenset[str]) -> tuple[str, ...]:
    return tuple(sorted(x))


def show_symbol(x: frozenset[str]) -> str:
    return "{" + ",".join(sorted(x)) + "}"


def alphabet(aps: Iterable[str]) -> list[frozenset[str]]:
    """All symbols over ``aps`` in the canonical order (sorted proposition lists)."""
    aps = sorted(set(aps))
    subsets = itertools.chain.from_iterable(
        itertools.combinations(aps, k) for k in range(len(aps) + 1))
    return sorted((frozenset(s) for s in subsets), key=symbol_key)


@dataclass(frozen=True)
class LassoWord:
    prefix: tuple[frozenset[str], ...]
    loop: tuple[frozenset[str], ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("lasso loop must be non-empty")
        object.__setattr__(self, "prefix", tuple(frozenset(x) for x in self.prefix))
        object.__setattr__(self, "loop", tuple(frozenset(x) for x in self.loop))

    def __len__(self):
        return len(self.prefix) + len(self.loop)

    def successor(self, i: int) -> int:
        return i + 1 if i + 1 < len(self) else len(self.prefix)

    def props(self) -> frozenset[str]:
        return frozenset().union(*self.prefix, *self.loop)

    def restrict(self, aps: Iterable[str]) -> LassoWord:
        aps = frozenset(aps)
        return LassoWord(tuple(x & aps for x in self.prefix), tuple(x & aps for x in self.loop))

    def __str__(self):
        pre = " ".join(map(show_symbol, self.prefix))
        loop = " ".join(map(show_symbol, self.loop))
        return f"{pre} ; {loop}" if pre else f"; {loop}"


def symbol_at(w: LassoWord, i: int) -> frozenset[str]:
    if i < len(w.prefix):
        return w.prefix[i]
    return w.loop[(i - len(w.prefix)) % len(w.loop)]


_SYMBOL_RE = re.compile(r"\{\s*([^{}]*?)\s*\}")


def parse_symbol(text: str) -> frozenset[str]:
    m = _SYMBOL_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"malformed symbol: {text!r}")
    body = m.group(1)
    props = [p.strip() for p in body.split(",")] if body else []
    if any(not re.fullmatch(r"[a-z][a-zA-Z0-9_]*", p) for p in props):
        raise ValueError(f"malformed symbol: {text!r}")
    return frozenset(props)


def parse_lasso(text: str) -> LassoWord:
    """Parse ``u1 u2 ... ; v1 v2 ...`` where every symbol is ``{}`` or ``{p,q}``."""
    if text.count(";") != 1:
        raise ValueError("lasso needs exactly one ';' between prefix and loop")
    pre, loop = text.split(";")

    def symbols(part: str) -> tuple[frozenset[str], ...]:
        part = part.strip()
        if not part:
            return ()
        if _SYMBOL_RE.sub("", part).strip():
            raise ValueError(f"malformed symbols: {part!r}")
        return tuple(parse_symbol(m.group()) for m in _SYMBOL_RE.finditer(part))

    loop_syms = symbols(loop)
    if not loop_syms:
        raise ValueError("lasso loop must be non-empty")
    return LassoWord(symbols(pre), loop_syms)


def _table(f: Formula, w: LassoWord, memo: dict) -> list[bool]:
    if f in memo:
        return memo[f]
    n = len(w)
    pos = range(n)
    match f:
        case Tt():
            t = [True] * n
        case Ff():
            t = [False] * n
        case Atom(name):
            t = [name in symbol_at(w, i) for i in pos]
        case Not(g):
            t = [not b for b in _table(g, w, memo)]
        case And(l, r):
            a, b = _table(l, w, memo), _table(r, w, memo)
            t = [a[i] and b[i] for i in pos]
        case Or(l, r):
            a, b = _table(l, w, memo), _table(r, w, memo)
            t = [a[i] or b[i] for i in pos]
        case Next(g):
            a = _table(g, w, memo)
            t = [a[w.successor(i)] for i in pos]
        case Until(l, r):
            t = _fixpoint(w, _table(l, w, memo), _table(r, w, memo), least=True)
        case Eventually(g):
            t = _fixpoint(w, [True] * n, _table(g, w, memo), least=True)
        case Release(l, r):
            t = _fixpoint(w, _table(l, w, memo), _table(r, w, memo), least=False)
        case Always(g):
            t = _fixpoint(w, [False] * n, _table(g, w, memo), least=False)
        case _:
            raise TypeError(f"not a formula: {f!r}")
    memo[f] = t
    return t


def _fixpoint(w: LassoWord, a: list[bool], b: list[bool], least: bool) -> list[bool]:
    # until:   x = b | (a & X x)   least fixpoint
    # release: x = b & (a | X x)   greatest fixpoint
    n = len(w)
    x = [not least] * n
    while True:
        if least:
            y = [b[i] or (a[i] and x[w.successor(i)]) for i in range(n)]
        else:
            y = [b[i] and (a[i] or x[w.successor(i)]) for i in range(n)]
        if y == x:
            return x
        x = y


def eval_lasso(f: Formula, w: LassoWord) -> bool:
    """Does ``prefix . loop^omega`` satisfy ``f``?  Works for arbitrary (non-PNF) formulas."""
    return _table(f, w, {})[0]


def eval_table(f: Formula, w: LassoWord) -> list[bool]:
    """Truth value of ``f`` at every ring position."""
    return list(_table(f, w, {}))


def lassos(aps: Iterable[str], max_prefix: int, max_loop: int) -> Iterator[LassoWord]:
    """Enumerate lassos by total size, then prefix length, then symbols lexicographically."""
    sigma = alphabet(aps)
    for total in range(1, max_prefix + max_loop + 1):
        for plen in range(0, min(max_prefix, total - 1) + 1):
            llen = total - plen
            if llen > max_loop:
                continue
            for word in itertools.product(sigma, repeat=total):
                yield LassoWord(word[:plen], word[plen:])


def sat_search_bounded(f: Formula, aps: Optional[Iterable[str]] = None,
                       max_prefix: int = 2, max_loop: int = 2) -> Optional[LassoWord]:
    """First lasso within the bounds that satisfies ``f``, or None.

    None is not a proof of unsatisfiability.
    """
    if max_loop < 1:
        raise ValueError("max_loop must be at least 1")
    aps = atoms(f) if aps is None else aps
    for w in lassos(aps, max_prefix, max_loop):
        if eval_lasso(f, w):
            return w
    return None


def random_lasso(rng: random.Random, aps: Iterable[str], max_prefix: int, max_loop: int) -> LassoWord:
    sigma = alphabet(aps)
    plen = rng.randint(0, max_prefix)
    llen = rng.randint(1, max_loop)
    return LassoWord(tuple(rng.choice(sigma) for _ in range(plen)),
                     tuple(rng.choice(sigma) for _ in range(llen)))
