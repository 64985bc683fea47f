"""Randomised cross-module checks on a seeded corpus."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .automaton import accepts_lasso, build_aa
from .automaton import transition_structure as aa_structure
from .derivatives import (descendant_bound, descendants, in_set_closure,
                          iterated, pderiv_formula, rho)
from .factors import lf, theta_lf
from .generate import random_formula
from .semantics import alphabet, eval_lasso, random_lasso, sat_search_bounded
from .syntax import FF, Formula, show
from .tableau import (FIRST, LAST, LOCAL, build_optimized, build_original,
                      is_satisfiable, node_to_factor, rewrite_exhaust)
from .tableau import transition_structure as tableau_structure

PROPERTIES = (
    "expansion", "pderiv=rho", "closedness", "delta=rho", "language",
    "language-tt-variant", "confluence", "lf=tableau", "isomorphism",
    "sat-sound", "sat-complete", "original=optimized",
)


@dataclass(frozen=True)
class Failure:
    index: int
    formula: str
    prop: str
    context: str
    expected: str
    actual: str

    def __str__(self):
        return (f"#{self.index} [{self.prop}] {self.formula} at {self.context}: "
                f"expected {self.expected}, got {self.actual}")


@dataclass
class CrosscheckReport:
    cases: int = 0
    checked: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PROPERTIES, 0))
    passed: dict[str, int] = field(default_factory=lambda: dict.fromkeys(PROPERTIES, 0))
    failures: list[Failure] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"cases: {self.cases}"]
        lines += [f"{p}: {self.passed[p]}/{self.checked[p]}" for p in PROPERTIES]
        lines += [f"FAIL {f}" for f in self.failures]
        lines.append(f"failures: {len(self.failures)}")
        return "\n".join(lines)


class _Case:
    def __init__(self, report: CrosscheckReport, index: int, f: Formula):
        self.report, self.index, self.f = report, index, f

    def check(self, prop: str, context: str, expected, actual) -> None:
        self.report.checked[prop] += 1
        if expected == actual:
            self.report.passed[prop] += 1
        else:
            self.report.failures.append(
                Failure(self.index, show(self.f), prop, context, str(expected), str(actual)))

    def guard(self, prop: str, context: str, thunk: Callable[[], object], expected) -> None:
        """Like :meth:`check`, but an exception counts as a failure."""
        try:
            actual = thunk()
        except Exception as e:  # noqa: BLE001 - reported as data
            actual = f"{type(e).__name__}: {e}"
        self.check(prop, context, expected, actual)


def check_formula(report: CrosscheckReport, index: int, f: Formula, aps: Sequence[str],
                  lassos: int = 20, max_prefix: int = 3, max_loop: int = 4,
                  original: bool = True) -> None:
    """Run every property on one PNF formula."""
    case = _Case(report, index, f)
    rng = random.Random(f"{index}:{show(f)}")
    words = [random_lasso(rng, aps, max_prefix, max_loop) for _ in range(lassos)]
    expected = [eval_lasso(f, w) for w in words]

    theta = theta_lf(lf(f))
    for w, e in zip(words, expected):
        case.check("expansion", str(w), e, eval_lasso(theta, w))

    for x in alphabet(aps):
        case.check("pderiv=rho", "{" + ",".join(sorted(x)) + "}",
                   rho(f, x), pderiv_formula(f, x))

    base = iterated(f)
    desc = descendants(f, aps)
    case.check("closedness", "descendants",
               True, all(in_set_closure(c, base) for c in desc)
               and len(desc) <= descendant_bound(f))

    case.guard("delta=rho", "build_aa", lambda: bool(build_aa(f, aps, check=True)), True)
    aa = build_aa(f, aps)
    aa_var = build_aa(f, aps, tt_sink=False)
    for w, e in zip(words, expected):
        case.check("language", str(w), e, accepts_lasso(aa, w).accepted)
        case.check("language-tt-variant", str(w), e, accepts_lasso(aa_var, w).accepted)

    first = rewrite_exhaust([{f}], FIRST)
    for other in (LAST, LOCAL):
        case.check("confluence", f"first/{other}", first, rewrite_exhaust([{f}], other))
    if f != FF:
        case.check("lf=tableau", "rewrite",
                   lf(f), frozenset(node_to_factor(s) for s in rewrite_exhaust([{f}])))
    case.check("isomorphism", "transition structure",
               aa_structure(aa), tableau_structure(build_optimized(f)))

    verdict: Optional[bool] = None
    try:
        verdict = is_satisfiable(f).satisfiable
        case.check("sat-sound", "witness", True, True)
    except Exception as e:  # noqa: BLE001
        case.check("sat-sound", "witness", "valid witness", f"{type(e).__name__}: {e}")
    model = sat_search_bounded(f, max_prefix=1, max_loop=2)
    if model is not None:
        case.check("sat-complete", str(model), True, verdict)
    if original and verdict is not None:
        case.check("original=optimized", "verdict", verdict, build_original(f).satisfiable)


def crosscheck(seed: int, count: int, max_size: int, aps: Sequence[str] = ("p", "q", "r"),
               lassos: int = 20, original: bool = True) -> CrosscheckReport:
    if count < 1:
        raise ValueError("count must be at least 1")
    start = time.perf_counter()
    rng = random.Random(seed)
    report = CrosscheckReport()
    for i in range(count):
        f = random_formula(rng, max_size, aps)
        report.cases += 1
        check_formula(report, i, f, aps, lassos=lassos, original=original)
    report.seconds = time.perf_counter() - start
    return report
