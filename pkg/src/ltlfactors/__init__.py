"""Linear factors, partial derivatives, alternating automata and tableaux for LTL."""

from .automaton import AlternatingAutomaton, accepts_lasso, build_aa
from .derivatives import descendants, pderiv, rho
from .factors import LinearFactor, Monomial, lf, simp
from .semantics import LassoWord, eval_lasso, parse_lasso, sat_search_bounded
from .syntax import Conj, Formula, ParseError, parse, show, to_pnf
from .tableau import build_optimized, build_original, is_satisfiable

__all__ = [
    "AlternatingAutomaton", "Conj", "Formula", "LassoWord", "LinearFactor",
    "Monomial", "ParseError", "accepts_lasso", "build_aa", "build_optimized",
    "build_original", "descendants", "eval_lasso", "is_satisfiable", "lf",
    "parse", "parse_lasso", "pderiv", "rho", "sat_search_bounded", "show",
    "simp", "to_pnf",
]
