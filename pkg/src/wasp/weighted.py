"""Semantics of weighted formulas and algebraic constraints.

Disjunctive structure is read as semiring addition and conjunctive structure
as multiplication: an atom is ``one`` when true and ``zero`` when false, and
``~φ`` / ``(φ)`` are 0-1 gates over classical subformulas.
"""

from __future__ import annotations

from typing import Callable

from . import semiring as sr
from .errors import FragmentError, NonGroundError
from .interp import HTInterpretation, compile_formula, satisfies_classical
from .lang.syntax import (
    Atom, Constraint, Gate, Quant, WAdd, WBox, WDiamond, WMul, Weight, WeightApp,
)
from .semiring import Ordering

HERE = "here"
THERE = "there"

_HOLDS = {
    "=": lambda o: o is Ordering.EQUAL,
    "!=": lambda o: o is not Ordering.EQUAL,
    "<": lambda o: o is Ordering.LESS,
    "<=": lambda o: o is not Ordering.GREATER,
    ">": lambda o: o is Ordering.GREATER,
    ">=": lambda o: o is not Ordering.LESS,
}


def eval(alpha, i: frozenset, s) -> object:  # noqa: A001 - mirrors the operation name
    """Value of the ground weighted formula ``alpha`` under interpretation ``i``."""
    s = sr.get(s)
    if isinstance(alpha, Weight):
        return s.check(alpha.value)
    if isinstance(alpha, Atom):
        if not alpha.is_ground():
            raise NonGroundError(f"atom {alpha} is not ground")
        return s.one if alpha in i else s.zero
    if isinstance(alpha, Gate):
        holds = satisfies_classical(i, alpha.formula)
        return s.one if holds != alpha.negated else s.zero
    if isinstance(alpha, WAdd):
        return s.add(eval(alpha.left, i, s), eval(alpha.right, i, s))
    if isinstance(alpha, WMul):
        return s.mul(eval(alpha.left, i, s), eval(alpha.right, i, s))
    if isinstance(alpha, (Quant, WeightApp)):
        raise NonGroundError("quantifiers and weight functions must be grounded before evaluation")
    if isinstance(alpha, (WDiamond, WBox)):
        raise FragmentError("temporal weighted operators need a stream (see wasp.stream)")
    raise TypeError(f"not a weighted formula: {alpha!r}")


def compare_bound(c: Constraint, value) -> bool:
    """Whether ``c.bound  c.cmp  value`` holds, bound on the left."""
    s = sr.get(c.semiring)
    s.check(c.bound)
    if c.cmp == "=":
        return c.bound == s.check(value)
    if c.cmp == "!=":
        return c.bound != s.check(value)
    return _HOLDS[c.cmp](s.compare(c.bound, value))


def eval_constraint(c: Constraint, i: frozenset) -> bool:
    return compare_bound(c, eval(c.body, i, c.semiring))


def eval_constraint_ht(c: Constraint, ht: HTInterpretation, world: str) -> bool:
    """HT satisfaction of a constraint.

    At there this is classical satisfaction by ``ht.there``; at here the
    constraint must hold classically in both worlds, which keeps satisfaction
    persistent from here to there.
    """
    if world == THERE:
        return eval_constraint(c, ht.there)
    if world == HERE:
        return eval_constraint(c, ht.here) and eval_constraint(c, ht.there)
    raise ValueError(f"unknown world {world!r}")


def compile_weighted(alpha, s, index: dict) -> Callable[[int], object]:
    """Bitmask version of :func:`eval` for the search engines (no carrier checks per call)."""
    s = sr.get(s)
    if isinstance(alpha, Weight):
        v = s.check(alpha.value)
        return lambda m: v
    if isinstance(alpha, Atom):
        if not alpha.is_ground():
            raise NonGroundError(f"atom {alpha} is not ground")
        bit = 1 << index[alpha] if alpha in index else 0
        one, zero = s.one, s.zero
        return lambda m: one if m & bit else zero
    if isinstance(alpha, Gate):
        g = compile_formula(alpha.formula, index)
        one, zero, neg = s.one, s.zero, alpha.negated
        return lambda m: one if g(m) != neg else zero
    if isinstance(alpha, (WAdd, WMul)):
        left = compile_weighted(alpha.left, s, index)
        right = compile_weighted(alpha.right, s, index)
        op = s.plus if isinstance(alpha, WAdd) else s.times
        return lambda m: op(left(m), right(m))
    eval(alpha, frozenset(), s)  # raises the appropriate error
    raise TypeError(f"not a weighted formula: {alpha!r}")


def compile_constraint(c: Constraint, index: dict) -> Callable[[int], bool]:
    """Memoized bitmask predicate for classical satisfaction of ``c``."""
    body = compile_weighted(c.body, c.semiring, index)
    cache: dict[int, bool] = {}

    def holds(m: int) -> bool:
        r = cache.get(m)
        if r is None:
            r = cache[m] = compare_bound(c, body(m))
        return r

    return holds
