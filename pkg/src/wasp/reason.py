"""Quantitative reasoning over answer sets, and the Clark completion of tight programs."""

from __future__ import annotations

import graphlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import semiring as sr
from .errors import CapacityError, FragmentError, Inconsistent, NegativeWeight, ZeroMass
from .ground import ground_weighted
from .ht import normal_parts, answer_sets, max_atoms, universe_of
from .lang.syntax import Atom, Bot, Not, Program, Top, conj, disj, iff
from .semiring import Ordering
from .weighted import compile_weighted, eval


@dataclass
class WeightedResult:
    value: object
    witnesses: list | None = None
    table: dict = field(default_factory=dict)  # interpretation -> value, canonical order


def _prepare(p: Program, alpha, s):
    s = sr.get(s)
    return s, ground_weighted(alpha, s, program=p)


def _table(models, alpha, s, workers: int = 1) -> dict:
    if workers > 1 and len(models) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda m: eval(alpha, m, s), models))
    else:
        values = [eval(alpha, m, s) for m in models]
    return dict(zip(models, values))


def aasc(p: Program, alpha, s, *, workers: int = 1) -> WeightedResult:
    """Algebraic answer set count: the semiring sum of ``alpha`` over all answer sets."""
    s, alpha = _prepare(p, alpha, s)
    table = _table(answer_sets(p, workers=workers), alpha, s, workers)
    return WeightedResult(s.sum(table.values()), table=table)


def sat_value(alpha, s, universe: Iterable[Atom], *, capacity: int | None = None):
    """Semiring sum of ``alpha`` over every interpretation of the universe."""
    s = sr.get(s)
    alpha = ground_weighted(alpha, s)
    atoms = universe_of(extra=universe)
    if len(atoms) > max_atoms(capacity):
        raise CapacityError(f"{len(atoms)} atoms exceed capacity {max_atoms(capacity)}")
    f = compile_weighted(alpha, s, {a: k for k, a in enumerate(atoms)})
    total = s.zero
    for m in range(1 << len(atoms)):
        total = s.plus(total, f(m))
    return total


def optimize(p: Program, alpha, s, direction: str = "min", *, workers: int = 1) -> WeightedResult:
    """Best value of ``alpha`` over the answer sets; every optimal answer set is a witness."""
    s, alpha = _prepare(p, alpha, s)
    if not s.ordered:
        raise sr.OrderUnsupported(f"semiring {s.name} has no order to optimize over")
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', not {direction!r}")
    table = _table(answer_sets(p, workers=workers), alpha, s, workers)
    if not table:
        raise Inconsistent("program has no answer set")
    worse = Ordering.GREATER if direction == "min" else Ordering.LESS
    best = None
    for v in table.values():
        if best is None or s.compare(best, v) is worse:
            best = v
    witnesses = [m for m, v in table.items() if s.compare(v, best) is Ordering.EQUAL]
    return WeightedResult(best, witnesses=witnesses, table=table)


def normalize(p: Program, alpha, s="rat", *, workers: int = 1) -> WeightedResult:
    """Probability of each answer set: its weight divided by the total weight."""
    s, alpha = _prepare(p, alpha, s)
    if not s.exact_division:
        raise FragmentError(f"normalization needs exact division; {s.name} does not provide it")
    table = _table(answer_sets(p, workers=workers), alpha, s, workers)
    for m, v in table.items():
        if v < 0:
            raise NegativeWeight(f"answer set has negative weight {sr.format_value(v)}")
    total = s.sum(table.values())
    if total == 0:
        raise ZeroMass("total weight of the answer sets is zero")
    probs = {m: Fraction(v) / total for m, v in table.items()}
    return WeightedResult(Fraction(total), table=probs)


# -- tight programs --------------------------------------------------------


def positive_dependencies(p: Program) -> dict:
    """Map each head atom to the atoms occurring positively in its rule bodies."""
    graph: dict = {}
    for head, pos, _neg in normal_parts(p):
        if head is not None:
            graph.setdefault(head, set()).update(pos)
    return graph


def is_tight(p: Program) -> bool:
    try:
        graphlib.TopologicalSorter(positive_dependencies(p)).prepare()
    except graphlib.CycleError:
        return False
    return True


def clark_completion(p: Program, universe: Iterable[Atom] = ()):
    """Completion of a tight normal program as one classical formula.

    For every atom ``a`` the result contains ``a <-> (B1 | ... | Bk)`` over
    the bodies of rules with head ``a`` (``#false`` when there are none);
    integrity constraints contribute ``~B``.
    """
    parts = normal_parts(p)
    if not is_tight(p):
        raise FragmentError("Clark completion is only faithful for tight programs")
    bodies: dict = {a: [] for a in universe_of(p, extra=universe)}
    constraints = []
    for head, pos, neg in parts:
        lits = sorted(pos, key=str) + [Not(a) for a in sorted(neg, key=str)]
        body = conj(lits)
        if head is None:
            constraints.append(Not(body))
        else:
            bodies[head].append(body)
    conjuncts = [iff(a, disj(bs) if bs else Bot()) for a, bs in bodies.items()]
    conjuncts.extend(constraints)
    return conj(conjuncts) if conjuncts else Top()
