"""Interpretations and classical satisfaction of ground formulas.

An interpretation is a ``frozenset`` of ground atoms. The bitmask compilers
at the bottom serve the exhaustive-search engines, which evaluate the same
formula against thousands of candidate interpretations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import FragmentError, NonGroundError
from .lang.syntax import (
    And, At, Atom, Bot, Box, Constraint, Diamond, Implies, Not, Or, Rule, Top,
)

Interpretation = frozenset


def interpretation(atoms: Iterable[Atom] = ()) -> frozenset:
    return frozenset(atoms)


@dataclass(frozen=True)
class HTInterpretation:
    here: frozenset
    there: frozenset

    def __post_init__(self):
        object.__setattr__(self, "here", frozenset(self.here))
        object.__setattr__(self, "there", frozenset(self.there))
        if not self.here <= self.there:
            extra = ", ".join(sorted(map(str, self.here - self.there)))
            raise ValueError(f"here-world must be contained in there-world (extra: {extra})")

    def __str__(self) -> str:
        return f"<{format_interpretation(self.here)}, {format_interpretation(self.there)}>"


def sort_atoms(atoms: Iterable[Atom]) -> list[Atom]:
    return sorted(atoms, key=str)


def format_interpretation(i: Iterable[Atom]) -> str:
    return "{" + ", ".join(str(a) for a in sort_atoms(i)) + "}"


def canonical_key(i: Iterable[Atom]) -> tuple:
    return tuple(str(a) for a in sort_atoms(i))


def canonical_order(interps: Iterable[frozenset]) -> list[frozenset]:
    return sorted(interps, key=canonical_key)


def _ground_atom(a: Atom) -> Atom:
    if not a.is_ground():
        raise NonGroundError(f"atom {a} is not ground")
    return a


def satisfies_classical(i: frozenset, f) -> bool:
    """Two-valued satisfaction of a ground formula, rule or constraint by ``i``."""
    if isinstance(f, Atom):
        return _ground_atom(f) in i
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not satisfies_classical(i, f.arg)
    if isinstance(f, And):
        return satisfies_classical(i, f.left) and satisfies_classical(i, f.right)
    if isinstance(f, Or):
        return satisfies_classical(i, f.left) or satisfies_classical(i, f.right)
    if isinstance(f, Implies):
        return not satisfies_classical(i, f.left) or satisfies_classical(i, f.right)
    if isinstance(f, Constraint):
        from .weighted import eval_constraint

        return eval_constraint(f, i)
    if isinstance(f, Rule):
        body = all(satisfies_classical(i, b) for b in f.body)
        return not body or any(satisfies_classical(i, h) for h in f.head)
    if isinstance(f, (Diamond, Box, At)):
        raise FragmentError("temporal operators need a stream (see wasp.stream)")
    raise NonGroundError(f"cannot evaluate {f!r} classically; ground it first")


def compile_formula(f, index: dict) -> Callable[[int], bool]:
    """Compile a ground classical formula into a predicate over atom bitmasks.

    ``index`` maps each atom to its bit position; atoms missing from it are false.
    """
    if isinstance(f, Atom):
        _ground_atom(f)
        bit = 1 << index[f] if f in index else 0
        return lambda m: bool(m & bit)
    if isinstance(f, Top):
        return lambda m: True
    if isinstance(f, Bot):
        return lambda m: False
    if isinstance(f, Not):
        g = compile_formula(f.arg, index)
        return lambda m: not g(m)
    if isinstance(f, (And, Or, Implies)):
        left = compile_formula(f.left, index)
        right = compile_formula(f.right, index)
        if isinstance(f, And):
            return lambda m: left(m) and right(m)
        if isinstance(f, Or):
            return lambda m: left(m) or right(m)
        return lambda m: not left(m) or right(m)
    if isinstance(f, (Diamond, Box, At)):
        raise FragmentError("temporal operators need a stream (see wasp.stream)")
    raise NonGroundError(f"cannot compile {f!r}; ground it first")
