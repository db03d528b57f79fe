"""Abstract syntax for formulas, weighted formulas, constraints and programs.

All nodes are frozen dataclasses, so structural equality and hashing come for
free. Terms are ``int`` or ``str`` constants, or :class:`Var`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Union


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[int, str, Var]


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(str(a) for a in self.args)})"

    @property
    def arity(self) -> int:
        return len(self.args)

    def is_ground(self) -> bool:
        return not any(isinstance(a, Var) for a in self.args)


# -- classical (and temporal) formulas ------------------------------------


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Not:
    arg: Any


@dataclass(frozen=True)
class And:
    left: Any
    right: Any


@dataclass(frozen=True)
class Or:
    left: Any
    right: Any


@dataclass(frozen=True)
class Implies:
    left: Any
    right: Any


@dataclass(frozen=True)
class Diamond:
    """Holds if the argument holds at some time point of the timeline."""

    arg: Any


@dataclass(frozen=True)
class Box:
    arg: Any


@dataclass(frozen=True)
class At:
    time: int
    arg: Any


Formula = Union[Atom, Top, Bot, Not, And, Or, Implies, Diamond, Box, At]


def conj(parts) -> Formula:
    """Right-nested conjunction; the empty conjunction is ⊤."""
    parts = list(parts)
    if not parts:
        return Top()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return Bot()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def iff(a, b) -> Formula:
    return And(Implies(a, b), Implies(b, a))


# -- weighted formulas -----------------------------------------------------


@dataclass(frozen=True)
class Weight:
    value: Any


@dataclass(frozen=True)
class WeightApp:
    """Application ``w(c)`` of a declared weight function."""

    function: str
    arg: Term


@dataclass(frozen=True)
class Gate:
    """0-1 gate over a classical formula; ``negated`` gates test non-satisfaction."""

    formula: Any
    negated: bool = False


@dataclass(frozen=True)
class WAdd:
    left: Any
    right: Any


@dataclass(frozen=True)
class WMul:
    left: Any
    right: Any


@dataclass(frozen=True)
class Quant:
    kind: str  # "sum" | "prod"
    var: Var
    domain: str
    body: Any


@dataclass(frozen=True)
class WDiamond:
    """⊕ of the argument over every time point."""

    arg: Any


@dataclass(frozen=True)
class WBox:
    arg: Any


WeightedFormula = Union[Weight, WeightApp, Atom, Gate, WAdd, WMul, Quant, WDiamond, WBox]

COMPARATORS = ("=", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class Constraint:
    """Algebraic constraint ``bound cmp body`` over a named semiring."""

    bound: Any
    cmp: str
    body: Any
    semiring: str


@dataclass(frozen=True)
class Rule:
    """``head <- body``; an empty head is ⊥, an empty body ⊤.

    Head elements are atoms or constraints (read disjunctively). Body elements
    are atoms, ``Not(atom)`` for default negation, constraints, temporal
    literals, or ``Domain`` annotations.
    """

    head: tuple = ()
    body: tuple = ()


@dataclass(frozen=True)
class Domain:
    """Body annotation ``X in D`` typing a rule variable; always true."""

    var: Var
    domain: str


@dataclass(frozen=True)
class Program:
    semiring: str | None = None
    domains: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    rules: tuple = ()

    def __add__(self, other: "Program") -> "Program":
        domains = {**self.domains, **other.domains}
        weights = {k: dict(v) for k, v in self.weights.items()}
        for k, v in other.weights.items():
            weights.setdefault(k, {}).update(v)
        return Program(
            self.semiring or other.semiring, domains, weights, self.rules + other.rules
        )


def walk(node) -> Iterator[Any]:
    """Pre-order traversal over every AST node reachable from ``node``."""
    yield node
    if isinstance(node, (Not, Diamond, Box, At, WDiamond, WBox)):
        yield from walk(node.arg)
    elif isinstance(node, (And, Or, Implies, WAdd, WMul)):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Gate):
        yield from walk(node.formula)
    elif isinstance(node, Quant):
        yield from walk(node.body)
    elif isinstance(node, Constraint):
        yield from walk(node.body)
    elif isinstance(node, Rule):
        for x in node.head + node.body:
            yield from walk(x)
    elif isinstance(node, Program):
        for r in node.rules:
            yield from walk(r)


def atoms_of(node) -> set[Atom]:
    return {n for n in walk(node) if isinstance(n, Atom)}


def variables_of(node) -> set[Var]:
    out = set()
    for n in walk(node):
        if isinstance(n, Atom):
            out.update(a for a in n.args if isinstance(a, Var))
        elif isinstance(n, WeightApp) and isinstance(n.arg, Var):
            out.add(n.arg)
        elif isinstance(n, (Quant, Domain)):
            out.add(n.var)
    return out


def is_ground(node) -> bool:
    for n in walk(node):
        if isinstance(n, (Quant, WeightApp, Domain)):
            return False
        if isinstance(n, Atom) and not n.is_ground():
            return False
    return True


def is_temporal(node) -> bool:
    return any(isinstance(n, (Diamond, Box, At, WDiamond, WBox)) for n in walk(node))
