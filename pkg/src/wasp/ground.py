"""Safety checking and grounding over declared finite domains."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import semiring as sr
from .errors import GroundingError, UnsafeProgram
from .lang.syntax import (
    And, At, Atom, Bot, Box, Constraint, Diamond, Domain, Gate, Implies, Not,
    Or, Program, Quant, Rule, Top, Var, WAdd, WBox, WDiamond, WMul, Weight,
    WeightApp,
)


@dataclass(frozen=True)
class DomainDecl:
    name: str
    constants: tuple

    def __post_init__(self):
        object.__setattr__(self, "constants", tuple(self.constants))
        if len(set(self.constants)) != len(self.constants):
            raise ValueError(f"duplicate constants in domain {self.name}")


@dataclass(frozen=True)
class Violation:
    rule: int
    variable: str
    positions: tuple  # e.g. ("head[0]", "body[1]")


@dataclass(frozen=True)
class SafetyReport:
    violations: tuple = ()

    @property
    def safe(self) -> bool:
        return not self.violations

    def unsafe_variables(self, rule: int) -> list[str]:
        return [v.variable for v in self.violations if v.rule == rule]

    def __str__(self) -> str:
        if self.safe:
            return "safe"
        return "; ".join(
            f"rule {v.rule}: variable {v.variable} unsafe at {', '.join(v.positions)}"
            for v in self.violations
        )


# -- substitution ----------------------------------------------------------


def substitute(node, theta: dict):
    """Replace variables according to ``theta``; quantifiers shadow their own variable."""
    if not theta:
        return node
    if isinstance(node, Var):
        return theta.get(node, node)
    if isinstance(node, Atom):
        return Atom(node.predicate, tuple(theta.get(a, a) if isinstance(a, Var) else a for a in node.args))
    if isinstance(node, WeightApp):
        return WeightApp(node.function, theta.get(node.arg, node.arg) if isinstance(node.arg, Var) else node.arg)
    if isinstance(node, (Top, Bot, Weight)):
        return node
    if isinstance(node, Not):
        return Not(substitute(node.arg, theta))
    if isinstance(node, Diamond):
        return Diamond(substitute(node.arg, theta))
    if isinstance(node, Box):
        return Box(substitute(node.arg, theta))
    if isinstance(node, At):
        return At(node.time, substitute(node.arg, theta))
    if isinstance(node, WDiamond):
        return WDiamond(substitute(node.arg, theta))
    if isinstance(node, WBox):
        return WBox(substitute(node.arg, theta))
    if isinstance(node, (And, Or, Implies, WAdd, WMul)):
        return type(node)(substitute(node.left, theta), substitute(node.right, theta))
    if isinstance(node, Gate):
        return Gate(substitute(node.formula, theta), node.negated)
    if isinstance(node, Quant):
        inner = {k: v for k, v in theta.items() if k != node.var}
        return Quant(node.kind, node.var, node.domain, substitute(node.body, inner))
    if isinstance(node, Constraint):
        return Constraint(node.bound, node.cmp, substitute(node.body, theta), node.semiring)
    if isinstance(node, Domain):
        return node
    if isinstance(node, Rule):
        return Rule(tuple(substitute(h, theta) for h in node.head),
                    tuple(substitute(b, theta) for b in node.body))
    raise TypeError(f"cannot substitute into {node!r}")


def _occurrences(node, bound=frozenset()):
    """Yield (variable, quantifier-bound?) for each variable occurrence, in textual order."""
    if isinstance(node, Atom):
        for a in node.args:
            if isinstance(a, Var):
                yield a, a in bound
    elif isinstance(node, WeightApp):
        if isinstance(node.arg, Var):
            yield node.arg, node.arg in bound
    elif isinstance(node, Quant):
        yield from _occurrences(node.body, bound | {node.var})
    elif isinstance(node, (Not, Diamond, Box, At, WDiamond, WBox)):
        yield from _occurrences(node.arg, bound)
    elif isinstance(node, (And, Or, Implies, WAdd, WMul)):
        yield from _occurrences(node.left, bound)
        yield from _occurrences(node.right, bound)
    elif isinstance(node, Gate):
        yield from _occurrences(node.formula, bound)
    elif isinstance(node, Constraint):
        yield from _occurrences(node.body, bound)
    elif isinstance(node, Domain):
        yield node.var, False


def rule_variables(rule: Rule) -> list[Var]:
    """Free variables of a rule in order of first occurrence (head first)."""
    seen = []
    for part in rule.head + rule.body:
        for v, bound in _occurrences(part):
            if not bound and v not in seen:
                seen.append(v)
    return seen


def _binds(lit) -> bool:
    if isinstance(lit, Atom):
        return True
    return isinstance(lit, (Diamond, Box, At)) and isinstance(lit.arg, Atom)


def check_safety(p: Program) -> SafetyReport:
    """A rule is safe iff each free variable occurs in a positive body atom."""
    violations = []
    for idx, rule in enumerate(p.rules):
        safe_vars = set()
        for lit in rule.body:
            if _binds(lit):
                safe_vars.update(v for v, _ in _occurrences(lit))
        positions: dict[Var, list[str]] = {}
        for where, parts in (("head", rule.head), ("body", rule.body)):
            for k, part in enumerate(parts):
                for v, bound in _occurrences(part):
                    if not bound and v not in safe_vars:
                        label = f"{where}[{k}]"
                        if label not in positions.setdefault(v, []):
                            positions[v].append(label)
        for v, pos in positions.items():
            violations.append(Violation(idx, v.name, tuple(pos)))
    return SafetyReport(tuple(violations))


# -- quantifiers and weight functions --------------------------------------


def _fold(parts, op, unit):
    if not parts:
        return Weight(unit)
    out = parts[0]
    for x in parts[1:]:
        out = op(out, x)
    return out


def expand_quantifier(q: Quant, d: DomainDecl, s) -> object:
    """Replace ``sum``/``prod`` by the chain of its instantiations in domain order.

    Nested quantifiers inside the body are left in place.
    """
    s = sr.get(s)
    for inner in _nested_quants(q.body):
        if inner.var == q.var:
            raise GroundingError(f"variable {q.var} is re-bound inside its own quantifier")
    parts = [substitute(q.body, {q.var: c}) for c in d.constants]
    if q.kind == "sum":
        return _fold(parts, WAdd, s.zero)
    if q.kind == "prod":
        return _fold(parts, WMul, s.one)
    raise ValueError(f"unknown quantifier {q.kind!r}")


def _nested_quants(node):
    if isinstance(node, Quant):
        yield node
        yield from _nested_quants(node.body)
    elif isinstance(node, (WAdd, WMul)):
        yield from _nested_quants(node.left)
        yield from _nested_quants(node.right)
    elif isinstance(node, (WDiamond, WBox)):
        yield from _nested_quants(node.arg)


def ground_weighted(alpha, s, domains: dict | None = None, weights: dict | None = None,
                    program: Program | None = None):
    """Expand every quantifier and resolve weight-function applications in ``alpha``."""
    s = sr.get(s)
    if program is not None:
        domains = {**program.domains, **(domains or {})}
        weights = {**program.weights, **(weights or {})}
    domains = domains or {}
    weights = weights or {}

    def go(node):
        if isinstance(node, Quant):
            if node.domain not in domains:
                raise GroundingError(f"undeclared domain {node.domain}")
            return go(expand_quantifier(node, DomainDecl(node.domain, domains[node.domain]), s))
        if isinstance(node, WeightApp):
            if isinstance(node.arg, Var):
                raise GroundingError(f"unbound variable {node.arg} in {node.function}({node.arg})")
            table = weights.get(node.function)
            if table is None:
                raise GroundingError(f"undeclared weight function {node.function}")
            if node.arg not in table:
                raise GroundingError(f"weight function {node.function} has no value for {node.arg}")
            text = table[node.arg]
            return Weight(s.parse(text) if isinstance(text, str) else s.check(text))
        if isinstance(node, (WAdd, WMul)):
            return type(node)(go(node.left), go(node.right))
        if isinstance(node, WDiamond):
            return WDiamond(go(node.arg))
        if isinstance(node, WBox):
            return WBox(go(node.arg))
        return node

    return go(alpha)


def _ground_literal(lit, p: Program):
    if isinstance(lit, Constraint):
        return Constraint(lit.bound, lit.cmp,
                          ground_weighted(lit.body, lit.semiring, program=p), lit.semiring)
    return lit


def variable_domains(rule: Rule, p: Program) -> dict:
    """Domain of each free rule variable: its ``X in D`` annotation, else the sole declared domain."""
    out = {}
    for lit in rule.body:
        if isinstance(lit, Domain):
            if lit.domain not in p.domains:
                raise GroundingError(f"undeclared domain {lit.domain}")
            if out.get(lit.var, lit.domain) != lit.domain:
                raise GroundingError(f"conflicting domains for variable {lit.var}")
            out[lit.var] = lit.domain
    for v in rule_variables(rule):
        if v not in out:
            if len(p.domains) != 1:
                raise GroundingError(
                    f"missing domain for variable {v}; annotate it with '{v} in <domain>'"
                )
            out[v] = next(iter(p.domains))
    return out


def ground_rule(rule: Rule, p: Program) -> list[Rule]:
    variables = rule_variables(rule)
    for part in rule.head + rule.body:
        if isinstance(part, Constraint):
            for q in _nested_quants(part.body):
                if q.var in variables:
                    raise GroundingError(f"quantifier captures rule variable {q.var}")
    doms = variable_domains(rule, p)
    stripped = Rule(rule.head, tuple(b for b in rule.body if not isinstance(b, Domain)))
    out = []
    for combo in itertools.product(*(p.domains[doms[v]] for v in variables)):
        inst = substitute(stripped, dict(zip(variables, combo)))
        out.append(Rule(tuple(_ground_literal(h, p) for h in inst.head),
                        tuple(_ground_literal(b, p) for b in inst.body)))
    return out


def ground(p: Program) -> Program:
    """Instantiate every rule over the domains of its variables.

    Rules come out in program order, instantiations in domain order; no
    instance is pruned, so each rule yields exactly the product of its
    variables' domain sizes.
    """
    report = check_safety(p)
    if not report.safe:
        raise UnsafeProgram(str(report))
    rules = []
    for rule in p.rules:
        rules.extend(ground_rule(rule, p))
    return Program(p.semiring, dict(p.domains), {k: dict(v) for k, v in p.weights.items()}, tuple(rules))
