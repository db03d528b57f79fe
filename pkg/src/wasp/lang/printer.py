"""Canonical text rendering of AST nodes.

The printer emits the minimal parentheses the parser needs to rebuild the
same tree, so ``parse(print(x)) == x`` for every node it accepts.
"""

from __future__ import annotations

from ..semiring import format_value
from .syntax import (
    And, At, Atom, Bot, Box, Constraint, Diamond, Domain, Gate, Implies, Not,
    Or, Program, Quant, Rule, Top, WAdd, WBox, WDiamond, WMul, Weight,
    WeightApp,
)

_IMP, _OR, _AND, _UNARY = 1, 2, 3, 4


def _level(node) -> int:
    if isinstance(node, Implies):
        return _IMP
    if isinstance(node, Or):
        return _OR
    if isinstance(node, And):
        return _AND
    return _UNARY


def formula_text(node, min_level: int = _IMP) -> str:
    text = _formula(node)
    if _level(node) < min_level:
        return f"({text})"
    return text


def _formula(node) -> str:
    if isinstance(node, Atom):
        return str(node)
    if isinstance(node, Top):
        return "#true"
    if isinstance(node, Bot):
        return "#false"
    if isinstance(node, Not):
        return "~" + formula_text(node.arg, _UNARY)
    if isinstance(node, Diamond):
        return "<>" + formula_text(node.arg, _UNARY)
    if isinstance(node, Box):
        return "[]" + formula_text(node.arg, _UNARY)
    if isinstance(node, At):
        return f"@{node.time} " + formula_text(node.arg, _UNARY)
    if isinstance(node, Implies):
        return f"{formula_text(node.left, _OR)} -> {formula_text(node.right, _IMP)}"
    if isinstance(node, Or):
        return f"{formula_text(node.left, _OR)} | {formula_text(node.right, _AND)}"
    if isinstance(node, And):
        return f"{formula_text(node.left, _AND)} & {formula_text(node.right, _UNARY)}"
    raise TypeError(f"not a classical formula: {node!r}")


def weighted_text(node) -> str:
    if isinstance(node, Weight):
        return format_value(node.value)
    if isinstance(node, Atom):
        return str(node)
    if isinstance(node, WeightApp):
        return f"{node.function}({node.arg})"
    if isinstance(node, Gate):
        if node.negated:
            return "~" + formula_text(node.formula, _UNARY)
        return f"({formula_text(node.formula)})"
    if isinstance(node, WAdd):
        right = weighted_text(node.right)
        if isinstance(node.right, WAdd):
            right = f"({right})"
        return f"{weighted_text(node.left)} + {right}"
    if isinstance(node, WMul):
        left = _wrap(node.left, (WAdd, Quant))
        right = _wrap(node.right, (WAdd, WMul, Quant))
        return f"{left} * {right}"
    if isinstance(node, Quant):
        return f"{node.kind}{{{node.var} in {node.domain}}} {_wrap(node.body, (WAdd,))}"
    if isinstance(node, WDiamond):
        return "<>" + _wrap(node.arg, (WAdd, WMul, Quant))
    if isinstance(node, WBox):
        return "[]" + _wrap(node.arg, (WAdd, WMul, Quant))
    raise TypeError(f"not a weighted formula: {node!r}")


def _wrap(node, kinds) -> str:
    text = weighted_text(node)
    return f"({text})" if isinstance(node, kinds) else text


def constraint_text(c: Constraint) -> str:
    return f"[{format_value(c.bound)} {c.cmp} {weighted_text(c.body)}]@{c.semiring}"


def _literal(lit) -> str:
    if isinstance(lit, Constraint):
        return constraint_text(lit)
    if isinstance(lit, Domain):
        return f"{lit.var} in {lit.domain}"
    if isinstance(lit, Not):
        return "not " + _literal(lit.arg)
    if isinstance(lit, At):
        return f"@{lit.time} {lit.arg}"
    if isinstance(lit, Diamond):
        return f"<>{lit.arg}"
    if isinstance(lit, Box):
        return f"[]{lit.arg}"
    return str(lit)


def rule_text(rule: Rule) -> str:
    head = " | ".join(_literal(h) for h in rule.head)
    if not rule.body:
        return f"{head}." if head else ":- ."
    body = ", ".join(_literal(b) for b in rule.body)
    return f"{head} :- {body}." if head else f":- {body}."


def program_text(p: Program) -> str:
    lines = []
    if p.semiring:
        lines.append(f"#semiring {p.semiring}.")
    for name, consts in p.domains.items():
        lines.append(f"#domain {name} = {{{', '.join(str(c) for c in consts)}}}.")
    for name, table in p.weights.items():
        for const, value in table.items():
            lines.append(f"#weight {name}({const}) = {value}.")
    lines.extend(rule_text(r) for r in p.rules)
    return "\n".join(lines) + "\n" if lines else ""


def to_text(node) -> str:
    """Render any AST node (program, rule, constraint, formula) as source text."""
    if isinstance(node, Program):
        return program_text(node)
    if isinstance(node, Rule):
        return rule_text(node)
    if isinstance(node, Constraint):
        return constraint_text(node)
    if isinstance(node, (Weight, WeightApp, Gate, WAdd, WMul, Quant, WDiamond, WBox)):
        return weighted_text(node)
    return formula_text(node)
