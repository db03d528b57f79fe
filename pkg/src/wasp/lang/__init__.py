"""Rule-language syntax: AST node types, parser and printer."""

from .parser import (
    parse_constraint, parse_formula, parse_program, parse_rule,
    parse_weighted_formula, tokenize,
)
from .printer import to_text
from .syntax import (
    COMPARATORS, And, At, Atom, Bot, Box, Constraint, Diamond, Domain, Gate,
    Implies, Not, Or, Program, Quant, Rule, Top, Var, WAdd, WBox, WDiamond,
    WMul, Weight, WeightApp, atoms_of, conj, disj, iff, is_ground, is_temporal,
    variables_of, walk,
)

print_node = to_text

__all__ = [
    "COMPARATORS", "And", "At", "Atom", "Bot", "Box", "Constraint", "Diamond",
    "Domain", "Gate", "Implies", "Not", "Or", "Program", "Quant", "Rule", "Top",
    "Var", "WAdd", "WBox", "WDiamond", "WMul", "Weight", "WeightApp", "atoms_of",
    "conj", "disj", "iff", "is_ground", "is_temporal", "parse_constraint",
    "parse_formula", "parse_program", "parse_rule", "parse_weighted_formula",
    "print_node", "to_text", "tokenize", "variables_of", "walk",
]
