"""Semiring-weighted answer set programming on Here-and-There logic."""

from . import semiring
from .ground import check_safety, expand_quantifier, ground
from .ht import answer_sets, gl_stable_models, satisfies_ht, strongly_equivalent
from .interp import HTInterpretation, satisfies_classical
from .lang import parse_program, parse_weighted_formula, to_text
from .reason import aasc, clark_completion, is_tight, normalize, optimize, sat_value
from .stream import (
    AggMode, Stream, answer_streams, eval_weighted_stream, satisfies_stream,
    temporal_aggregate,
)
from .weighted import eval, eval_constraint, eval_constraint_ht

__version__ = "0.1.0"

__all__ = [
    "AggMode", "HTInterpretation", "Stream", "aasc", "answer_sets",
    "answer_streams", "check_safety", "clark_completion", "eval",
    "eval_constraint", "eval_constraint_ht", "eval_weighted_stream",
    "expand_quantifier", "gl_stable_models", "ground", "is_tight", "normalize",
    "optimize", "parse_program", "parse_weighted_formula", "sat_value",
    "satisfies_classical", "satisfies_ht", "satisfies_stream", "semiring",
    "strongly_equivalent", "temporal_aggregate", "to_text",
]
