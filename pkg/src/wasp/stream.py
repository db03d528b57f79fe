"""Finite-timeline streams, temporal operators and brute-force answer streams.

A stream assigns an interpretation to every time point ``0..horizon``.
``<>`` and ``[]`` range over the whole timeline, ``@t`` looks at one point.
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from . import semiring as sr
from .errors import CapacityError, FragmentError, GroundingError, NonGroundError, ParseError, TimeRangeError
from .ground import ground_weighted, substitute
from .ht import max_atoms, universe_of
from .interp import canonical_key, sort_atoms
from .lang.parser import Parser
from .lang.syntax import (
    And, At, Atom, Bot, Box, Constraint, Diamond, Gate, Implies, Not, Or,
    Program, Quant, Rule, Top, WAdd, WBox, WDiamond, WMul, Weight,
    is_ground,
)
from .weighted import compare_bound

DEFAULT_STREAM_CAPACITY = 16


class AggMode(enum.Enum):
    NOW = "now"
    DISTINCT = "distinct"
    MULTIPLICITY = "multi"


@dataclass(frozen=True)
class Stream:
    horizon: int
    valuation: tuple  # one frozenset of atoms per time point

    def __post_init__(self):
        vals = tuple(frozenset(v) for v in self.valuation)
        if len(vals) != self.horizon + 1:
            raise ValueError(f"stream of horizon {self.horizon} needs {self.horizon + 1} time points")
        object.__setattr__(self, "valuation", vals)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Iterable[Atom]], horizon: int | None = None) -> "Stream":
        if horizon is None:
            horizon = max(mapping, default=0)
        if any(t < 0 or t > horizon for t in mapping):
            raise TimeRangeError(f"time points must lie in 0..{horizon}")
        return cls(horizon, tuple(frozenset(mapping.get(t, ())) for t in range(horizon + 1)))

    @property
    def times(self) -> range:
        return range(self.horizon + 1)

    def at(self, t: int) -> frozenset:
        _check_time(self, t)
        return self.valuation[t]

    def __str__(self) -> str:
        return format_stream(self)


def _check_time(s, t):
    if not 0 <= t <= s.horizon:
        raise TimeRangeError(f"time point {t} outside 0..{s.horizon}")


def parse_stream(text: str, horizon: int | None = None) -> Stream:
    """Read ``t: atom, atom`` lines; unlisted time points are empty."""
    mapping: dict[int, set] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("%", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"(\d+)\s*:(.*)", line)
        if m is None:
            raise ParseError("expected 't: atom, atom, ...'", lineno, 1)
        t = int(m.group(1))
        atoms = mapping.setdefault(t, set())
        rest = m.group(2).strip()
        if rest:
            p = Parser(rest)
            try:
                atoms.add(p.atom())
                while p.at(","):
                    p.next()
                    atoms.add(p.atom())
                p.done()
            except ParseError as e:
                raise ParseError(f"line {lineno}: {e}") from None
            if any(not a.is_ground() for a in atoms):
                raise ParseError("stream atoms must be ground", lineno, 1)
    if horizon is not None and mapping and max(mapping) > horizon:
        raise TimeRangeError(f"time point {max(mapping)} beyond horizon {horizon}")
    return Stream.from_mapping(mapping, horizon)


def format_stream(s: Stream) -> str:
    lines = [f"{t}: " + ", ".join(map(str, sort_atoms(s.valuation[t]))) for t in s.times]
    return "\n".join(line.rstrip() for line in lines) + "\n"


# -- evaluation over an abstract lookup -------------------------------------

Lookup = Callable[[Atom, int], bool]


def _holds(f, t: int, look: Lookup, horizon: int) -> bool:
    if isinstance(f, Atom):
        if not f.is_ground():
            raise NonGroundError(f"atom {f} is not ground")
        return look(f, t)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not _holds(f.arg, t, look, horizon)
    if isinstance(f, And):
        return _holds(f.left, t, look, horizon) and _holds(f.right, t, look, horizon)
    if isinstance(f, Or):
        return _holds(f.left, t, look, horizon) or _holds(f.right, t, look, horizon)
    if isinstance(f, Implies):
        return not _holds(f.left, t, look, horizon) or _holds(f.right, t, look, horizon)
    if isinstance(f, Diamond):
        return any(_holds(f.arg, u, look, horizon) for u in range(horizon + 1))
    if isinstance(f, Box):
        return all(_holds(f.arg, u, look, horizon) for u in range(horizon + 1))
    if isinstance(f, At):
        if not 0 <= f.time <= horizon:
            raise TimeRangeError(f"@{f.time} outside 0..{horizon}")
        return _holds(f.arg, f.time, look, horizon)
    if isinstance(f, Constraint):
        return compare_bound(f, _value(f.body, t, look, horizon, sr.get(f.semiring)))
    if isinstance(f, Rule):
        if not all(_holds(b, t, look, horizon) for b in f.body):
            return True
        return any(_holds(h, t, look, horizon) for h in f.head)
    raise NonGroundError(f"cannot evaluate {f!r}; ground it first")


def _value(alpha, t: int, look: Lookup, horizon: int, s):
    if isinstance(alpha, Weight):
        return s.check(alpha.value)
    if isinstance(alpha, Atom):
        return s.one if _holds(alpha, t, look, horizon) else s.zero
    if isinstance(alpha, Gate):
        return s.one if _holds(alpha.formula, t, look, horizon) != alpha.negated else s.zero
    if isinstance(alpha, WAdd):
        return s.add(_value(alpha.left, t, look, horizon, s), _value(alpha.right, t, look, horizon, s))
    if isinstance(alpha, WMul):
        return s.mul(_value(alpha.left, t, look, horizon, s), _value(alpha.right, t, look, horizon, s))
    if isinstance(alpha, WDiamond):
        return s.sum(_value(alpha.arg, u, look, horizon, s) for u in range(horizon + 1))
    if isinstance(alpha, WBox):
        return s.product(_value(alpha.arg, u, look, horizon, s) for u in range(horizon + 1))
    raise NonGroundError("weighted formula must be ground (expand quantifiers first)")


def _holds_here(f, t: int, here: Lookup, there: Lookup, horizon: int) -> bool:
    """Here-world satisfaction of the pointwise HT lifting."""
    if isinstance(f, Atom):
        return _holds(f, t, here, horizon)
    if isinstance(f, (Top, Bot)):
        return isinstance(f, Top)
    if isinstance(f, Not):
        return not _holds(f.arg, t, there, horizon)
    if isinstance(f, And):
        return _holds_here(f.left, t, here, there, horizon) and _holds_here(f.right, t, here, there, horizon)
    if isinstance(f, Or):
        return _holds_here(f.left, t, here, there, horizon) or _holds_here(f.right, t, here, there, horizon)
    if isinstance(f, Implies):
        local = (not _holds_here(f.left, t, here, there, horizon)
                 or _holds_here(f.right, t, here, there, horizon))
        return local and _holds(f, t, there, horizon)
    if isinstance(f, Diamond):
        return any(_holds_here(f.arg, u, here, there, horizon) for u in range(horizon + 1))
    if isinstance(f, Box):
        return all(_holds_here(f.arg, u, here, there, horizon) for u in range(horizon + 1))
    if isinstance(f, At):
        if not 0 <= f.time <= horizon:
            raise TimeRangeError(f"@{f.time} outside 0..{horizon}")
        return _holds_here(f.arg, f.time, here, there, horizon)
    if isinstance(f, Constraint):
        return _holds(f, t, here, horizon) and _holds(f, t, there, horizon)
    if isinstance(f, Rule):
        body = all(_holds_here(b, t, here, there, horizon) for b in f.body)
        local = not body or any(_holds_here(h, t, here, there, horizon) for h in f.head)
        return local and _holds(f, t, there, horizon)
    raise NonGroundError(f"cannot evaluate {f!r}; ground it first")


def _stream_lookup(s: Stream) -> Lookup:
    return lambda a, t: a in s.valuation[t]


def satisfies_stream(s: Stream, t: int, f) -> bool:
    _check_time(s, t)
    return _holds(f, t, _stream_lookup(s), s.horizon)


def satisfies_stream_ht(here: Stream, there: Stream, t: int, f, world: str = "here") -> bool:
    """Pointwise HT satisfaction for a pair of streams with ``here`` below ``there``."""
    if here.horizon != there.horizon or any(h - th for h, th in zip(here.valuation, there.valuation)):
        raise ValueError("here-stream must be pointwise contained in there-stream")
    _check_time(there, t)
    if world == "there":
        return satisfies_stream(there, t, f)
    return _holds_here(f, t, _stream_lookup(here), _stream_lookup(there), here.horizon)


def eval_weighted_stream(s: Stream, t: int, alpha, r):
    """Value of a weighted temporal formula at time ``t``; ``<>`` sums and ``[]`` multiplies over time."""
    _check_time(s, t)
    r = sr.get(r)
    return _value(ground_weighted(alpha, r), t, _stream_lookup(s), s.horizon, r)


# -- temporal aggregation ----------------------------------------------------


def temporal_aggregate(s: Stream, t: int, predicate: str, domain: Iterable, weight,
                       mode: AggMode | str, r):
    """Sum of ``weight(x)`` over the ``x`` in ``domain`` for which ``predicate(x)`` holds.

    NOW counts ``x`` when it holds at ``t``; DISTINCT counts it once if it holds
    at any time point; MULTIPLICITY counts it once per time point where it holds.
    """
    _check_time(s, t)
    r = sr.get(r)
    mode = AggMode(mode) if not isinstance(mode, AggMode) else mode
    domain = tuple(domain)
    w = weight if callable(weight) else weight.__getitem__
    allowed = set(domain)
    for u in s.times:
        for a in s.valuation[u]:
            if a.predicate == predicate and (a.arity != 1 or a.args[0] not in allowed):
                raise GroundingError(f"{a} at time {u} is outside the aggregation domain")

    def holds(x, u):
        return Atom(predicate, (x,)) in s.valuation[u]

    if mode is AggMode.NOW:
        terms = [w(x) for x in domain if holds(x, t)]
    elif mode is AggMode.DISTINCT:
        terms = [w(x) for x in domain if any(holds(x, u) for u in s.times)]
    else:
        terms = [w(x) for x in domain for u in s.times if holds(x, u)]
    return r.sum(terms)


def _factors(node):
    if isinstance(node, WMul):
        return _factors(node.left) + _factors(node.right)
    return [node]


def aggregate_query(s: Stream, t: int, query: Quant, mode, r, program: Program | None = None):
    """Temporal aggregation for a query ``sum{X in D} w(X) * p(X)``.

    The body must be a product with exactly one factor ``p(X)``; the remaining
    factors form the weight of ``X``. With no other factor every ``X`` weighs one.
    """
    r = sr.get(r)
    if not isinstance(query, Quant) or query.kind != "sum":
        raise FragmentError("temporal aggregation expects a sum{X in D} ... query")
    domains = dict(program.domains) if program else {}
    if query.domain not in domains:
        raise GroundingError(f"undeclared domain {query.domain}")
    factors = _factors(query.body)
    gates = [f for f in factors if isinstance(f, Atom) and f.args == (query.var,)]
    if len(gates) != 1:
        raise FragmentError("aggregation body needs exactly one gate atom p(X)")
    rest = [f for f in factors if f is not gates[0]]

    def weight(x):
        value = r.one
        for f in rest:
            g = ground_weighted(substitute(f, {query.var: x}), r, program=program)
            value = r.mul(value, _value(g, t, lambda a, u: False, s.horizon, r))
        return value

    return temporal_aggregate(s, t, gates[0].predicate, domains[query.domain], weight, mode, r)


# -- answer streams ------------------------------------------------------------


def answer_streams(p: Program, horizon: int, *, capacity: int | None = None) -> list[Stream]:
    """Brute-force equilibrium streams of a ground program whose rules apply at every time point.

    A stream ``S`` qualifies if ``<S, S>`` satisfies every rule at every time
    point and no pointwise-smaller ``S'`` (strictly smaller somewhere) has
    ``<S', S>`` satisfying them all.
    """
    if not is_ground(p):
        raise NonGroundError("program must be ground")
    atoms = universe_of(p)
    k = len(atoms)
    bits = k * (horizon + 1)
    if capacity is not None:
        cap = capacity
    else:
        cap = max_atoms() if "WASP_MAX_ATOMS" in os.environ else DEFAULT_STREAM_CAPACITY
    if bits > cap:
        raise CapacityError(f"{bits} atom/time pairs exceed the stream capacity of {cap}")
    index = {a: j for j, a in enumerate(atoms)}

    def lookup(mask):
        return lambda a, t: bool(mask >> (t * k + index[a]) & 1) if a in index else False

    times = range(horizon + 1)

    def is_model(m):
        look = lookup(m)
        return all(_holds(r, t, look, horizon) for r in p.rules for t in times)

    def here_ok(h, m):
        hl, ml = lookup(h), lookup(m)
        return all(_holds_here(r, t, hl, ml, horizon) for r in p.rules for t in times)

    found = []
    for m in range(1 << bits):
        if not is_model(m):
            continue
        h = (m - 1) & m
        minimal = True
        while m:
            if here_ok(h, m):
                minimal = False
                break
            if h == 0:
                break
            h = (h - 1) & m
        if minimal:
            found.append(m)

    def decode(m):
        return Stream(horizon, tuple(
            frozenset(a for a in atoms if m >> (t * k + index[a]) & 1) for t in times
        ))

    streams = [decode(m) for m in found]
    streams.sort(key=lambda s: tuple(canonical_key(v) for v in s.valuation))
    return streams
