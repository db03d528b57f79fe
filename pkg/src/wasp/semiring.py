"""Semirings and the fixed catalog used throughout the engine.

Values are plain Python objects: ``bool`` for the boolean semiring, ``int``
for naturals and integers, :class:`fractions.Fraction` for every rational
carrier, and the float infinities :data:`INF` / :data:`NEG_INF` as the only
non-rational elements of the tropical and max-plus carriers.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any, Callable, Iterable

from .errors import CarrierError, OrderUnsupported, ParseError

INF = math.inf
NEG_INF = -math.inf

_NUMBER = re.compile(r"^-?\d+(?:/\d+|\.\d+)?$")


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def _is_int(x: Any) -> bool:
    return type(x) is int


def _is_rational(x: Any) -> bool:
    return type(x) is int or type(x) is Fraction


def _parse_number(text: str) -> Fraction:
    text = text.strip()
    if not _NUMBER.match(text):
        raise ParseError(f"malformed numeric literal {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def _parse_integer(text: str) -> int:
    value = _parse_number(text)
    if value.denominator != 1:
        raise CarrierError(f"{text!r} is not an integer")
    return int(value)


def _parse_bool(text: str) -> bool:
    text = text.strip()
    if text == "true":
        return True
    if text == "false":
        return False
    raise ParseError(f"malformed boolean literal {text!r}")


def _parse_extended(text: str, infinity: float) -> Fraction | float:
    stripped = text.strip()
    if stripped == "inf" and infinity > 0:
        return INF
    if stripped == "-inf" and infinity < 0:
        return NEG_INF
    if stripped in ("inf", "-inf"):
        raise CarrierError(f"{stripped!r} is outside the carrier")
    return _parse_number(stripped)


@dataclass(frozen=True)
class Semiring:
    """A commutative additive monoid and a multiplicative monoid on one carrier.

    ``plus``/``times`` are the raw operations; the checked entry points are
    :meth:`add`, :meth:`mul`, :meth:`sum` and :meth:`product`.
    """

    name: str
    carrier: str
    plus: Callable[[Any, Any], Any] = field(repr=False)
    times: Callable[[Any, Any], Any] = field(repr=False)
    zero: Any
    one: Any
    member: Callable[[Any], bool] = field(repr=False)
    reader: Callable[[str], Any] = field(repr=False)
    ordered: bool = True
    exact_division: bool = False

    def contains(self, x: Any) -> bool:
        return self.member(x)

    def check(self, x: Any) -> Any:
        if not self.member(x):
            raise CarrierError(f"{x!r} is not an element of {self.name} ({self.carrier})")
        return x

    def add(self, a: Any, b: Any) -> Any:
        return self.plus(self.check(a), self.check(b))

    def mul(self, a: Any, b: Any) -> Any:
        return self.times(self.check(a), self.check(b))

    def sum(self, values: Iterable[Any]) -> Any:
        return reduce(self.add, values, self.zero)

    def product(self, values: Iterable[Any]) -> Any:
        return reduce(self.mul, values, self.one)

    def compare(self, a: Any, b: Any) -> Ordering:
        if not self.ordered:
            raise OrderUnsupported(f"semiring {self.name} has no order")
        self.check(a)
        self.check(b)
        if a < b:
            return Ordering.LESS
        if a > b:
            return Ordering.GREATER
        return Ordering.EQUAL

    def parse(self, text: str) -> Any:
        value = self.reader(text)
        if not self.member(value):
            raise CarrierError(f"{text.strip()!r} is outside the carrier of {self.name}")
        return value

    def __str__(self) -> str:
        return self.name


def _nat_member(x):
    return _is_int(x) and x >= 0


def _rat_member(x):
    return _is_rational(x)


def _trop_member(x):
    return x == INF if type(x) is float else (_is_rational(x) and x >= 0)


def _maxplus_member(x):
    return x == NEG_INF if type(x) is float else _is_rational(x)


def _fuzzy_member(x):
    return _is_rational(x) and 0 <= x <= 1


BOOL = Semiring(
    "bool", "{false, true}",
    plus=lambda a, b: a or b, times=lambda a, b: a and b,
    zero=False, one=True,
    member=lambda x: type(x) is bool, reader=_parse_bool, ordered=False,
)
NAT = Semiring(
    "nat", "natural numbers",
    plus=lambda a, b: a + b, times=lambda a, b: a * b,
    zero=0, one=1, member=_nat_member, reader=_parse_integer,
)
INT = Semiring(
    "int", "integers",
    plus=lambda a, b: a + b, times=lambda a, b: a * b,
    zero=0, one=1, member=_is_int, reader=_parse_integer,
)
RAT = Semiring(
    "rat", "rational numbers",
    plus=lambda a, b: a + b, times=lambda a, b: a * b,
    zero=Fraction(0), one=Fraction(1), member=_rat_member, reader=_parse_number,
    exact_division=True,
)
TROP = Semiring(
    "trop", "nonnegative rationals with +inf",
    plus=min, times=lambda a, b: a + b,
    zero=INF, one=Fraction(0), member=_trop_member,
    reader=lambda t: _parse_extended(t, INF),
)
MAXPLUS = Semiring(
    "maxplus", "rationals with -inf",
    plus=max, times=lambda a, b: a + b,
    zero=NEG_INF, one=Fraction(0), member=_maxplus_member,
    reader=lambda t: _parse_extended(t, NEG_INF),
)
FUZZY = Semiring(
    "fuzzy", "rationals in [0, 1]",
    plus=max, times=lambda a, b: a * b,
    zero=Fraction(0), one=Fraction(1), member=_fuzzy_member, reader=_parse_number,
)

CATALOG: dict[str, Semiring] = {
    s.name: s for s in (NAT, INT, RAT, TROP, MAXPLUS, BOOL, FUZZY)
}


def get(name: str | Semiring) -> Semiring:
    """Look up a catalog semiring by identifier."""
    if isinstance(name, Semiring):
        return name
    try:
        return CATALOG[name]
    except KeyError:
        raise ParseError(
            f"unknown semiring {name!r} (expected one of {', '.join(CATALOG)})"
        ) from None


def add(s: Semiring, a, b):
    return s.add(a, b)


def mul(s: Semiring, a, b):
    return s.mul(a, b)


def big_add(s: Semiring, values: Iterable) -> Any:
    return s.sum(values)


def big_mul(s: Semiring, values: Iterable) -> Any:
    return s.product(values)


def compare(s: Semiring, a, b) -> Ordering:
    return s.compare(a, b)


def parse_value(s: Semiring, text: str):
    return s.parse(text)


def format_value(value) -> str:
    """Canonical text of a semiring value; rationals print as ``p/q`` in lowest terms."""
    if type(value) is bool:
        return "true" if value else "false"
    if type(value) is float:
        if value == INF:
            return "inf"
        if value == NEG_INF:
            return "-inf"
        raise CarrierError(f"floating-point value {value!r} is not supported")
    return str(value)
