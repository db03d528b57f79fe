import itertools
import random
import zlib
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wasp import semiring as sr
from wasp.errors import CarrierError, OrderUnsupported, ParseError
from wasp.semiring import INF, NEG_INF, Ordering


def sample(s, rng: random.Random):
    """Random carrier element, with the special elements drawn often."""
    name = s.name
    if name == "bool":
        return rng.random() < 0.5
    if name == "nat":
        return rng.choice([0, 1, rng.randint(0, 50), rng.randint(0, 10**12)])
    if name == "int":
        return rng.choice([0, 1, -1, rng.randint(-50, 50), rng.randint(-10**12, 10**12)])
    frac = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
    if name == "rat":
        return rng.choice([Fraction(0), Fraction(1), frac])
    if name == "trop":
        return rng.choice([INF, Fraction(0), abs(frac)])
    if name == "maxplus":
        return rng.choice([NEG_INF, Fraction(0), frac])
    if name == "fuzzy":
        d = rng.randint(1, 12)
        return rng.choice([Fraction(0), Fraction(1), Fraction(rng.randint(0, d), d)])
    raise AssertionError(name)


def axiom_failures(s, trials: int, seed: int) -> list:
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        a, b, c = (sample(s, rng) for _ in range(3))
        checks = {
            "add-comm": s.add(a, b) == s.add(b, a),
            "add-assoc": s.add(s.add(a, b), c) == s.add(a, s.add(b, c)),
            "mul-assoc": s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)),
            "left-dist": s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c)),
            "right-dist": s.mul(s.add(a, b), c) == s.add(s.mul(a, c), s.mul(b, c)),
            "add-unit": s.add(a, s.zero) == a == s.add(s.zero, a),
            "mul-unit": s.mul(a, s.one) == a == s.mul(s.one, a),
            "annihilate": s.mul(a, s.zero) == s.zero == s.mul(s.zero, a),
            "closed": s.contains(s.add(a, b)) and s.contains(s.mul(a, b)),
        }
        bad.extend((k, a, b, c) for k, ok in checks.items() if not ok)
    return bad


@pytest.mark.parametrize("name", list(sr.CATALOG))
def test_axioms_hold_on_random_triples(name):
    assert axiom_failures(sr.get(name), 10_000, seed=zlib.crc32(name.encode())) == []


@pytest.mark.parametrize("name", list(sr.CATALOG))
def test_big_add_is_order_independent(name):
    s = sr.get(name)
    rng = random.Random(7)
    values = [sample(s, rng) for _ in range(6)]
    expected = s.add(s.add(s.add(s.add(s.add(values[0], values[1]), values[2]), values[3]), values[4]), values[5])
    for perm in itertools.permutations(values):
        assert sr.big_add(s, perm) == expected


@pytest.mark.parametrize("name", [n for n in sr.CATALOG if n != "bool"])
def test_order_is_total_and_consistent(name):
    s = sr.get(name)
    rng = random.Random(3)
    flip = {Ordering.LESS: Ordering.GREATER, Ordering.GREATER: Ordering.LESS, Ordering.EQUAL: Ordering.EQUAL}
    for _ in range(500):
        a, b = sample(s, rng), sample(s, rng)
        assert s.compare(a, b) is flip[s.compare(b, a)]
        assert (s.compare(a, b) is Ordering.EQUAL) == (a == b)


def test_tropical_examples():
    t = sr.TROP
    assert sr.add(t, 3, 5) == 3
    assert sr.mul(t, 3, 5) == 8
    assert sr.mul(t, INF, 5) == INF
    assert sr.big_add(t, [7, 2, 9]) == 2
    assert sr.compare(t, INF, 5) is Ordering.GREATER


def test_rational_examples():
    assert sr.add(sr.RAT, 15, 20) == 35
    assert sr.mul(sr.RAT, 15, 0) == 0
    assert sr.compare(sr.RAT, 20, 30) is Ordering.LESS


def test_folds():
    assert sr.big_add(sr.NAT, [2, 3]) == 5
    for s in sr.CATALOG.values():
        assert sr.big_add(s, []) == s.zero
        assert sr.big_mul(s, []) == s.one


def test_bool_has_no_order():
    with pytest.raises(OrderUnsupported):
        sr.compare(sr.BOOL, True, False)


def test_carrier_mismatch_is_typed():
    with pytest.raises(CarrierError):
        sr.add(sr.NAT, -1, 2)
    with pytest.raises(CarrierError):
        sr.mul(sr.FUZZY, Fraction(3, 2), 1)
    with pytest.raises(CarrierError):
        sr.add(sr.INT, Fraction(1, 2), 1)
    with pytest.raises(TypeError):
        sr.add(sr.NAT, 1.5, 1)


@pytest.mark.parametrize("name,text,value", [
    ("nat", "15", 15),
    ("trop", "inf", INF),
    ("maxplus", "-inf", NEG_INF),
    ("rat", "3/7", Fraction(3, 7)),
    ("rat", "6/14", Fraction(3, 7)),
    ("rat", "0.25", Fraction(1, 4)),
    ("bool", "true", True),
    ("fuzzy", "1/2", Fraction(1, 2)),
    ("int", "-4", -4),
])
def test_parse_value(name, text, value):
    got = sr.parse_value(sr.get(name), text)
    assert got == value


@pytest.mark.parametrize("name,text", [
    ("fuzzy", "3/2"), ("nat", "-1"), ("nat", "1/2"), ("trop", "-inf"), ("bool", "1"), ("rat", "abc"),
    ("rat", "1/0"),
])
def test_parse_value_rejects(name, text):
    with pytest.raises((CarrierError, ParseError)):
        sr.parse_value(sr.get(name), text)


def test_unknown_semiring_name():
    with pytest.raises(ParseError):
        sr.get("reals")


@given(st.fractions())
def test_rationals_roundtrip_through_text(x):
    assert sr.parse_value(sr.RAT, sr.format_value(x)) == x


def test_format_value_canonical():
    assert sr.format_value(Fraction(6, 4)) == "3/2"
    assert sr.format_value(Fraction(4, 2)) == "2"
    assert sr.format_value(INF) == "inf"
    assert sr.format_value(NEG_INF) == "-inf"
    assert sr.format_value(False) == "false"
