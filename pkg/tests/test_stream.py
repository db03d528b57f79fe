import random

import pytest
from hypothesis import given, strategies as st

from wasp.errors import GroundingError, ParseError, TimeRangeError
from wasp.ht import answer_sets
from wasp.interp import satisfies_classical
from wasp.lang import parse_formula, parse_program, parse_weighted_formula
from wasp.lang.syntax import And, At, Atom, Box, Diamond, Implies, Not, Or, WBox, WDiamond, WMul, Weight
from wasp.stream import (
    AggMode, Stream, aggregate_query, answer_streams, eval_weighted_stream,
    format_stream, parse_stream, satisfies_stream, satisfies_stream_ht, temporal_aggregate,
)
from wasp.weighted import eval

from oracles import random_normal_rules, to_program

p, q = Atom("p"), Atom("q")


def P(x):
    return Atom("p", (x,))


def test_diamond_box_at():
    s = Stream(1, ({p}, set()))
    assert satisfies_stream(s, 1, Diamond(p))
    assert not satisfies_stream(s, 0, Box(p))
    for t in s.times:
        assert satisfies_stream(s, t, At(0, p))


def test_time_range_checks():
    s = Stream(1, ({p}, set()))
    with pytest.raises(TimeRangeError):
        satisfies_stream(s, 2, p)
    with pytest.raises(TimeRangeError):
        satisfies_stream(s, 0, At(5, p))


def test_weighted_temporal_examples():
    s = Stream(1, ({p}, {p}))
    assert eval_weighted_stream(s, 0, WDiamond(WMul(Weight(1), p)), "nat") == 2
    assert eval_weighted_stream(s, 0, parse_weighted_formula("<>(true*p)", "bool"), "bool") is True
    assert eval_weighted_stream(s, 0, WBox(Weight(2)), "nat") == 4


AGG_STREAM = Stream(2, ({P(1)}, {P(1), P(2)}, set()))


@pytest.mark.parametrize("mode,expected", [(AggMode.NOW, 3), (AggMode.DISTINCT, 3), (AggMode.MULTIPLICITY, 4)])
def test_aggregation_modes(mode, expected):
    assert temporal_aggregate(AGG_STREAM, 1, "p", (1, 2), lambda x: x, mode, "nat") == expected


def test_aggregate_query_uses_weight_function():
    prog = parse_program("#domain d = {1, 2}.\n#weight w(1) = 1.\n#weight w(2) = 2.")
    query = parse_weighted_formula("sum{X in d} w(X) * p(X)", "nat", weights=prog.weights, domains=prog.domains)
    got = [aggregate_query(AGG_STREAM, 1, query, m, "nat", prog) for m in AggMode]
    assert got == [3, 3, 4]


def test_unknown_constant_in_valuation():
    s = Stream(0, ({P(7)},))
    with pytest.raises(GroundingError):
        temporal_aggregate(s, 0, "p", (1, 2), lambda x: x, AggMode.NOW, "nat")


def test_answer_stream_examples():
    found = answer_streams(parse_program("p :- not q."), 1)
    assert found == [Stream(1, ({p}, {p}))]
    assert answer_streams(parse_program(""), 1) == [Stream(1, (set(), set()))]
    assert answer_streams(parse_program("p :- <>p."), 1) == [Stream(1, (set(), set()))]


def test_answer_streams_with_temporal_default():
    # p is derived at every point unless q holds somewhere; q is never derived
    assert answer_streams(parse_program("p :- not <>q."), 1) == [Stream(1, ({p}, {p}))]


def test_stream_file_format():
    s = parse_stream("0: p(1)\n1: p(1), p(2)\n% no line for 2\n", horizon=2)
    assert s == AGG_STREAM
    assert parse_stream(format_stream(s)) == s
    with pytest.raises(ParseError):
        parse_stream("zero: p\n")
    with pytest.raises(TimeRangeError):
        parse_stream("3: p\n", horizon=1)


# -- properties ------------------------------------------------------------

ATOMS = [p, q, Atom("r")]
vals = st.sets(st.sampled_from(ATOMS)).map(frozenset)
streams = st.integers(0, 3).flatmap(lambda n: st.lists(vals, min_size=n + 1, max_size=n + 1).map(
    lambda vs: Stream(len(vs) - 1, tuple(vs))))
plain = st.recursive(
    st.sampled_from(ATOMS),
    lambda sub: st.builds(Not, sub) | st.builds(And, sub, sub) | st.builds(Or, sub, sub)
    | st.builds(Implies, sub, sub),
    max_leaves=6,
)
temporal = st.recursive(
    st.sampled_from(ATOMS),
    lambda sub: st.builds(Not, sub) | st.builds(And, sub, sub) | st.builds(Or, sub, sub)
    | st.builds(Implies, sub, sub) | st.builds(Diamond, sub) | st.builds(Box, sub)
    | st.builds(At, st.just(0), sub),
    max_leaves=6,
)


def test_ordering_of_modes_on_random_streams():
    rng = random.Random(9)
    for _ in range(300):
        n, d = rng.randint(0, 4), list(range(1, rng.randint(1, 5) + 1))
        s = Stream(n, tuple({P(x) for x in d if rng.random() < 0.5} for _ in range(n + 1)))
        weights = {x: rng.randint(0, 9) for x in d}
        t = rng.randint(0, n)
        now, distinct, multi = (temporal_aggregate(s, t, "p", d, weights, m, "nat") for m in AggMode)
        assert now <= distinct <= multi


@given(vals, plain)
def test_horizon_zero_is_a_single_interpretation(i, f):
    s = Stream(0, (i,))
    assert satisfies_stream(s, 0, f) == satisfies_classical(i, f)
    alpha = parse_weighted_formula("2*p + 3*~q * r", "nat")
    assert eval_weighted_stream(s, 0, alpha, "nat") == eval(alpha, i, "nat")


@given(vals, plain)
def test_horizon_zero_diamond_is_identity(i, f):
    s = Stream(0, (i,))
    assert satisfies_stream(s, 0, Diamond(f)) == satisfies_stream(s, 0, Box(f)) == satisfies_classical(i, f)


def test_horizon_zero_answer_streams_match_answer_sets():
    rng = random.Random(3)
    for _ in range(40):
        prog = to_program(random_normal_rules(rng, 3, 3))
        got = [found.valuation[0] for found in answer_streams(prog, 0)]
        assert got == answer_sets(prog)


@given(streams, st.sampled_from(ATOMS))
def test_weighted_diamond_collapses_over_bool(s, a):
    for t in s.times:
        got = eval_weighted_stream(s, t, WDiamond(WMul(Weight(True), a)), "bool")
        assert got == satisfies_stream(s, t, Diamond(a))


@given(streams, streams, temporal)
def test_ht_persistence_on_streams(s1, s2, f):
    n = min(s1.horizon, s2.horizon)
    here = Stream(n, s1.valuation[: n + 1])
    there = Stream(n, tuple(h | v for h, v in zip(here.valuation, s2.valuation)))
    for t in here.times:
        if satisfies_stream_ht(here, there, t, f, "here"):
            assert satisfies_stream_ht(here, there, t, f, "there")
        assert satisfies_stream_ht(here, there, t, f, "there") == satisfies_stream(there, t, f)


def test_formula_text_for_streams():
    s = Stream(1, ({p}, set()))
    assert satisfies_stream(s, 1, parse_formula("<>p & ~[]p & @0 p"))
