"""Context programs for checking strong-equivalence verdicts.

A counterexample ``<H, T>`` is separated by at most two rules: one asserting
``H`` and one saying "all of ``T \\ H`` as soon as any of it holds". Both are
expressible as algebraic constraints over the naturals, so the exhaustive
family below contains them alongside plain facts and ``a :- b`` rules.
"""

from __future__ import annotations

import itertools
import random

from wasp.ht import answer_sets, strongly_equivalent, universe_of
from wasp.lang import parse_program
from wasp.lang.syntax import Program

from oracles import random_normal_rules, to_program


def _count(atoms) -> str:
    return " + ".join(f"1*{a}" for a in atoms)


def context_rules(atoms) -> list[str]:
    atoms = sorted(map(str, atoms))
    rules = [f"{a}." for a in atoms]
    rules += [f"{a} :- {b}." for a, b in itertools.permutations(atoms, 2)]
    for r in range(1, len(atoms) + 1):
        for s in itertools.combinations(atoms, r):
            n = len(s)
            rules.append(f"[{n} <= {_count(s)}]@nat.")
            rules.append(f"[{n} <= {_count(s)}]@nat :- [1 <= {_count(s)}]@nat.")
    return rules


def small_contexts(atoms, max_rules: int = 2):
    family = context_rules(atoms)
    yield ""
    for k in range(1, max_rules + 1):
        for combo in itertools.combinations(family, k):
            yield "\n".join(combo)


def find_separating_context(p1: Program, p2: Program, atoms) -> str | None:
    for text in small_contexts(atoms):
        c = parse_program(text)
        if answer_sets(p1 + c) != answer_sets(p2 + c):
            return text
    return None


def random_context(rng: random.Random, atoms) -> Program:
    names = sorted(map(str, atoms))
    n = len(names)
    rules = [
        (head, pos, neg) for head, pos, neg in random_normal_rules(rng, n, rng.randint(0, 3))
    ]
    renamed = [
        (tuple(names[int(a[1:])] for a in head), tuple(names[int(a[1:])] for a in pos),
         tuple(names[int(a[1:])] for a in neg))
        for head, pos, neg in rules
    ]
    p = to_program(renamed)
    if rng.random() < 0.3:
        s = rng.sample(names, rng.randint(1, n))
        p = p + parse_program(f"[{len(s)} <= {_count(s)}]@nat :- [1 <= {_count(s)}]@nat.")
    if rng.random() < 0.2:
        p = p + parse_program(" | ".join(rng.sample(names, min(2, n))) + ".")
    return p


# -- program pairs -----------------------------------------------------------


def _variant(rng: random.Random, rules):
    """A rewrite of ``rules`` that keeps its HT-models."""
    out = list(rules)
    rng.shuffle(out)
    names = sorted({a for r in rules for part in r for a in part}) or ["a0"]
    for _ in range(rng.randint(0, 2)):
        a = rng.choice(names)
        kind = rng.randrange(3)
        if kind == 0:
            out.append(((a,), (a,), ()))  # a :- a.
        elif kind == 1:
            b = rng.choice(names)
            out.append(((a,), (b,), (b,)))  # a :- b, not b.
        elif out:
            head, pos, neg = rng.choice(out)
            out.append((head, tuple(sorted(set(pos) | {a})), neg))  # subsumed
    return out


def program_pairs(rng: random.Random, count: int, max_atoms: int = 4):
    """Pairs (p1, p2, universe); roughly half are rewrites of each other."""
    for _ in range(count):
        n = rng.randint(1, max_atoms)
        r1 = random_normal_rules(rng, n, rng.randint(1, 3))
        r2 = _variant(rng, r1) if rng.random() < 0.5 else random_normal_rules(rng, n, rng.randint(1, 3))
        p1, p2 = to_program(r1), to_program(r2)
        yield p1, p2, universe_of(p1, p2)


def check_verdict(p1, p2, atoms, rng: random.Random, n_contexts: int = 200) -> tuple[bool, str]:
    """Soundness of one verdict; returns (ok, kind)."""
    verdict = strongly_equivalent(p1, p2, atoms)
    if verdict.equal:
        for _ in range(n_contexts):
            c = random_context(rng, atoms)
            if answer_sets(p1 + c) != answer_sets(p2 + c):
                return False, "equal"
        return True, "equal"
    return find_separating_context(p1, p2, atoms) is not None, "counterexample"
