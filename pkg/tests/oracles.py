"""Independent reference implementations used to check the engine.

Nothing here imports the engine's search code; programs are plain tuples
``(head_atoms, pos, neg)`` over atom names, and every check is a direct
transcription of a textbook definition.
"""

from __future__ import annotations

import itertools
import random

from wasp.lang.syntax import Atom, Not, Program, Rule


def subsets(atoms):
    atoms = sorted(atoms, key=str)
    for r in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, r):
            yield frozenset(combo)


def universe(rules, extra=()):
    out = set(extra)
    for head, pos, neg in rules:
        out |= set(head) | set(pos) | set(neg)
    return out


def reduct_stable_models(rules, extra=()):
    """Gelfond-Lifschitz: M is stable iff M is the least model of the reduct P^M."""
    found = []
    for m in subsets(universe(rules, extra)):
        reduct = [(head, pos) for head, pos, neg in rules if not set(neg) & m]
        least, grew = set(), True
        while grew:
            grew = False
            for head, pos in reduct:
                if set(pos) <= least and head and not set(head) <= least:
                    least |= set(head)
                    grew = True
        violated = any(not head and set(pos) <= least for head, pos in reduct)
        if least == m and not violated:
            found.append(m)
    return sorted(found, key=lambda s: sorted(s))


def rule_holds_here(rule, h, t):
    """HT satisfaction of ``head <- pos, not neg`` at the here world, by definition."""
    head, pos, neg = rule
    body_here = set(pos) <= h and not set(neg) & t
    body_there = set(pos) <= t and not set(neg) & t
    here_ok = not body_here or bool(set(head) & h)
    there_ok = not body_there or bool(set(head) & t)
    return here_ok and there_ok


def ht_models(rules, atoms):
    return {
        (h, t)
        for t in subsets(atoms)
        for h in subsets(t)
        if all(rule_holds_here(r, h, t) for r in rules)
    }


def equilibrium_models(rules, atoms):
    models = ht_models(rules, atoms)
    return sorted(
        (t for h, t in models if h == t and not any((hh, t) in models for hh in subsets(t) if hh != t)),
        key=lambda s: sorted(s),
    )


def classical_models_of_completion(rules, atoms):
    """Truth-table models of the Clark completion, written out directly."""
    out = []
    for m in subsets(atoms):
        ok = True
        for a in atoms:
            supported = any(
                a in head and set(pos) <= m and not set(neg) & m for head, pos, neg in rules
            )
            if (a in m) != supported:
                ok = False
        for head, pos, neg in rules:
            if not head and set(pos) <= m and not set(neg) & m:
                ok = False
        if ok:
            out.append(m)
    return sorted(out, key=lambda s: sorted(s))


def positively_acyclic(rules):
    edges = {}
    for head, pos, _ in rules:
        for h in head:
            edges.setdefault(h, set()).update(pos)
    state = {}

    def visit(v):
        if state.get(v) == 1:
            return False
        if state.get(v) == 2:
            return True
        state[v] = 1
        ok = all(visit(w) for w in edges.get(v, ()))
        state[v] = 2
        return ok

    return all(visit(v) for v in list(edges))


# -- random programs -------------------------------------------------------


def random_normal_rules(rng: random.Random, n_atoms: int, n_rules: int, *, constraints=True):
    names = [f"a{k}" for k in range(n_atoms)]
    rules = []
    for _ in range(n_rules):
        head = () if constraints and rng.random() < 0.1 else (rng.choice(names),)
        pos = tuple(sorted(set(rng.sample(names, rng.randint(0, min(2, n_atoms))))))
        neg = tuple(sorted(set(rng.sample(names, rng.randint(0, min(2, n_atoms))))))
        rules.append((head, pos, neg))
    return rules


def random_tight_rules(rng: random.Random, n_atoms: int, n_rules: int):
    """Positive edges only go from higher to lower atom index, so the program is tight."""
    names = [f"a{k}" for k in range(n_atoms)]
    rules = []
    for _ in range(n_rules):
        k = rng.randrange(n_atoms)
        if rng.random() < 0.1:
            head, lower = (), names
        else:
            head, lower = (names[k],), names[:k]
        pos = tuple(sorted(set(rng.sample(lower, rng.randint(0, min(2, len(lower)))))))
        neg = tuple(sorted(set(rng.sample(names, rng.randint(0, min(2, n_atoms))))))
        rules.append((head, pos, neg))
    return rules


def to_program(rules) -> Program:
    return Program(rules=tuple(
        Rule(tuple(Atom(h) for h in head),
             tuple(Atom(a) for a in pos) + tuple(Not(Atom(a)) for a in neg))
        for head, pos, neg in rules
    ))


def names(interps):
    """Engine interpretations as sorted lists of atom names, for comparison with oracles."""
    return sorted((frozenset(str(a) for a in i) for i in interps), key=lambda s: sorted(s))
