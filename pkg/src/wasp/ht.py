"""Here-and-There satisfaction, equilibrium models and strong equivalence.

Answer sets are computed by exhaustive search: a candidate ``T`` is an
answer set iff ``<T, T>`` satisfies the program and no ``<H, T>`` with
``H`` a proper subset of ``T`` does. Candidates are bitmasks over the
canonically ordered atom universe.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .errors import CapacityError, FragmentError, NonGroundError
from .interp import (
    HTInterpretation, canonical_key, canonical_order, satisfies_classical,
    sort_atoms,
)
from .lang.syntax import (
    And, At, Atom, Bot, Box, Constraint, Diamond, Implies, Not, Or, Program,
    Rule, Top, atoms_of, is_ground,
)
from .weighted import HERE, THERE, compile_constraint, eval_constraint_ht

DEFAULT_MAX_ATOMS = 20


def max_atoms(override: int | None = None) -> int:
    """Capacity of the exhaustive search; ``WASP_MAX_ATOMS`` overrides the default."""
    if override is not None:
        return override
    env = os.environ.get("WASP_MAX_ATOMS")
    return int(env) if env else DEFAULT_MAX_ATOMS


def satisfies_ht(ht: HTInterpretation, world: str, f) -> bool:
    """Kripke satisfaction on the two-world frame ``here <= there``."""
    if world == THERE:
        return satisfies_classical(ht.there, f)
    if world != HERE:
        raise ValueError(f"unknown world {world!r}")
    if isinstance(f, Atom):
        if not f.is_ground():
            raise NonGroundError(f"atom {f} is not ground")
        return f in ht.here
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not satisfies_classical(ht.there, f.arg)
    if isinstance(f, And):
        return satisfies_ht(ht, HERE, f.left) and satisfies_ht(ht, HERE, f.right)
    if isinstance(f, Or):
        return satisfies_ht(ht, HERE, f.left) or satisfies_ht(ht, HERE, f.right)
    if isinstance(f, Implies):
        here = not satisfies_ht(ht, HERE, f.left) or satisfies_ht(ht, HERE, f.right)
        return here and satisfies_classical(ht.there, f)
    if isinstance(f, Constraint):
        return eval_constraint_ht(f, ht, HERE)
    if isinstance(f, Rule):
        body = all(satisfies_ht(ht, HERE, b) for b in f.body)
        here = not body or any(satisfies_ht(ht, HERE, h) for h in f.head)
        return here and satisfies_classical(ht.there, f)
    if isinstance(f, (Diamond, Box, At)):
        raise FragmentError("temporal operators need a stream (see wasp.stream)")
    raise NonGroundError(f"cannot evaluate {f!r}; ground it first")


def satisfies_program_ht(ht: HTInterpretation, p: Program) -> bool:
    return all(satisfies_ht(ht, HERE, r) for r in p.rules)


def universe_of(*programs: Program, extra: Iterable[Atom] = ()) -> list[Atom]:
    atoms = set(extra)
    for p in programs:
        atoms |= atoms_of(p)
    return sort_atoms(atoms)


class CompiledProgram:
    """A ground program lowered to bitmask tests over a fixed atom universe."""

    def __init__(self, p: Program, universe: Iterable[Atom] | None = None):
        if not is_ground(p):
            raise NonGroundError("program must be ground; call wasp.ground.ground first")
        self.atoms = universe_of(p, extra=universe or ())
        self.index = {a: k for k, a in enumerate(self.atoms)}
        self.rules = [self._compile_rule(r) for r in p.rules]

    def _compile_rule(self, r: Rule):
        head_mask, head_cons, pos, neg, body_cons = 0, [], 0, 0, []
        for h in r.head:
            if isinstance(h, Atom):
                head_mask |= 1 << self.index[h]
            elif isinstance(h, Constraint):
                head_cons.append(compile_constraint(h, self.index))
            else:
                raise FragmentError(f"unsupported head element {h!r}")
        for b in r.body:
            if isinstance(b, Atom):
                pos |= 1 << self.index[b]
            elif isinstance(b, Not) and isinstance(b.arg, Atom):
                neg |= 1 << self.index[b.arg]
            elif isinstance(b, Constraint):
                body_cons.append(compile_constraint(b, self.index))
            elif isinstance(b, (Diamond, Box, At)) or isinstance(b, Not):
                raise FragmentError("temporal literals need wasp.stream.answer_streams")
            else:
                raise FragmentError(f"unsupported body element {b!r}")
        return head_mask, tuple(head_cons), pos, neg, tuple(body_cons)

    def is_model(self, t: int) -> bool:
        """Classical satisfaction, i.e. ``<T, T>`` satisfies every rule."""
        for head, hcons, pos, neg, bcons in self.rules:
            if pos & ~t or neg & t or not all(c(t) for c in bcons):
                continue
            if head & t or any(c(t) for c in hcons):
                continue
            return False
        return True

    def here_ok(self, h: int, t: int) -> bool:
        """``<H, T>`` satisfies every rule at here; assumes ``T`` is a model."""
        for head, hcons, pos, neg, bcons in self.rules:
            if pos & ~h or neg & t or not all(c(h) and c(t) for c in bcons):
                continue
            if head & h or any(c(h) and c(t) for c in hcons):
                continue
            return False
        return True

    def is_equilibrium(self, t: int) -> bool:
        if not self.is_model(t):
            return False
        h = (t - 1) & t
        while True:
            if h != t and self.here_ok(h, t):
                return False
            if h == 0:
                return True
            h = (h - 1) & t

    def decode(self, mask: int) -> frozenset:
        return frozenset(a for k, a in enumerate(self.atoms) if mask >> k & 1)


def _chunks(n_candidates: int, workers: int):
    size = -(-n_candidates // workers)
    return [range(lo, min(lo + size, n_candidates)) for lo in range(0, n_candidates, size)]


def answer_sets(p: Program, *, capacity: int | None = None, workers: int = 1) -> list[frozenset]:
    """All equilibrium models of a ground program, in canonical order."""
    cp = CompiledProgram(p)
    n = len(cp.atoms)
    if n > max_atoms(capacity):
        raise CapacityError(f"{n} atoms exceed the exhaustive-search capacity of {max_atoms(capacity)}")

    def scan(candidates):
        return [t for t in candidates if cp.is_equilibrium(t)]

    total = 1 << n
    if workers <= 1 or total < 64:
        found = scan(range(total))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = [t for part in pool.map(scan, _chunks(total, workers)) for t in part]
    return canonical_order(cp.decode(t) for t in found)


def ht_models(p: Program, universe: Iterable[Atom] = (), *, capacity: int | None = None) -> list[HTInterpretation]:
    """Every HT-model ``<H, T>`` of ``p`` over the universe, ordered by (there, here)."""
    cp = CompiledProgram(p, universe)
    n = len(cp.atoms)
    if n > max_atoms(capacity):
        raise CapacityError(f"{n} atoms exceed the exhaustive-search capacity of {max_atoms(capacity)}")
    out = []
    for t in range(1 << n):
        if not cp.is_model(t):
            continue
        h = t
        while True:
            if cp.here_ok(h, t):
                out.append(HTInterpretation(cp.decode(h), cp.decode(t)))
            if h == 0:
                break
            h = (h - 1) & t
    out.sort(key=lambda m: (canonical_key(m.there), canonical_key(m.here)))
    return out


# -- reduct-based oracle ---------------------------------------------------


def normal_parts(p: Program):
    parts = []
    for r in p.rules:
        if len(r.head) > 1 or not all(isinstance(h, Atom) for h in r.head):
            raise FragmentError("not a normal program: heads must be a single atom or empty")
        pos, neg = set(), set()
        for b in r.body:
            if isinstance(b, Atom):
                pos.add(b)
            elif isinstance(b, Not) and isinstance(b.arg, Atom):
                neg.add(b.arg)
            else:
                raise FragmentError(f"not a normal program: body literal {b!r}")
        parts.append((r.head[0] if r.head else None, frozenset(pos), frozenset(neg)))
    return parts


def is_normal(p: Program) -> bool:
    try:
        normal_parts(p)
    except FragmentError:
        return False
    return True


def gl_stable_models(p: Program, *, capacity: int | None = None) -> list[frozenset]:
    """Stable models via the Gelfond-Lifschitz reduct (normal programs only)."""
    if not is_ground(p):
        raise NonGroundError("program must be ground")
    parts = normal_parts(p)
    atoms = universe_of(p)
    if len(atoms) > max_atoms(capacity):
        raise CapacityError(f"{len(atoms)} atoms exceed capacity")
    stable = []
    for k in range(1 << len(atoms)):
        m = frozenset(a for j, a in enumerate(atoms) if k >> j & 1)
        reduct = [(head, pos) for head, pos, neg in parts if not (neg & m)]
        least: set = set()
        changed = True
        while changed:
            changed = False
            for head, pos in reduct:
                if head is not None and head not in least and pos <= least:
                    least.add(head)
                    changed = True
        if least != m:
            continue
        if any(head is None and pos <= m for head, pos in reduct):
            continue
        stable.append(m)
    return canonical_order(stable)


# -- strong equivalence ----------------------------------------------------


@dataclass(frozen=True)
class Equivalence:
    """Outcome of a strong-equivalence check.

    ``counterexample`` is an HT-interpretation that is a model of exactly one
    program; ``model_of`` names which one (1 or 2).
    """

    equal: bool
    counterexample: HTInterpretation | None = None
    model_of: int | None = None

    def __bool__(self) -> bool:
        return self.equal


def strongly_equivalent(p1: Program, p2: Program, universe: Iterable[Atom] = (),
                        *, capacity: int | None = None) -> Equivalence:
    atoms = universe_of(p1, p2, extra=universe)
    cap = capacity if capacity is not None else int(os.environ.get("WASP_MAX_ATOMS", 16))
    if len(atoms) > cap:
        raise CapacityError(f"{len(atoms)} atoms exceed the strong-equivalence capacity of {cap}")
    c1 = CompiledProgram(p1, atoms)
    c2 = CompiledProgram(p2, atoms)
    # both compile over the same sorted universe, so bit k means the same atom
    for t in range(1 << len(atoms)):
        m1, m2 = c1.is_model(t), c2.is_model(t)
        if not (m1 or m2):
            continue
        if m1 != m2:
            return Equivalence(False, HTInterpretation(c1.decode(t), c1.decode(t)), 1 if m1 else 2)
        h = (t - 1) & t if t else 0
        while h != t:
            a, b = c1.here_ok(h, t), c2.here_ok(h, t)
            if a != b:
                return Equivalence(False, HTInterpretation(c1.decode(h), c1.decode(t)), 1 if a else 2)
            if h == 0:
                break
            h = (h - 1) & t
    return Equivalence(True)
