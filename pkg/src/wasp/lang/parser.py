"""Recursive-descent parser for the rule language.

Surface syntax summary::

    #semiring nat.
    #domain d = {1, 2}.
    #weight w(1) = 3.
    a | [1 <= 2*b + c]@nat :- p(X), not q(X), X in d, [5 > sum{Y in d} w(Y)*r(Y)]@nat.

Classical formulas (inside gates) use ``~ & | ->`` plus ``#true``/``#false``;
temporal prefixes are ``<>`` (some time point), ``[]`` (every time point)
and ``@t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .. import semiring as sr
from ..errors import OrderUnsupported, ParseError
from .syntax import (
    COMPARATORS, And, At, Atom, Bot, Box, Constraint, Diamond, Domain, Gate,
    Implies, Not, Or, Program, Quant, Rule, Top, Var, WAdd, WBox, WDiamond,
    WMul, Weight, WeightApp, variables_of,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<num>-?\d+(?:/\d+|\.\d+)?|-inf\b)
  | (?P<directive>\#[a-z]+)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<op>:-|->|<>|\[\]|<=|>=|!=|[<>=|&~*+,.(){}\[\]@])
    """,
    re.VERBOSE,
)

ORDERED_CMPS = ("<", "<=", ">", ">=")
VALUE_WORDS = ("inf", "true", "false")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str, *, weights: Iterable[str] = (), domains: Iterable[str] | None = None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.weight_names = set(weights)
        self.domain_names = None if domains is None else set(domains)
        self.arities: dict[str, int] = {}

    # -- token helpers ------------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, text: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok.kind in ("op", "directive", "ident") and tok.text == text

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        found = tok.text or "end of input"
        return ParseError(f"{message} (found {found!r})", tok.line, tok.col)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.peek().kind != kind:
            raise self.error(f"expected {what}")
        return self.next()

    def done(self) -> None:
        if self.peek().kind != "eof":
            raise self.error("unexpected trailing input")

    # -- programs -----------------------------------------------------------

    def program(self) -> Program:
        # declarations may follow their first use, so collect names up front
        for i, tok in enumerate(self.tokens[:-1]):
            nxt = self.tokens[i + 1]
            if tok.text == "#weight" and nxt.kind == "ident":
                self.weight_names.add(nxt.text)
            elif tok.text == "#domain" and nxt.kind in ("ident", "var"):
                self.domain_names = (self.domain_names or set()) | {nxt.text}
        if self.domain_names is None:
            self.domain_names = set()
        semiring = None
        domains: dict = {}
        weights: dict = {}
        rules = []
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.text == "#semiring":
                self.next()
                name = self.expect_kind("ident", "semiring identifier")
                if name.text not in sr.CATALOG:
                    raise self.error("undeclared semiring", name)
                semiring = name.text
                self.expect(".")
            elif tok.text == "#domain":
                self.next()
                name = self.domain_name(check=False).text
                self.expect("=")
                self.expect("{")
                consts = [self.constant()]
                while self.at(","):
                    self.next()
                    consts.append(self.constant())
                self.expect("}")
                self.expect(".")
                if len(set(consts)) != len(consts):
                    raise self.error(f"duplicate constant in domain {name}", tok)
                domains[name] = tuple(consts)
            elif tok.text == "#weight":
                self.next()
                name = self.expect_kind("ident", "weight function name").text
                self.expect("(")
                const = self.constant()
                self.expect(")")
                self.expect("=")
                weights.setdefault(name, {})[const] = self.value_text()
                self.expect(".")
            elif tok.kind == "directive" and tok.text not in ("#true", "#false"):
                raise self.error("unknown directive", tok)
            else:
                rules.append(self.rule())
        return Program(semiring, domains, weights, tuple(rules))

    def constant(self):
        tok = self.next()
        if tok.kind == "num" and re.fullmatch(r"-?\d+", tok.text):
            return int(tok.text)
        if tok.kind == "ident":
            return tok.text
        raise self.error("expected a constant", tok)

    def value_text(self) -> str:
        tok = self.next()
        if tok.kind == "num" or (tok.kind == "ident" and tok.text in VALUE_WORDS):
            return tok.text
        raise self.error("expected a value literal", tok)

    def rule(self) -> Rule:
        head = []
        if not self.at(":-"):
            head.append(self.head_literal())
            while self.at("|"):
                self.next()
                head.append(self.head_literal())
        body = []
        if self.at(":-"):
            self.next()
            if not self.at("."):
                body.append(self.body_literal())
                while self.at(","):
                    self.next()
                    body.append(self.body_literal())
        self.expect(".")
        return Rule(tuple(head), tuple(body))

    def head_literal(self):
        if self.at("["):
            return self.constraint()
        return self.atom()

    def body_literal(self):
        if self.at("["):
            return self.constraint()
        if self.at("not") and self.peek(1).kind in ("ident", "op"):
            self.next()
            return Not(self.temporal_literal())
        if self.peek().kind == "var":
            var = self.next()
            if not self.at("in"):
                raise self.error("a variable is not a literal", var)
            self.next()
            dom = self.domain_name()
            return Domain(Var(var.text), dom.text)
        return self.temporal_literal()

    def temporal_literal(self):
        if self.at("<>"):
            self.next()
            return Diamond(self.atom())
        if self.at("[]"):
            self.next()
            return Box(self.atom())
        if self.at("@"):
            self.next()
            return At(self.time_index(), self.atom())
        return self.atom()

    def time_index(self) -> int:
        tok = self.next()
        if tok.kind != "num" or not tok.text.isdigit():
            raise self.error("expected a time point", tok)
        return int(tok.text)

    def domain_name(self, check: bool = True) -> Token:
        tok = self.peek()
        if tok.kind not in ("ident", "var"):
            raise self.error("expected a domain name")
        if check and self.domain_names is not None and tok.text not in self.domain_names:
            raise self.error("undeclared domain", tok)
        return self.next()

    def atom(self) -> Atom:
        tok = self.peek()
        if tok.kind != "ident" or tok.text in ("not",):
            raise self.error("expected an atom")
        if tok.text in self.weight_names:
            raise self.error(f"weight function {tok.text} used as an atom")
        self.next()
        args = []
        if self.at("("):
            self.next()
            args.append(self.term())
            while self.at(","):
                self.next()
                args.append(self.term())
            self.expect(")")
        known = self.arities.setdefault(tok.text, len(args))
        if known != len(args):
            raise self.error(f"predicate {tok.text} used with arity {len(args)} and {known}", tok)
        return Atom(tok.text, tuple(args))

    def term(self):
        tok = self.peek()
        if tok.kind == "var":
            self.next()
            return Var(tok.text)
        return self.constant()

    # -- constraints --------------------------------------------------------

    def constraint(self) -> Constraint:
        start = self.expect("[")
        # the semiring annotation follows the closing bracket; look it up first
        i = self.pos
        while self.tokens[i].kind != "eof" and self.tokens[i].text != "]":
            i += 1
        tail = self.tokens[i:i + 3]
        if not (len(tail) == 3 and tail[0].text == "]" and tail[1].text == "@"
                and tail[2].kind == "ident"):
            raise self.error("constraint must end with ']@semiring'", start)
        name_tok = self.tokens[i + 2]
        if name_tok.text not in sr.CATALOG:
            raise self.error("undeclared semiring", name_tok)
        semiring = sr.get(name_tok.text)
        bound = self.value(semiring)
        cmp_tok = self.next()
        if cmp_tok.text not in COMPARATORS:
            raise self.error("expected a comparator", cmp_tok)
        if cmp_tok.text in ORDERED_CMPS and not semiring.ordered:
            raise OrderUnsupported(
                f"{cmp_tok.line}:{cmp_tok.col}: comparator {cmp_tok.text} needs an ordered "
                f"semiring, {semiring.name} has no order"
            )
        body = self.wsum(semiring)
        self.expect("]")
        self.expect("@")
        self.next()
        return Constraint(bound, cmp_tok.text, body, semiring.name)

    def value(self, semiring):
        tok = self.peek()
        text = self.value_text()
        try:
            return semiring.parse(text)
        except ParseError as e:
            raise ParseError(str(e), tok.line, tok.col) from None
        except Exception as e:
            raise ParseError(f"bad weight {text!r}: {e}", tok.line, tok.col) from None

    # -- weighted formulas --------------------------------------------------

    def wsum(self, s):
        node = self.wprod(s)
        while self.at("+"):
            self.next()
            node = WAdd(node, self.wprod(s))
        return node

    def wprod(self, s):
        node = self.wunary(s)
        while self.at("*"):
            self.next()
            node = WMul(node, self.wunary(s))
        return node

    def wunary(self, s):
        if self.at("<>"):
            self.next()
            return WDiamond(self.wunary(s))
        if self.at("[]"):
            self.next()
            return WBox(self.wunary(s))
        tok = self.peek()
        if tok.kind == "ident" and tok.text in ("sum", "prod") and self.at("{", 1):
            self.next()
            self.next()
            var = self.expect_kind("var", "quantified variable")
            self.expect("in")
            dom = self.domain_name()
            self.expect("}")
            return Quant(tok.text, Var(var.text), dom.text, self.wprod(s))
        return self.wprimary(s)

    def wprimary(self, s):
        tok = self.peek()
        if tok.kind == "num" or (tok.kind == "ident" and tok.text in VALUE_WORDS):
            return Weight(self.value(s))
        if self.at("~"):
            self.next()
            return Gate(self.cunary(), negated=True)
        if self.at("("):
            self.next()
            saved = self.pos
            try:
                f = self.cimp()
                if self.at(")"):
                    self.next()
                    return Gate(f)
            except ParseError:
                pass
            self.pos = saved
            node = self.wsum(s)
            self.expect(")")
            return node
        if tok.kind == "ident" and tok.text in self.weight_names:
            self.next()
            self.expect("(")
            arg = self.term()
            self.expect(")")
            return WeightApp(tok.text, arg)
        if tok.kind == "ident":
            return self.atom()
        raise self.error("expected a weighted formula")

    # -- classical formulas -------------------------------------------------

    def cimp(self):
        left = self.cor()
        if self.at("->"):
            self.next()
            return Implies(left, self.cimp())
        return left

    def cor(self):
        node = self.cand()
        while self.at("|"):
            self.next()
            node = Or(node, self.cand())
        return node

    def cand(self):
        node = self.cunary()
        while self.at("&"):
            self.next()
            node = And(node, self.cunary())
        return node

    def cunary(self):
        if self.at("~"):
            self.next()
            return Not(self.cunary())
        if self.at("<>"):
            self.next()
            return Diamond(self.cunary())
        if self.at("[]"):
            self.next()
            return Box(self.cunary())
        if self.at("@"):
            self.next()
            return At(self.time_index(), self.cunary())
        if self.at("#true"):
            self.next()
            return Top()
        if self.at("#false"):
            self.next()
            return Bot()
        if self.at("("):
            self.next()
            f = self.cimp()
            self.expect(")")
            return f
        return self.atom()


def parse_program(text: str) -> Program:
    """Parse program text; raises :class:`ParseError` with line/column on the first error."""
    return Parser(text).program()


def parse_weighted_formula(text: str, semiring, *, weights: Iterable[str] = (),
                           domains: Iterable[str] | None = None, bound: Iterable[Var] = ()):
    """Parse a weighted formula whose literals are read in ``semiring``.

    Variables must be bound by an enclosing ``sum``/``prod`` or listed in ``bound``.
    """
    p = Parser(text, weights=weights, domains=domains)
    node = p.wsum(sr.get(semiring))
    p.done()
    free = _free_vars(node) - set(bound)
    if free:
        names = ", ".join(sorted(v.name for v in free))
        raise ParseError(f"unbound variable(s) {names}")
    return node


def parse_formula(text: str):
    p = Parser(text)
    node = p.cimp()
    p.done()
    return node


def parse_constraint(text: str, *, weights: Iterable[str] = (), domains: Iterable[str] | None = None):
    p = Parser(text, weights=weights, domains=domains)
    node = p.constraint()
    p.done()
    return node


def parse_rule(text: str) -> Rule:
    p = Parser(text)
    p.domain_names = None
    node = p.rule()
    p.done()
    return node


def _free_vars(node, bound=frozenset()):
    if isinstance(node, Quant):
        return _free_vars(node.body, bound | {node.var})
    if isinstance(node, (WAdd, WMul)):
        return _free_vars(node.left, bound) | _free_vars(node.right, bound)
    if isinstance(node, (WDiamond, WBox)):
        return _free_vars(node.arg, bound)
    return variables_of(node) - bound
