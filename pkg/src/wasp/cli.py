"""Command-line front end.

Every invocation writes exactly one JSON document to standard output. Exit
status is 0 on success, 1 for usage or parse errors and 2 for semantic errors
(unsafe program, unordered semiring, capacity, inconsistency, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .ground import check_safety, ground, ground_weighted
from . import ht, reason
from . import semiring as sr
from . import stream as streams
from .errors import ParseError, WaspError
from .interp import sort_atoms
from .lang import parse_constraint, parse_formula, parse_program, parse_weighted_formula, to_text
from .lang.parser import Parser
from .lang.syntax import Program
from .weighted import eval as weighted_eval
from .weighted import eval_constraint

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _atoms_list(i) -> list[str]:
    return [str(a) for a in sort_atoms(i)]


def _parse_atoms(text: str | None):
    if not text:
        return frozenset()
    p = Parser(text)
    atoms = {p.atom()}
    while p.at(","):
        p.next()
        atoms.add(p.atom())
    p.done()
    bad = [a for a in atoms if not a.is_ground()]
    if bad:
        raise ParseError(f"atom {bad[0]} is not ground")
    return frozenset(atoms)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load_program(path: str | None) -> Program:
    return parse_program(_read(path)) if path else Program()


def _semiring(args, program: Program | None = None) -> sr.Semiring:
    name = args.semiring or (program.semiring if program else None)
    if name is None:
        raise UsageError("no semiring given: pass --semiring or declare '#semiring' in the program")
    return sr.get(name)


def _alpha(args, s, program: Program):
    if not args.alpha:
        raise UsageError("--alpha is required")
    return parse_weighted_formula(args.alpha, s, weights=program.weights, domains=program.domains)


def _ground(program: Program, diagnostics: dict) -> Program:
    report = check_safety(program)
    diagnostics["safety"] = "safe" if report.safe else str(report)
    return ground(program)


def _table(table: dict, key: str = "value") -> list:
    return [{"answer_set": _atoms_list(m), key: sr.format_value(v)} for m, v in table.items()]


# -- commands ----------------------------------------------------------------


def cmd_solve(args, diag):
    p = _ground(_load_program(args.program), diag)
    models = ht.answer_sets(p, workers=args.jobs)
    return None, {"answer_sets": [_atoms_list(m) for m in models], "count": len(models)}


def cmd_eval(args, diag):
    program = _load_program(args.program)
    s = _semiring(args, program)
    alpha = ground_weighted(_alpha(args, s, program), s, program=program)
    value = weighted_eval(alpha, _parse_atoms(args.interp), s)
    return s, {"value": sr.format_value(value)}


def cmd_check(args, diag):
    program = _load_program(args.program)
    if not args.constraint:
        raise UsageError("--constraint is required")
    c = parse_constraint(args.constraint, weights=program.weights, domains=program.domains)
    c = type(c)(c.bound, c.cmp, ground_weighted(c.body, c.semiring, program=program), c.semiring)
    i = _parse_atoms(args.interp)
    value = weighted_eval(c.body, i, c.semiring)
    return sr.get(c.semiring), {"satisfied": eval_constraint(c, i), "value": sr.format_value(value)}


def cmd_count(args, diag):
    program = _load_program(args.program)
    s = _semiring(args, program)
    alpha = _alpha(args, s, program)
    res = reason.aasc(_ground(program, diag), alpha, s, workers=args.jobs)
    return s, {"value": sr.format_value(res.value), "table": _table(res.table)}


def cmd_opt(args, diag):
    program = _load_program(args.program)
    s = _semiring(args, program)
    alpha = _alpha(args, s, program)
    res = reason.optimize(_ground(program, diag), alpha, s, args.dir, workers=args.jobs)
    return s, {
        "direction": args.dir,
        "value": sr.format_value(res.value),
        "witnesses": [_atoms_list(m) for m in res.witnesses],
        "table": _table(res.table),
    }


def cmd_prob(args, diag):
    program = _load_program(args.program)
    s = sr.get(args.semiring or "rat")
    alpha = _alpha(args, s, program)
    res = reason.normalize(_ground(program, diag), alpha, s, workers=args.jobs)
    return s, {"total": sr.format_value(res.value), "probabilities": _table(res.table, "probability")}


def cmd_satval(args, diag):
    program = _load_program(args.program)
    s = _semiring(args, program)
    alpha = ground_weighted(_alpha(args, s, program), s, program=program)
    universe = _parse_atoms(args.universe)
    return s, {"value": sr.format_value(reason.sat_value(alpha, s, universe)),
               "universe": _atoms_list(universe)}


def cmd_seq(args, diag):
    p1 = _ground(_load_program(args.first), diag)
    p2 = _ground(_load_program(args.second), diag)
    res = ht.strongly_equivalent(p1, p2, _parse_atoms(args.universe))
    if res.equal:
        return None, {"verdict": "equal"}
    return None, {
        "verdict": "counterexample",
        "here": _atoms_list(res.counterexample.here),
        "there": _atoms_list(res.counterexample.there),
        "model_of": [args.first, args.second][res.model_of - 1],
    }


def cmd_ground(args, diag):
    p = _ground(_load_program(args.program), diag)
    return None, {"program": to_text(p), "rules": len(p.rules)}


def cmd_stream_eval(args, diag):
    program = _load_program(args.program)
    s = streams.parse_stream(_read(args.stream), args.horizon)
    picked = [x for x in (args.formula, args.alpha, args.aggregate) if x]
    if len(picked) != 1:
        raise UsageError("give exactly one of --formula, --alpha, --aggregate")
    if args.formula:
        f = parse_formula(args.formula)
        return None, {"time": args.time, "holds": streams.satisfies_stream(s, args.time, f)}
    r = _semiring(args, program)
    if args.alpha:
        alpha = ground_weighted(_alpha(args, r, program), r, program=program)
        value = streams.eval_weighted_stream(s, args.time, alpha, r)
        return r, {"time": args.time, "value": sr.format_value(value)}
    query = parse_weighted_formula(args.aggregate, r, weights=program.weights, domains=program.domains)
    mode = streams.AggMode(args.mode)
    value = streams.aggregate_query(s, args.time, query, mode, r, program)
    return r, {"time": args.time, "mode": mode.value, "value": sr.format_value(value)}


def cmd_stream_solve(args, diag):
    p = _ground(_load_program(args.program), diag)
    found = streams.answer_streams(p, args.horizon)
    return None, {
        "horizon": args.horizon,
        "answer_streams": [[_atoms_list(v) for v in st.valuation] for st in found],
        "count": len(found),
    }


HANDLERS = {
    "solve": cmd_solve, "eval": cmd_eval, "check": cmd_check, "count": cmd_count,
    "opt": cmd_opt, "prob": cmd_prob, "satval": cmd_satval, "seq": cmd_seq,
    "ground": cmd_ground, "stream-eval": cmd_stream_eval, "stream-solve": cmd_stream_solve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wasp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, *, program="optional", alpha=False, semiring=False, interp=False, jobs=False):
        p = sub.add_parser(name)
        if program == "required":
            p.add_argument("program")
        elif program == "optional":
            p.add_argument("program", nargs="?")
        if semiring:
            p.add_argument("--semiring", choices=list(sr.CATALOG))
        if alpha:
            p.add_argument("--alpha")
        if interp:
            p.add_argument("--interp", default="")
        if jobs:
            p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--timings", action="store_true", help="add wall-clock timings to diagnostics")
        return p

    add("solve", program="required", jobs=True)
    add("eval", alpha=True, semiring=True, interp=True)
    add("check", interp=True).add_argument("--constraint")
    add("count", program="required", alpha=True, semiring=True, jobs=True)
    add("opt", program="required", alpha=True, semiring=True, jobs=True).add_argument(
        "--dir", choices=("min", "max"), default="min")
    add("prob", program="required", alpha=True, semiring=True, jobs=True)
    add("satval", alpha=True, semiring=True).add_argument("--universe", default="")
    seq = add("seq", program=None)
    seq.add_argument("first")
    seq.add_argument("second")
    seq.add_argument("--universe", default="")
    add("ground", program="required")
    se = add("stream-eval", alpha=True, semiring=True)
    se.add_argument("--stream", required=True)
    se.add_argument("--time", type=int, default=0)
    se.add_argument("--horizon", type=int)
    se.add_argument("--formula")
    se.add_argument("--aggregate")
    se.add_argument("--mode", choices=[m.value for m in streams.AggMode], default="now")
    add("stream-solve", program="required").add_argument("--horizon", type=int, required=True)
    return parser


# execution knobs that must not change the document
_NOT_ECHOED = {"command", "jobs", "timings"}


def _echo(args) -> dict:
    options = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_ECHOED}
    return {"name": args.command, "options": options}


def _emit(doc: dict, out) -> None:
    out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    doc = {"command": {"name": argv[0] if argv else None, "argv": list(argv[1:])}, "semiring": None,
           "status": "ok", "result": None, "diagnostics": {}}
    try:
        args = build_parser().parse_args(argv)
        doc["command"] = _echo(args)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be positive")
        start = time.perf_counter()
        s, result = HANDLERS[args.command](args, doc["diagnostics"])
        if args.timings:
            doc["diagnostics"]["seconds"] = round(time.perf_counter() - start, 6)
        doc["semiring"] = s.name if s else None
        doc["result"] = result
        code = 0
    except (UsageError, ParseError) as e:
        code = 1
        kind = "usage_error" if isinstance(e, UsageError) else e.code
        doc["status"] = "error"
        doc["error"] = {"code": kind, "message": str(e)}
        err.write(f"wasp: {e}\n")
    except (WaspError, ValueError) as e:
        code = 2
        doc["status"] = "error"
        doc["error"] = {"code": getattr(e, "code", "semantic_error"), "message": str(e)}
        err.write(f"wasp: {e}\n")
    _emit(doc, out)
    return code


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
