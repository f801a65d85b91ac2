"""Command line interface.

Exit codes: 0 pass/holds, 1 fail, 2 inconclusive, 64 usage error,
65 document error, 66 unreadable input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bisim, conditions, reactive
from .conditions import Fails, Holds, Unknown
from .dsl import DSLError, Document, parse
from .pretty import format_condition, format_cospan

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_NOINPUT = 64, 65, 66


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cospan-bisim", description="Conditional bisimulation workbench for "
                "reactive systems over input-linear cospans of graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("steps", help="list labelled steps of an agent")
    s.add_argument("file")
    s.add_argument("agent")
    s.add_argument("--kind", choices=["rep", "ctx"], default="rep")
    s.add_argument("--bound", type=int, default=2)

    s = sub.add_parser("shift", help="shift a condition along a cospan")
    s.add_argument("file")
    s.add_argument("cond")
    s.add_argument("cospan")
    s.add_argument("--raw", action="store_true", help="do not normalize the result")

    s = sub.add_parser("sat", help="check whether a cospan satisfies a condition")
    s.add_argument("file")
    s.add_argument("cospan")
    s.add_argument("cond")

    s = sub.add_parser("implies", help="three-valued implication check")
    s.add_argument("file")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--bound", type=int, default=None)

    s = sub.add_parser("check", help="check a relation")
    s.add_argument("file")
    s.add_argument("relation")
    s.add_argument("--mode", choices=["cbuc-rep", "bisim-rep", "semi-sat"], default="cbuc-rep")
    s.add_argument("--up-to-context", action="store_true",
                   help="semi-sat only: relate successors up to a common context")
    s.add_argument("--bound", type=int, default=None)
    s.add_argument("--report", default=None, help="write the line-delimited JSON report here ('-' for stdout)")

    s = sub.add_parser("ground", help="ground bisimilarity of two agents")
    s.add_argument("file")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--bound", type=int, default=None, help="maximum number of explored agents")

    s = sub.add_parser("suggest", help="propose verified conditions for a pair of agents")
    s.add_argument("file")
    s.add_argument("a")
    s.add_argument("b")
    return p


def _get(doc: Document, table: str, name: str):
    t = getattr(doc, table)
    if name not in t:
        kind = {"cospans": "cospan", "conds": "condition", "relations": "relation"}[table]
        raise DSLError(f"unknown {kind} {name!r}")
    return t[name]


def _print_step(i: int, s: reactive.StepLabel) -> None:
    flag = " (vacuous)" if s.vacuous else ""
    print(f"[{i}] rule {s.rule}{flag}")
    print(f"    borrowed: {format_cospan(s.borrowed)}")
    print(f"    target:   {format_cospan(s.target)}")
    print("    environment:")
    print(format_condition(s.env_cond, 3))


def _obligation_record(o: bisim.Obligation) -> dict:
    rec = {"type": "obligation", "id": o.id, "triple": o.triple, "side": o.side,
           "step": o.id.split(":", 2)[2], "rule": o.step.rule, "status": o.status,
           "implication": type(o.verdict).__name__.lower(), "assumed": o.assumed,
           "borrowed": format_cospan(o.step.borrowed),
           "answers": len(o.candidates),
           "missing": [{"successors": [format_cospan(a), format_cospan(b)], "rule": ans.rule}
                       for ans, a, b in o.missing]}
    if isinstance(o.verdict, Fails):
        rec["witness"] = format_cospan(o.verdict.witness)
    if isinstance(o.verdict, Unknown):
        rec["bound"] = o.verdict.bound
    return rec


def _cmd_check(doc: Document, args) -> int:
    R = _get(doc, "relations", args.relation)
    bound = args.bound if args.bound is not None else doc.setting("bound.refute", conditions.DEFAULT_REFUTE_BOUND)
    system = doc.system
    if args.mode == "cbuc-rep":
        rep = bisim.check_cbuc_rep(R, system, bound, doc.assumptions)
    elif args.mode == "bisim-rep":
        rep = bisim.check_conditional_bisim_rep(R, system, bound, doc.assumptions)
    else:
        rep = bisim.check_semi_saturated(R, system, bound, doc.assumptions,
                                         up_to_context=args.up_to_context)
    print(f"relation {args.relation}: {len(R)} triple(s), mode {args.mode}")
    for o in rep.obligations:
        print(f"  {o.id}: {o.status}")
        if o.status in ("fails", "unknown", "assumed"):
            for ans, a, b in o.missing:
                print(f"    missing successor via {ans.rule}: ({format_cospan(a)}, {format_cospan(b)})")
            if isinstance(o.verdict, Fails):
                print("    step environment:")
                print(format_condition(o.step.env_cond, 3))
                print(f"    counterexample context: {format_cospan(o.verdict.witness)}")
    if rep.assumptions:
        print("  assumptions used: " + ", ".join(rep.assumptions))
    print(f"verdict: {rep.verdict}")
    if args.report:
        lines = [json.dumps(_obligation_record(o)) for o in rep.obligations]
        lines.append(json.dumps({"type": "summary", "mode": args.mode, "verdict": rep.verdict,
                                 "obligations": len(rep.obligations),
                                 "failures": [o.id for o in rep.failures],
                                 "assumptions": rep.assumptions}))
        text = "\n".join(lines) + "\n"
        if args.report == "-":
            sys.stdout.write(text)
        else:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text)
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(rep.verdict, EXIT_INCONCLUSIVE)


def _dispatch(doc: Document, args) -> int:
    system = doc.system
    if args.command == "steps":
        a = _get(doc, "cospans", args.agent)
        if args.kind == "rep":
            steps = reactive.representative_steps(a, system)
        else:
            steps = reactive.context_steps_bounded(a, system, args.bound)
        for i, s in enumerate(steps):
            _print_step(i, s)
        print(f"{len(steps)} step(s)")
        return EXIT_PASS
    if args.command == "shift":
        A, c = _get(doc, "conds", args.cond), _get(doc, "cospans", args.cospan)
        res = conditions.shift(A, c)
        print(format_condition(res if args.raw else conditions.normalize(res)))
        return EXIT_PASS
    if args.command == "sat":
        c, A = _get(doc, "cospans", args.cospan), _get(doc, "conds", args.cond)
        ok = conditions.satisfies(c, A)
        print("true" if ok else "false")
        return EXIT_PASS if ok else EXIT_FAIL
    if args.command == "implies":
        A, B = _get(doc, "conds", args.a), _get(doc, "conds", args.b)
        bound = args.bound if args.bound is not None else doc.setting("bound.refute", conditions.DEFAULT_REFUTE_BOUND)
        v = conditions.implies(A, B, bound, system.label_alphabet)
        if isinstance(v, Holds):
            print(f"holds ({v.reason})")
            return EXIT_PASS
        if isinstance(v, Fails):
            print("fails; counterexample context: " + format_cospan(v.witness))
            return EXIT_FAIL
        print(f"unknown (no counterexample within bound {v.bound})")
        return EXIT_INCONCLUSIVE
    if args.command == "check":
        return _cmd_check(doc, args)
    if args.command == "ground":
        a, b = _get(doc, "cospans", args.a), _get(doc, "cospans", args.b)
        bound = args.bound if args.bound is not None else doc.setting("bound.states", 2000)
        res = bisim.ground_bisim_oracle(a, b, system, bound)
        print(f"{res.verdict} ({res.states} agents explored)")
        return {"bisimilar": EXIT_PASS, "distinguished": EXIT_FAIL}.get(res.verdict, EXIT_INCONCLUSIVE)
    if args.command == "suggest":
        a, b = _get(doc, "cospans", args.a), _get(doc, "cospans", args.b)
        found = bisim.derive_condition_candidates(a, b, system,
                                                  doc.setting("bound.refute", conditions.DEFAULT_REFUTE_BOUND))
        for cond, rep in found:
            print(f"candidate (verified, {len(rep.obligations)} obligations):")
            print(format_condition(cond, 1))
        if not found:
            print("no verified candidate")
        return EXIT_PASS if found else EXIT_FAIL
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as ex:
        print(f"cospan-bisim: cannot read {args.file}: {ex.strerror}", file=sys.stderr)
        return EXIT_NOINPUT
    try:
        doc = parse(text)
        return _dispatch(doc, args)
    except DSLError as ex:
        sep = ":" if ex.line else ": "
        print(f"{args.file}{sep}{ex}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as ex:
        print(f"cospan-bisim: {ex}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
