"""Command-line interface.

Exit codes: 0 ok/open/valid/satisfiable, 1 closed/invalid/unsatisfiable,
2 usage or parse error, 3 resource cap, 4 inconsistent input, 5 corpus
failure, 6 internal disagreement between engines.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import oracle
from .errors import CorpusFormatError, InvalidPresupMap, ParseError, ResourceError
from .parser import Discourse, parse_corpus, parse_discourse, render
from .presup import status_report, tableau_presuppositions
from .syntax import Literal, Not
from .tableau import (
    DEFAULT_MAX_BRANCHES,
    RuleSet,
    build,
    check_coverage,
    is_closed,
    literal_key,
    render_tree,
    tableau_to_json,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INCONSISTENT = 4
EXIT_CORPUS_FAIL = 5
EXIT_DISAGREE = 6

FORMAT_ENV = "PRESUPTAB_FORMAT"
DEFAULT_MAX_ATOMS = 12


class UsageError(Exception):
    pass


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _read_input(text: str) -> str:
    return sys.stdin.read() if text == "-" else text


def _caps(args) -> dict:
    return {"max_atoms": args.max_atoms, "max_branches": args.max_branches}


def _lits(lits) -> str:
    lits = sorted(lits, key=literal_key)
    return ", ".join(str(x) for x in lits) if lits else "(none)"


def _discourse_tableau(args, d: Discourse):
    return build(d.formulas, d.presup_map, RuleSet(args.rules), **_caps(args))


def cmd_parse(args) -> int:
    d = parse_discourse(_read_input(args.input))
    rendered = [render(f, d.presup_map) for f in d.formulas]
    text = "\n".join(rendered) if rendered else "(empty discourse)"
    if d.presup_map:
        text += "\nannotations: " + ", ".join(f"{a} -> {lit}" for a, lit in sorted(d.presup_map.items()))
    _emit(args, text, {"formulas": rendered, "presup_map": d.presup_map.to_json()})
    return EXIT_OK


def cmd_tableau(args) -> int:
    d = parse_discourse(_read_input(args.input))
    t = _discourse_tableau(args, d)
    closed = is_closed(t)
    text = render_tree(t)
    gap = check_coverage(t)
    summary = f"{'closed' if closed else 'open'}: {len(t.branches)} branches, " \
              f"{len(t.branches) - sum(b.closed for b in t.branches)} open"
    if gap is not None:
        summary += f"; coverage fails on branch {{{_lits(gap.literals)}}}"
    data = tableau_to_json(t)
    data["coverage"] = gap is None
    _emit(args, f"{text}\n{summary}", data)
    return EXIT_NEGATIVE if closed else EXIT_OK


def _report_text(report) -> str:
    lines = [f"presuppositions: {_lits(report.presuppositions)}"]
    for i, (branch, bp) in enumerate(report.branches, 1):
        lines.append(f"branch {i} {{{_lits(branch.literals)}}}: surviving {_lits(bp.surviving)}")
        for blk in bp.blocked:
            extra = f" by {blk.conflict_with}" if blk.conflict_with else ""
            lines.append(f"    {blk.target} from {blk.source} blocked: {blk.reason.value}{extra}")
    return "\n".join(lines)


def cmd_presup(args) -> int:
    d = parse_discourse(_read_input(args.input))
    report = tableau_presuppositions(_discourse_tableau(args, d))
    if not report.consistent:
        _emit(args, "inconsistent: every branch is closed", report.to_json())
        return EXIT_INCONSISTENT
    _emit(args, _report_text(report), report.to_json())
    if not report.agreement:
        print("warning: open branches disagree on presuppositions", file=sys.stderr)
        if args.rules == RuleSet.PT.value:
            return EXIT_DISAGREE
    return EXIT_OK


def cmd_decide(args) -> int:
    d = parse_discourse(_read_input(args.input))
    if args.mode == "valid":
        if len(d.formulas) != 1:
            raise UsageError("--valid takes exactly one formula")
        fs = [Not(d.formulas[0])]
    else:
        fs = list(d.formulas)
    t = build(fs, d.presup_map, RuleSet.PT, **_caps(args))
    closed = is_closed(t) if fs else False
    positive = closed if args.mode == "valid" else not closed
    verdict = {("valid", True): "valid", ("valid", False): "invalid",
               ("sat", True): "satisfiable", ("sat", False): "unsatisfiable"}[args.mode, positive]
    data = {"mode": args.mode, "verdict": verdict}
    text = verdict
    if args.cross_check:
        rep = oracle.check_equivalence(fs, d.presup_map, max_atoms=args.max_atoms,
                                       max_branches=args.max_branches)
        data["cross_check"] = rep.to_json()
        if not rep.ok:
            _emit(args, f"{verdict}\nDISAGREEMENT between engines: {rep.to_json()}", data)
            return EXIT_DISAGREE
        text += "\nall engines agree (PT, ST, truth table)"
    _emit(args, text, data)
    return EXIT_OK if positive else EXIT_NEGATIVE


def cmd_status(args) -> int:
    d = parse_discourse(_read_input(args.input))
    try:
        phi = Literal.parse(args.target)
    except ValueError as e:
        raise UsageError(str(e)) from None
    t = _discourse_tableau(args, d)
    if t.root is not None and is_closed(t):
        _emit(args, "inconsistent: base tableau is closed", {"status": None, "consistent": False})
        return EXIT_INCONSISTENT
    rep = status_report(t, phi, **_caps(args))
    _emit(args, rep.status.value, {"target": str(phi), **rep.to_json()})
    return EXIT_OK


def _load_corpus(path):
    if path is None:
        return resources.files("presuptab").joinpath("data/paper.corpus").read_text(encoding="utf-8")
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run_entry(entry, rules=RuleSet.PT, **caps) -> dict:
    """Evaluate one corpus entry and compare against its expectations."""
    t = build(entry.input.formulas, entry.input.presup_map, rules, **caps)
    report = tableau_presuppositions(t)
    result = {
        "label": entry.label,
        "expected": _lits(entry.expected_presups),
        "actual": _lits(report.presuppositions) if report.consistent else "(inconsistent)",
        "status": {},
    }
    ok = report.consistent and report.agreement and report.presuppositions == entry.expected_presups
    for lit, want in sorted((entry.expected_status or {}).items(), key=lambda kv: literal_key(kv[0])):
        got = status_report(t, lit, **caps).status.value if report.consistent else None
        result["status"][str(lit)] = {"expected": want, "actual": got}
        ok = ok and got == want
    result["pass"] = ok
    return result


def cmd_corpus(args) -> int:
    entries = parse_corpus(_load_corpus(args.path))
    results = [run_entry(e, RuleSet(args.rules), **_caps(args)) for e in entries]
    failed = sum(not r["pass"] for r in results)
    lines = []
    for r in results:
        line = f"{'PASS' if r['pass'] else 'FAIL'}  {r['label']}: expected {r['expected']}, got {r['actual']}"
        for lit, s in r["status"].items():
            line += f"; {lit} {s['actual']} (expected {s['expected']})"
        lines.append(line)
    lines.append(f"{len(results) - failed}/{len(results)} entries passed")
    _emit(args, "\n".join(lines), {"entries": results, "passed": len(results) - failed,
                                   "failed": failed})
    return EXIT_CORPUS_FAIL if failed else EXIT_OK


def cmd_oracle(args) -> int:
    d = parse_discourse(_read_input(args.input))
    models = oracle.enumerate_models(d.formulas, max_atoms=args.max_atoms)
    names = sorted(oracle.universe_of(d.formulas))
    rows = sorted((tuple(Literal(a, True) in mdl for a in names) for mdl in models), reverse=True)
    text = [" ".join(names) if names else "(no atoms)"]
    text += [" ".join("T" if v else "F" for v in row) for row in rows]
    text.append(f"{len(rows)} model{'s' if len(rows) != 1 else ''}")
    data = {"atoms": names, "models": [dict(zip(names, row)) for row in rows]}
    if args.cross_check:
        rep = oracle.check_equivalence(d.formulas, d.presup_map, max_atoms=args.max_atoms,
                                       max_branches=args.max_branches)
        data["cross_check"] = rep.to_json()
        if not rep.ok:
            _emit(args, "\n".join(text) + f"\nDISAGREEMENT: {rep.to_json()}", data)
            return EXIT_DISAGREE
        text.append("PT open branches and ST/PT closure agree with the truth table")
    _emit(args, "\n".join(text), data)
    return EXIT_OK if rows else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rules", choices=["pt", "st"], default="pt",
                        help="expansion rules (default: pt)")
    common.add_argument("--format", choices=["text", "json"],
                        default=os.environ.get(FORMAT_ENV, "text"),
                        help=f"output format (default: text, or ${FORMAT_ENV})")
    common.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS, metavar="N")
    common.add_argument("--max-branches", type=int, default=DEFAULT_MAX_BRANCHES, metavar="N")

    parser = argparse.ArgumentParser(
        prog="presuptab",
        description="Presuppositional tableaux: expansion, decision and presupposition projection.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="parse and pretty-print a discourse")
    p.add_argument("input", help="formula or discourse text, or '-' for stdin")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("tableau", parents=[common], help="expand into a tableau")
    p.add_argument("input")
    p.set_defaults(func=cmd_tableau)

    p = sub.add_parser("presup", parents=[common], help="compute presuppositions")
    p.add_argument("input")
    p.set_defaults(func=cmd_presup)

    p = sub.add_parser("decide", parents=[common], help="decide validity or satisfiability")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--valid", dest="mode", action="store_const", const="valid")
    mode.add_argument("--sat", dest="mode", action="store_const", const="sat")
    p.add_argument("--cross-check", action="store_true",
                   help="also run ST rules and the truth table; exit 6 on disagreement")
    p.add_argument("input")
    p.set_defaults(func=cmd_decide, mode="sat")

    p = sub.add_parser("status", parents=[common],
                       help="classify a literal as satisfied, canceled, hybrid or independent")
    p.add_argument("input")
    p.add_argument("target", help="literal such as b or ~b")
    p.set_defaults(func=cmd_status)

    p = sub.add_parser("corpus", parents=[common], help="run a golden corpus file")
    p.add_argument("path", nargs="?", help="corpus file (default: bundled paper corpus)")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("oracle", parents=[common], help="truth-table models of a discourse")
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("input")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if args.format not in ("text", "json"):
        print(f"error: bad output format {args.format!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, InvalidPresupMap, CorpusFormatError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
