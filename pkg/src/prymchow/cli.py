"""Command-line entry point: ``prymchow verify | check <id> | dump <what> | list-checks``.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 on usage or internal errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks, pipeline
from .chern import chern_classes, sym_roots
from .polyring import by_power_of
from .projcalc import MAX_R, s_to_h

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
DUMP_TARGETS = ("envelope", "chern", "ideal", "sclasses")


class _Style:
    def __init__(self, stream):
        self.color = stream.isatty() and "NO_COLOR" not in os.environ

    def verdict(self, ok: bool) -> str:
        word = "PASS" if ok else "FAIL"
        if not self.color:
            return word
        return f"\033[{32 if ok else 31}m{word}\033[0m"


def _emit_json(obj, out):
    json.dump(obj, out, indent=2, sort_keys=False)
    out.write("\n")


def _exit_status(report: checks.VerificationReport) -> int:
    if report.internal_error:
        return EXIT_ERROR
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args, out) -> int:
    report = checks.run_all()
    if args.no_timing:
        report.timing_ms = 0
    if args.format == "json":
        _emit_json(report.to_json(), out)
        return _exit_status(report)
    style = _Style(out)
    for c in report.checks:
        print(f"{style.verdict(c.passed)} {c.id}: {c.detail}", file=out)
    thm = report.theorem
    gens = ", ".join(str(p) for p in thm.ideal.generators if p)
    print(f"assembled ideal: {len(thm.ideal)} nonzero generators", file=out)
    print(f"target ideal: ({', '.join(str(p) for p in thm.target)})", file=out)
    if not thm.verified:
        for f in thm.failures:
            print(f"  {f}", file=out)
        print(f"{style.verdict(False)} theorem not established from ({gens})", file=out)
    else:
        print(thm.presentation, file=out)
    return _exit_status(report)


def cmd_check(args, out) -> int:
    try:
        res = checks.run_check(args.id)
    except checks.UnknownCheck:
        print(f"unknown check {args.id!r}; valid ids: {', '.join(checks.REGISTRY)}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        _emit_json({"id": res.id, "pass": res.passed, "detail": res.detail,
                    "lines": [{"pass": ok, "text": t} for ok, t in res.lines]}, out)
    else:
        style = _Style(out)
        for ok, text in res.lines:
            print(f"{style.verdict(ok)} {text}", file=out)
        if res.error:
            print(f"ERROR {res.error}", file=out)
        print(f"{style.verdict(res.passed)} {res.id}: {res.detail}", file=out)
    if res.error:
        return EXIT_ERROR
    return EXIT_OK if res.passed else EXIT_FAIL


def _dump_rows(what: str) -> list[dict]:
    if what == "envelope":
        return [{"component": pf.component, "source": pf.source, "pushforward": str(pf.value),
                 "at_h_eq_b1_plus_g": str(pf.substituted())}
                for pf in pipeline.envelope_pushforwards()]
    if what == "chern":
        rows = []
        for k in range(1, MAX_R + 1):
            spec = sym_roots(k, dual=True)
            for i, c in enumerate(chern_classes(spec, "beta")):
                rows.append({"name": f"c{i}({spec.label})", "value": str(c)})
        return rows
    if what == "ideal":
        return [{"provenance": prov, "generator": str(p)}
                for p, prov in pipeline.assemble_final_ideal()]
    rows = []
    for r in range(MAX_R + 1):
        for j in range(r + 1):
            rows.append({"name": f"s_{r}^{j}",
                         "c": s_to_h(r, j).to_string(key=by_power_of("h"), spaced=True),
                         "beta": s_to_h(r, j, "beta").to_string(key=by_power_of("h"), spaced=True)})
    return rows


def cmd_dump(args, out) -> int:
    rows = _dump_rows(args.what)
    if args.format == "json":
        _emit_json({"what": args.what, "rows": rows}, out)
        return EXIT_OK
    for row in rows:
        if args.what == "envelope":
            print(f"{row['component']}/{row['source']}: {row['pushforward']}", file=out)
            print(f"    at h=b1+g: {row['at_h_eq_b1_plus_g']}", file=out)
        elif args.what == "chern":
            print(f"{row['name']} = {row['value']}", file=out)
        elif args.what == "ideal":
            print(f"{row['generator']}    [{row['provenance']}]", file=out)
        else:
            print(f"{row['name']} = {row['beta']}    (E generic: {row['c']})", file=out)
    return EXIT_OK


def cmd_list(args, out) -> int:
    if args.format == "json":
        _emit_json(list(checks.REGISTRY), out)
    else:
        for cid in checks.REGISTRY:
            print(cid, file=out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    parser = _Parser(prog="prymchow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", parents=[fmt], help="run every check and the theorem comparison")
    v.add_argument("--no-timing", action="store_true", help="report timing_ms as 0 for byte-stable output")
    v.set_defaults(func=cmd_verify)
    c = sub.add_parser("check", parents=[fmt], help="run one named check")
    c.add_argument("id")
    c.set_defaults(func=cmd_check)
    d = sub.add_parser("dump", parents=[fmt], help="print intermediate objects")
    d.add_argument("what", choices=DUMP_TARGETS)
    d.set_defaults(func=cmd_dump)
    ls = sub.add_parser("list-checks", parents=[fmt], help="list registered check ids")
    ls.set_defaults(func=cmd_list)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
