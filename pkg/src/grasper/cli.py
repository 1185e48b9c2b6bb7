"""``grasper`` command line: run scripts, reduce ring elements, run the suite."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ParseError
from .script import PASS, Report, emit_json, run_script
from .suite import paper_suite

EXIT_PARSE = 2


def _print_report(report: Report, as_json: bool) -> None:
    if as_json:
        print(emit_json(report))
        return
    for r in report.results:
        line = f"{r.status.upper():5} {r.name}"
        if r.lhs or r.rhs:
            line += f"\n      {r.lhs}  vs  {r.rhs}" if r.lhs and r.rhs else f"\n      {r.lhs or r.rhs}"
        if r.details:
            line += f"\n      {r.details}"
        print(line)
    print(report.summary())


def _run_file(path: str, as_json: bool) -> int:
    source = Path(path).read_text(encoding="utf-8")
    try:
        report = run_script(source, suite=Path(path).name)
    except ParseError as exc:
        print(f"{path}: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    _print_report(report, as_json)
    return report.exit_code()


def _reduce(manifold: str, text: str) -> int:
    try:
        report = run_script(f"manifold {manifold}\nreduce {text}\n", suite="reduce")
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    record = report.results[0]
    if record.status != PASS:
        print(record.details, file=sys.stderr)
        return report.exit_code()
    print(record.rhs)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grasper", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("eval", "run a script and print every result"), ("check", "run a script's checks")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p = sub.add_parser("reduce", help="normal form of a ring element")
    p.add_argument("-m", "--manifold", default="S4", help="manifold declaration, e.g. S4 or 'free(g1,g2)'")
    p.add_argument("ring")
    p = sub.add_parser("paper-suite", help="run the built-in identity and property checks")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("eval", "check"):
        return _run_file(args.file, args.json)
    if args.command == "reduce":
        return _reduce(args.manifold, args.ring)
    report = paper_suite()
    _print_report(report, args.json)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
