"""Command-line front end: ``logdegen analyze | graph | verify``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .degeneration import CurveError
from .document import DocumentParseError, load, to_dot
from .report import analyze
from .suites import SUITES, run_suite

EXIT_OK, EXIT_PARSE, EXIT_USAGE = 0, 1, 2

DOC_HELP = """\
Curve files are JSON objects:
  {"components": [{"id": "C", "genus": 0}, ...],
   "nodes": [{"id": "x", "branches": ["C", "C"], "nu": 1}, ...]}
The order of a node's two branches fixes its orientation: d_x = first - second.
"nu" defaults to 1.
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str):
    try:
        return load(path)
    except FileNotFoundError:
        print(f"error: {path}: no such file", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    except DocumentParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    except CurveError as exc:
        print(f"error: {path}: field {exc.field}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def cmd_analyze(args) -> int:
    data = _read(args.file)
    try:
        rep = analyze(data, args.gamma)
    except CurveError as exc:
        print(f"error: {args.file}: field {exc.field}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(rep.to_json() if args.format == "json" else rep.to_text())
    return EXIT_OK


def cmd_graph(args) -> int:
    data = _read(args.file)
    Path(args.dot).write_text(to_dot(data), encoding="utf-8")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; choose from {', '.join([*SUITES, 'all'])}",
              file=sys.stderr)
        return EXIT_USAGE
    if args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    results = run_suite(args.suite, args.trials, args.seed)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.suite:<12} {r.name:<48} {r.passed}/{r.passed + r.failed}")
        for e in r.errors[:3]:
            print(f"      {e}")
    ok = all(r.ok for r in results)
    print(f"{'all passed' if ok else 'FAILURES'} ({len(results)} properties, "
          f"{args.trials} trials, seed {args.seed}, {time.perf_counter() - start:.1f}s)")
    return EXIT_OK if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="logdegen", description="Invariants of one-parameter degenerations of nodal curves.",
                epilog=DOC_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="full report for a curve file", epilog=DOC_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    a.add_argument("file")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--gamma", type=int, default=1, metavar="K",
                   help="use K times the chosen generator of the inertia group (default 1)")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("graph", help="write the dual graph as DOT", epilog=DOC_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    g.add_argument("file")
    g.add_argument("--dot", required=True, metavar="OUT")
    g.set_defaults(func=cmd_graph)

    v = sub.add_parser("verify", help="run a seeded randomized invariant suite")
    v.add_argument("--suite", required=True, help=f"one of {', '.join([*SUITES, 'all'])}")
    v.add_argument("--trials", type=int, default=25)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
