"""Command line interface.

    pineta eval <expr>
    pineta compare <exprA> <exprB>
    pineta cover <expr>
    pineta tables <target>|all

Exit codes: 0 success, 1 usage or parse error, 2 evaluation error,
3 golden-table mismatch.
"""

from __future__ import annotations

import argparse
import sys

from .report import (
    compare_data,
    cover_data,
    dumps,
    render_compare_text,
    render_cover_text,
    render_text,
    report_data,
)
from .errors import ParseError, PinetaError
from .oracle import DEFAULT_MAX_ENUM, brute_eta_set, check_laws
from .parser import parse
from .invariants import eta_set, pin_plus
from .tables import TARGETS, reproduce

EXIT_OK, EXIT_USAGE, EXIT_EVAL, EXIT_GOLDEN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--oracle", action="store_true",
                        help="cross-check eta sets against brute-force enumeration")
    common.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM, metavar="N",
                        help="enumeration bound for the oracle (default 2^20)")

    p = _Parser(prog="pineta", description="Pin+ eta-invariant engine for closed 4-manifolds")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    e = sub.add_parser("eval", parents=[common], help="invariants and eta profile of an expression")
    e.add_argument("expr")
    c = sub.add_parser("compare", parents=[common], help="homeomorphism and smooth verdicts")
    c.add_argument("left")
    c.add_argument("right")
    v = sub.add_parser("cover", parents=[common], help="orientation double cover")
    v.add_argument("expr")
    t = sub.add_parser("tables", parents=[common], help="reproduce a results table")
    t.add_argument("target", choices=TARGETS + ("all",))
    return p


def _oracle_check(x, max_enum):
    if pin_plus(x) and brute_eta_set(x, max_enum) != eta_set(x):
        raise PinetaError(f"oracle disagrees on {x}")


def _run(args) -> int:
    if args.command == "eval":
        x = parse(args.expr)
        data = report_data(x, oracle=args.oracle, max_enum=args.max_enum)
        print(dumps(data) if args.format == "json" else render_text(data))
        if data["oracle"] is not None and not data["oracle"]["agrees"]:
            return EXIT_EVAL
        return EXIT_OK
    if args.command == "compare":
        x, y = parse(args.left), parse(args.right)
        if args.oracle:
            _oracle_check(x, args.max_enum)
            _oracle_check(y, args.max_enum)
        data = compare_data(x, y)
        print(dumps(data) if args.format == "json" else render_compare_text(data))
        return EXIT_OK
    if args.command == "cover":
        data = cover_data(parse(args.expr))
        print(dumps(data) if args.format == "json" else render_cover_text(data))
        return EXIT_OK
    if args.command == "tables":
        targets = TARGETS if args.target == "all" else (args.target,)
        tables = [reproduce(t) for t in targets]
        ok = all(t.ok for t in tables)
        laws = check_laws(args.max_enum) if args.oracle else None
        if laws is not None:
            ok = ok and laws.ok
        if args.format == "json":
            doc = {"tables": [t.to_data() for t in tables], "ok": ok}
            if laws is not None:
                doc["laws"] = [{"name": n, "ok": k, "detail": d} for n, k, d in laws.checks]
            print(dumps(doc))
        else:
            print("\n\n".join(t.to_text() for t in tables))
            if laws is not None:
                print(f"\noracle laws: {'PASS' if laws.ok else 'FAIL'} ({len(laws.checks)} checks)")
                for name, _, detail in laws.failures():
                    print(f"  FAIL {name} {detail}")
        return EXIT_OK if ok else EXIT_GOLDEN
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except PinetaError as err:
        print(f"evaluation error: {err}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
