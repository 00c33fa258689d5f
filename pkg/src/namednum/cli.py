"""Command-line front end: run, solve, check, fmt, serve."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import EngineError
from .program import (
    agreement_check,
    check_helpful_independence,
    eval_by_name,
    eval_by_value,
    format_program,
    parse,
    render_symbolic_result,
    render_trace,
)

STORE_ENV_VAR = "NAMEDNUM_STORE"


def _load(path: str):
    return parse(Path(path).read_text())


def _cmd_run(args) -> int:
    program = _load(args.file)
    overrides = {}
    for setting in args.set or ():
        name, _, literal = setting.partition("=")
        if not _ or not name:
            raise EngineError(f"--set wants NAME=QUANTITY, got {setting!r}")
        probe = parse(
            "\n".join(
                [*_unit_lines(program), f"data {name.strip()} = {literal.strip()}",
                 f"X__probe := {name.strip()}", "return X__probe"]
            )
        )
        overrides[name.strip()] = probe.decl_quantity(probe.decls[0])
    trace = eval_by_value(program, overrides)
    print(render_trace(program, trace, overrides))
    return 0


def _unit_lines(program) -> list[str]:
    return [
        line
        for line in format_program(program).splitlines()
        if line.startswith(("unit ", "rate "))
    ]


def _cmd_solve(args) -> int:
    program = _load(args.file)
    names = args.let or [d.name for d in program.decls]
    result = eval_by_name(program, names)
    print(render_symbolic_result(result))
    return 0


def _cmd_check(args) -> int:
    program = _load(args.file)
    report = check_helpful_independence(program)
    if not report:
        print("no helpful numbers declared")
    for item in report.values():
        print(item.describe())
    agrees = agreement_check(program, trials=args.trials)
    print(
        f"call-by-name and call-by-value agree on {args.trials} random "
        f"assignments: {'yes' if agrees else 'NO'}"
    )
    return 0 if agrees else 1


def _cmd_fmt(args) -> int:
    program = _load(args.file)
    text = format_program(program)
    if args.write:
        Path(args.file).write_text(text)
    else:
        print(text, end="")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import WorksheetStore
    from .web import create_app

    store_dir = args.store or os.environ.get(STORE_ENV_VAR) or "worksheets"
    ui_dir = Path(args.ui) if args.ui else None
    app = create_app(WorksheetStore(store_dir), ui_dir=ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="namednum",
        description="Exact named-number step programs: evaluate, solve, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="evaluate a program on its concrete values")
    p_run.add_argument("file")
    p_run.add_argument(
        "--set",
        action="append",
        metavar="NAME=QUANTITY",
        help="override a data/helpful value, e.g. --set C='48 cherry'",
    )
    p_run.set_defaults(fn=_cmd_run)

    p_solve = sub.add_parser("solve", help="evaluate symbolically (call by name)")
    p_solve.add_argument("file")
    p_solve.add_argument(
        "--let",
        action="append",
        metavar="NAME",
        help="treat NAME as a letter; default: every data/helpful name",
    )
    p_solve.set_defaults(fn=_cmd_solve)

    p_check = sub.add_parser(
        "check", help="helpful-number independence report and evaluator agreement"
    )
    p_check.add_argument("file")
    p_check.add_argument("--trials", type=int, default=100)
    p_check.set_defaults(fn=_cmd_check)

    p_fmt = sub.add_parser("fmt", help="canonical source form")
    p_fmt.add_argument("file")
    p_fmt.add_argument("--write", action="store_true", help="rewrite the file in place")
    p_fmt.set_defaults(fn=_cmd_fmt)

    p_serve = sub.add_parser("serve", help="start the worksheet service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8123)
    p_serve.add_argument(
        "--store", help=f"worksheet directory (default ${STORE_ENV_VAR} or ./worksheets)"
    )
    p_serve.add_argument("--ui", help="directory of built UI assets to serve at /")
    p_serve.set_defaults(fn=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except EngineError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
