"""Command line front end: solve sessions, run scenario files, check
decomposability, export DOT, or serve the HTTP API.

Exit codes: 0 success, 2 schema or validation error, 3 group not
decomposable, 4 solver gave up (guard exceeded or contradictory session).
Errors print a single stderr line of the form ``error[Code]: message``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import GuardExceeded, NotDecomposable, NotSolvable, RgtError
from .group import RelationshipGraph, decompose
from .scenario import (
    ChoiceRecord,
    FinalRecord,
    FinalSession,
    InfluenceRecord,
    Scenario,
    ScenarioReport,
    alt_text,
    run_scenario,
)
from .serial import (
    check_version,
    dump_text,
    load_document,
    parse_graph,
    parse_scenario,
    parse_session_doc,
    report_to_doc,
    session_result_to_doc,
)
from .solver import SessionResult, render_diagonal_form, solve_session


def _exit_code(error: RgtError) -> int:
    if isinstance(error, NotDecomposable):
        return 3
    if isinstance(error, (NotSolvable, GuardExceeded)):
        return 4
    return 2


def _error_line(error: RgtError) -> str:
    line = f"error[{error.code}]: {error}"
    if error.detail is not None:
        line += f" | detail: {json.dumps(error.detail, ensure_ascii=False)}"
    return line


def _session_text(result: SessionResult) -> str:
    lines = [f"polynomial: {result.polynomial.render()}"]
    for subject in result.subjects:
        lines.append(result.equations[subject].render())
    for number, branch in enumerate(result.branches, start=1):
        chosen = ", ".join(
            "{" + "; ".join(f"{s} = {alt_text(v)}" for s, v in sorted(a.items())) + "}"
            for a in branch.assignments
        )
        suffix = f" under {chosen}" if chosen != "{}" else ""
        lines.append(f"branch {number}{suffix}:")
        for subject in result.subjects:
            lines.append(f"  {branch.intervals[subject].describe()}")
    return "\n".join(lines) + "\n"


def _graph_from_doc(doc: dict) -> RelationshipGraph:
    check_version(doc)
    if isinstance(doc.get("graph"), dict):
        doc = doc["graph"]
    return parse_graph(doc.get("subjects"), doc.get("relations"))


def _trace_entries(report: ScenarioReport) -> list[tuple[int, str]]:
    entries = []
    step = 0
    for record in report.state.stage_log:
        if isinstance(record, ChoiceRecord):
            continue
        step += 1
        if isinstance(record, (InfluenceRecord, FinalRecord)):
            entries.append((step, render_diagonal_form(record.session.polynomial)))
    return entries


def cmd_solve(args: argparse.Namespace) -> int:
    doc = load_document(args.input)
    _, graph, matrix, bound = parse_session_doc(doc)
    if args.bound is not None:
        bound = args.bound
    result = solve_session(decompose(graph), matrix, bound)
    if args.json:
        sys.stdout.write(dump_text(session_result_to_doc(result)))
    else:
        sys.stdout.write(_session_text(result))
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    scenario = parse_scenario(load_document(args.input))
    if args.bound is not None:
        stages = tuple(
            FinalSession(args.bound) if isinstance(s, FinalSession) else s
            for s in scenario.stages
        )
        scenario = Scenario(
            scenario.universe, scenario.graph, stages, scenario.parallel_blocks
        )
    report = run_scenario(scenario)
    if args.json:
        doc = report_to_doc(report)
        if args.trace:
            doc["trace"] = [
                {"step": step, "diagonal_form": text}
                for step, text in _trace_entries(report)
            ]
        sys.stdout.write(dump_text(doc))
    else:
        sys.stdout.write(report.render_text())
        if args.trace:
            for step, text in _trace_entries(report):
                sys.stdout.write(f"diagonal form (step {step}):\n{text}\n")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    graph = _graph_from_doc(load_document(args.input))
    polynomial = decompose(graph)
    if args.json:
        sys.stdout.write(dump_text({"polynomial": polynomial.render()}))
    else:
        sys.stdout.write(polynomial.render() + "\n")
    return 0


def cmd_export_dot(args: argparse.Namespace) -> int:
    graph = _graph_from_doc(load_document(args.input))
    text = graph.to_dot()
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(
        snapshot_dir=os.environ.get("RGT_SNAPSHOT_DIR"),
        static_dir=args.static,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rgt", description="group decision engine over alliance/conflict graphs"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="solve one influence session")
    solve.add_argument("input", help="session JSON file")
    solve.add_argument("--json", action="store_true", help="machine-readable output")
    solve.add_argument("--bound", type=_positive_int, help="enumeration bound override")
    solve.set_defaults(func=cmd_solve)

    run = commands.add_parser("run", help="run a scenario file to completion")
    run.add_argument("input", help="scenario JSON file")
    run.add_argument("--json", action="store_true", help="machine-readable report")
    run.add_argument("--bound", type=_positive_int, help="final-stage bound override")
    run.add_argument(
        "--trace", action="store_true", help="include diagonal-form renderings"
    )
    run.set_defaults(func=cmd_run)

    check = commands.add_parser("check", help="print the polynomial of a graph")
    check.add_argument("input", help="graph, session or scenario JSON file")
    check.add_argument("--json", action="store_true")
    check.set_defaults(func=cmd_check)

    export = commands.add_parser("export-dot", help="write the graph in DOT format")
    export.add_argument("input", help="graph, session or scenario JSON file")
    export.add_argument("-o", "--output", help="output path (default stdout)")
    export.set_defaults(func=cmd_export_dot)

    serve = commands.add_parser("serve", help="start the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument(
        "--static",
        help="directory to serve at / (e.g. the built web console)",
    )
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RgtError as exc:
        print(_error_line(exc), file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
