"""Command line front end.

One subcommand per problem; instances arrive as JSON documents on stdin
or from a file.  Exit codes: 0 solved, 1 unreadable or malformed input,
2 well-formed but invalid instance, 3 oracle verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import model, oracle, placement, scheduling, sequencing

EXIT_OK = 0
EXIT_DOCUMENT = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input-level problems, not invalid instances:
    # report them on exit code 1, leaving 2 to semantic validation
    def error(self, message):
        raise _UsageError(message)


def _add_common(sub):
    sub.add_argument("file", nargs="?", default=None,
                     help="instance document; '-' or omitted reads stdin")
    sub.add_argument("--input", dest="input_path", metavar="PATH",
                     help="read the instance from PATH (overrides FILE)")
    sub.add_argument("--verify", action="store_true",
                     help="re-solve with the brute-force oracle and compare")
    sub.add_argument("--json", action="store_true", dest="as_json",
                     help="emit the report as canonical JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dtso",
                     description="Exact data-transfer optimization solvers.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("kcenter",
                          help="place K connected servers, minimax distance")
    _add_common(sub)
    sub.set_defaults(handler=_run_kcenter)

    sub = subs.add_parser("kmedian",
                          help="place K connected servers, total distance")
    _add_common(sub)
    sub.set_defaults(handler=_run_kmedian)

    sub = subs.add_parser("sequence",
                          help="best swap choices for a packet sequence")
    _add_common(sub)
    sub.add_argument("--trace", action="store_true",
                     help="print the decomposition walk to stderr")
    sub.set_defaults(handler=_run_sequence)

    sub = subs.add_parser("schedule",
                          help="minimum makespan over disjoint paths")
    _add_common(sub)
    sub.set_defaults(handler=_run_schedule)
    return parser


def _read_input(args) -> str:
    path = args.input_path or args.file or "-"
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(args, report: model.SolveReport, extra_lines):
    if args.as_json:
        print(model.serialize_report(report))
        return
    print(f"objective: {report.objective}")
    for line in extra_lines:
        print(line)
    if report.verified is not None:
        print(f"verified: {json.dumps(report.verified)}")


def _finish(args, objective, witness, witness_lines, checks):
    """Assemble the report; checks are (label, reference objective) pairs."""
    verified = None
    if checks is not None:
        verified = True
        for label, value in checks:
            if value != objective:
                verified = False
                print(f"verification mismatch: solver {objective}, "
                      f"{label} {value}", file=sys.stderr)
    _emit(args, model.SolveReport(objective, witness, verified), witness_lines)
    return EXIT_MISMATCH if verified is False else EXIT_OK


def _run_kcenter(args, text):
    inst = model.parse_placement(text)
    res = placement.solve_k_center(inst)
    checks = [("oracle", oracle.brute_placement(inst, "center"))] \
        if args.verify else None
    return _finish(args, res.objective, {"q": res.q}, [f"q: {res.q}"], checks)


def _run_kmedian(args, text):
    inst = model.parse_placement(text)
    res = placement.solve_k_median(inst)
    checks = [("oracle", oracle.brute_placement(inst, "median"))] \
        if args.verify else None
    return _finish(args, res.objective, {"q": res.q}, [f"q: {res.q}"], checks)


def _run_sequence(args, text):
    inst = model.parse_sequencing(text)
    if args.trace:
        print(sequencing.decomposition_trace(inst), file=sys.stderr, end="")
    res = sequencing.solve_sequencing(inst)
    checks = [("oracle", oracle.brute_sequencing(inst))] \
        if args.verify else None
    swapped = list(res.swapped)
    return _finish(args, res.objective, {"swapped": swapped},
                   [f"swapped: {json.dumps(swapped)}",
                    f"order: {json.dumps(list(res.final_order))}"], checks)


def _run_schedule(args, text):
    inst = model.parse_scheduling(text)
    if inst.q == inst.p:
        res = scheduling.greedy_schedule(inst)
    else:
        res = scheduling.binary_search_makespan(inst)
    checks = None
    if args.verify:
        checks = [("oracle", oracle.brute_schedule(inst))]
        if inst.q == inst.p:
            checks.append(("binary search",
                           scheduling.binary_search_makespan(inst).makespan))
    lines = ["path_index,ci,ps,count,finish_time"]
    for i, (path, cnt) in enumerate(zip(inst.paths, res.counts), start=1):
        finish = path.ci + cnt * path.ps if cnt else 0
        lines.append(f"{i},{path.ci},{path.ps},{cnt},{finish}")
    return _finish(args, res.makespan, {"counts": list(res.counts)},
                   lines, checks)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_DOCUMENT
    try:
        text = _read_input(args)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_DOCUMENT
    try:
        return args.handler(args, text)
    except model.DocumentError as exc:
        print(f"document error: {exc}", file=sys.stderr)
        return EXIT_DOCUMENT
    except model.ValidationError as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (oracle.InstanceTooLarge, oracle.TooManyPairs) as exc:
        print(f"verification unavailable: {exc}", file=sys.stderr)
        return EXIT_DOCUMENT


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
