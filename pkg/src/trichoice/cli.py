"""Command-line entry point: ``trichoice <subcommand> ...``.

Exit codes: 0 success, 1 finding or mismatch, 2 usage, parse or
validation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from trichoice.engine import decide_acceptance, run_relations
from trichoice.harness.cook import cook_exponent, parse_exceptions
from trichoice.harness.diff import diff_run, dump_relations, parse_input
from trichoice.harness.fuzz import FuzzConfig, fuzz, smallest_pi
from trichoice.harness.headmath import headmath_table
from trichoice.harness.machine_file import (
    MachineFileError,
    parse_machine,
    serialize_machine,
    validate_machine,
)
from trichoice.ntm import NtmSpec
from trichoice.oracle import EnumerationBudget, StateSpaceExceeded, config_bfs_accepts, oracle_relations
from trichoice.pm import PmSpec, TapeGeometry
from trichoice.reduction import ReductionError, compile_ntm_to_pm

OK, FINDING, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _load(path: str, kind: type | None = None) -> NtmSpec | PmSpec:
    try:
        spec = parse_machine(Path(path).read_text())
    except OSError as e:
        raise UsageError(str(e)) from e
    except MachineFileError as e:
        raise UsageError(f"{path}:\n{e}") from e
    problems = validate_machine(spec)
    if problems:
        raise UsageError(f"{path}: invalid machine\n" + "\n".join(problems))
    if kind is not None and not isinstance(spec, kind):
        raise UsageError(f"{path}: expected a {'pm' if kind is PmSpec else 'ntm'} machine")
    return spec


def _geometry(input, pi: int | None) -> TapeGeometry:
    try:
        return TapeGeometry(len(input), pi or smallest_pi(len(input)))
    except ValueError as e:
        raise UsageError(str(e)) from e


def cmd_validate(args) -> int:
    try:
        spec = parse_machine(Path(args.file).read_text())
    except OSError as e:
        raise UsageError(str(e)) from e
    except MachineFileError as e:
        print("\n".join(e.diagnostics))
        return USAGE
    problems = validate_machine(spec)
    for p in problems:
        print(p)
    if problems:
        return USAGE
    print("ok")
    return OK


def cmd_run(args) -> int:
    spec = _load(args.machine)
    input = parse_input(args.input)
    if isinstance(spec, NtmSpec):
        if args.engine == "oracle" and args.k is None:
            res = config_bfs_accepts(spec, input, bound=args.bound + 1)
            _print_verdict(res.accepted, res.time)
            return OK
        if args.k is None:
            raise UsageError("the trichoice engine runs periodic machines; pass --k to reduce an ntm first")
        out = compile_ntm_to_pm(spec, args.k)
        spec, input, geometry = out.pm, out.tape_input(input), out.geometry(len(input))
    else:
        geometry = _geometry(input, args.pi)
    if args.engine == "trichoice":
        d = decide_acceptance(spec, input, geometry, args.bound)
        _print_verdict(d.accepted, None if d.time is None else d.time + 1)
    else:
        res = config_bfs_accepts(spec, input, geometry, args.bound + 1)
        _print_verdict(res.accepted, res.time)
    return OK


def _print_verdict(accepted: bool, moves: int | None) -> None:
    print(f"verdict={'accept' if accepted else 'reject'}")
    if accepted:
        print(f"moves={moves}")


def cmd_reduce(args) -> int:
    spec = _load(args.machine, NtmSpec)
    try:
        out = compile_ntm_to_pm(spec, args.k)
    except ReductionError as e:
        print(e, file=sys.stderr)
        return USAGE
    text = serialize_machine(out.pm)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return OK


def cmd_relations(args) -> int:
    spec = _load(args.machine, PmSpec)
    input = parse_input(args.input)
    geometry = _geometry(input, args.pi)
    if args.oracle:
        rel = oracle_relations(spec, input, geometry, args.t)
        if not rel.exhausted:
            print("# oracle budget exhausted; relations are partial", file=sys.stderr)
        relations = rel.relations
    else:
        relations = run_relations(spec, input, geometry, args.t).relations
    sys.stdout.write(dump_relations(relations))
    return OK


def cmd_diff(args) -> int:
    spec = _load(args.machine, PmSpec)
    input = parse_input(args.input)
    geometry = _geometry(input, args.pi)
    tmax = args.tmax if args.tmax is not None else 4 * geometry.pi
    report = diff_run(spec, input, geometry, tmax)
    sys.stdout.write(report.render())
    return FINDING if report.verdict.value in ("ENGINE_SUPERSET", "MISSING") else OK


def cmd_fuzz(args) -> int:
    config = FuzzConfig(
        seed=args.seed,
        trials=args.trials,
        out=Path(args.out),
        max_states=args.max_states,
        max_input_symbols=args.max_input_symbols,
        max_symbols=args.max_symbols,
        max_pi=args.max_pi,
        horizon_multiplier=args.horizon_multiplier,
        workers=args.workers,
        shrink=not args.no_shrink,
        budget=EnumerationBudget(node_cap=args.node_cap),
    )
    try:
        summary = fuzz(config)
    except OSError as e:
        print(f"fuzz: {e}", file=sys.stderr)
        return FINDING
    sys.stdout.write(summary.render())
    return FINDING if summary.has_findings else OK


def cmd_headmath(args) -> int:
    if args.pi < 1 or args.pi & (args.pi - 1):
        raise UsageError(f"--pi must be a power of two, got {args.pi}")
    rows, ok = headmath_table(args.pi, args.tmax)
    print("t h w r")
    for t, h, w, r in rows:
        print(f"{t} {h} {'-' if w is None else w} {r}")
    return OK if ok else FINDING


def cmd_cook(args) -> int:
    exceptions = {}
    if args.exceptions:
        try:
            exceptions = parse_exceptions(Path(args.exceptions).read_text())
        except (OSError, ValueError) as e:
            raise UsageError(str(e)) from e
    print(f"k_prime={cook_exponent(args.k, args.c, exceptions)}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trichoice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="parse and validate a machine file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="decide acceptance within a time bound")
    p.add_argument("--machine", required=True)
    p.add_argument("--input", default="")
    p.add_argument("--bound", type=int, required=True, help="last time index to simulate")
    p.add_argument("--engine", choices=("trichoice", "oracle"), default="trichoice")
    p.add_argument("--pi", type=int)
    p.add_argument("--k", type=int, help="reduce an ntm with this time exponent first")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("reduce", help="compile an ntm into a periodic machine")
    p.add_argument("--machine", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("relations", help="dump S_0..S_t (or R_0..R_t with --oracle)")
    p.add_argument("--machine", required=True)
    p.add_argument("--input", default="")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--pi", type=int)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("diff", help="compare engine and oracle on one instance")
    p.add_argument("--machine", required=True)
    p.add_argument("--input", default="")
    p.add_argument("--tmax", type=int)
    p.add_argument("--pi", type=int)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("fuzz", help="seeded differential campaign")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--max-input-symbols", type=int, default=2)
    p.add_argument("--max-symbols", type=int, default=3)
    p.add_argument("--max-pi", type=int, default=8)
    p.add_argument("--horizon-multiplier", type=int, default=4)
    p.add_argument("--node-cap", type=int, default=200_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-shrink", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("headmath", help="tabulate h, w, r for a workspace")
    p.add_argument("--pi", type=int, required=True)
    p.add_argument("--tmax", type=int, required=True)
    p.set_defaults(func=cmd_headmath)

    p = sub.add_parser("cook", help="exponent k' with f(n) <= n^k' + k'")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--exceptions")
    p.set_defaults(func=cmd_cook)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except ReductionError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except StateSpaceExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return FINDING


if __name__ == "__main__":
    sys.exit(main())
