"""Command-line front end for the document pipeline.

Subcommands: check, flatten, complete, behaviors, refines, consistent,
compose, transform.  Data (documents, trace sets) goes to standard output or
``--output``; error text and verdict side-channels go to standard error, so
the data stream always stays parseable.

Exit codes: 0 success / positive verdict, 1 negative verdict (refuted,
inconsistent), 2 usage, parse or context-condition errors, 3 size-cap
overflows.

Configuration precedence: flags, then the environment variables HMA_DEPTH,
HMA_CHAOS_CAP and HMA_TRACE_CAP, then built-in defaults.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from hma.behavior import DEFAULT_TRACE_CAP, behaviors, trace_intersection
from hma.complete import DEFAULT_CHAOS_CAP, complete_chaos, complete_ignore
from hma.core import ERROR, Hma, check_context_conditions
from hma.errors import HmaError, SizeCapError
from hma.flatten import embed, flatten
from hma.refine import RuleApplication, apply_rule, check_refinement, parse_rule_line
from hma.textio import parse_hma, serialize_hma, serialize_traces

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CAP = 3

_ENV_VARS = (("HMA_DEPTH", 3), ("HMA_CHAOS_CAP", DEFAULT_CHAOS_CAP), ("HMA_TRACE_CAP", DEFAULT_TRACE_CAP))


@dataclass(frozen=True)
class RunConfig:
    """One invocation's effective settings."""

    depth: int = 3
    mode: str = "spec"  # impl | spec
    strictness: str = "strict"  # lenient | strict
    chaos_cap: int = DEFAULT_CHAOS_CAP
    trace_cap: int = DEFAULT_TRACE_CAP
    output: str | None = None

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if self.chaos_cap <= 0 or self.trace_cap <= 0:
            raise ValueError("caps must be positive")


class _Failure(Exception):
    def __init__(self, code, lines):
        super().__init__("\n".join(lines))
        self.code = code
        self.lines = lines


def _env_default(name, fallback):
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise _Failure(EXIT_USAGE, [f"error: {name} must be an integer, got {raw!r}"]) from None


def _load(path: str) -> Hma:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Failure(EXIT_USAGE, [f"error: cannot read {path}: {exc}"]) from None
    result = parse_hma(text, path)
    if isinstance(result, list):
        raise _Failure(EXIT_USAGE, [f"error: {e}" for e in result])
    return result


def _require(h: Hma, strictness: str):
    diags = check_context_conditions(h, strictness)
    errors = [d for d in diags if d.severity == ERROR]
    if errors:
        raise _Failure(EXIT_USAGE, [f"error: {d}" for d in errors])


def _emit(config: RunConfig, text: str):
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _config(args) -> RunConfig:
    try:
        return RunConfig(
            depth=getattr(args, "depth", 3),
            mode=getattr(args, "mode", "spec"),
            strictness=getattr(args, "strictness", "strict"),
            chaos_cap=getattr(args, "chaos_cap", DEFAULT_CHAOS_CAP),
            trace_cap=getattr(args, "trace_cap", DEFAULT_TRACE_CAP),
            output=getattr(args, "output", None),
        )
    except ValueError as exc:
        raise _Failure(EXIT_USAGE, [f"error: {exc}"]) from None


def _completed(h: Hma, config: RunConfig):
    flat = flatten(h)
    if config.mode == "impl":
        return complete_ignore(flat)
    return complete_chaos(flat, config.chaos_cap)


def _cmd_check(args):
    config = _config(args)
    h = _load(args.file)
    diags = check_context_conditions(h, config.strictness)
    _emit(config, "".join(f"{d}\n" for d in diags))
    return EXIT_USAGE if any(d.severity == ERROR for d in diags) else EXIT_OK


def _cmd_flatten(args):
    config = _config(args)
    h = _load(args.file)
    _require(h, config.strictness)
    _emit(config, serialize_hma(embed(flatten(h))))
    return EXIT_OK


def _cmd_complete(args):
    config = _config(args)
    h = _load(args.file)
    _require(h, config.strictness)
    _emit(config, serialize_hma(embed(_completed(h, config))))
    return EXIT_OK


def _cmd_behaviors(args):
    config = _config(args)
    h = _load(args.file)
    _require(h, config.strictness)
    result = behaviors(_completed(h, config), config.depth, config.trace_cap)
    _emit(config, serialize_traces(result))
    return EXIT_OK


def _cmd_refines(args):
    config = _config(args)
    if config.mode == "impl":
        raise _Failure(
            EXIT_USAGE,
            ["error: refinement is defined for specification semantics; "
             "--mode impl is not meaningful here"],
        )
    refiner = _load(args.refiner)
    refinee = _load(args.refinee)
    verdict = check_refinement(refiner, refinee, config.depth, config.chaos_cap, config.trace_cap)
    _emit(config, verdict.render() + "\n")
    return EXIT_OK if verdict.counterexample is None else EXIT_NEGATIVE


def _cmd_consistent(args):
    config = _config(args)
    h = _load(args.file)
    _require(h, config.strictness)
    result = behaviors(complete_chaos(flatten(h), config.chaos_cap), config.depth, config.trace_cap)
    ok = len(result) > 0
    _emit(config, ("consistent" if ok else "inconsistent") + "\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_compose(args):
    config = _config(args)
    first = _load(args.first)
    second = _load(args.second)
    _require(first, config.strictness)
    _require(second, config.strictness)
    a = behaviors(_completed(first, config), config.depth, config.trace_cap)
    b = behaviors(_completed(second, config), config.depth, config.trace_cap)
    _emit(config, serialize_traces(trace_intersection(a, b)))
    return EXIT_OK


def _cmd_transform(args):
    config = _config(args)
    h = _load(args.file)
    if args.rule:
        applications = [RuleApplication(args.rule[0].replace("-", "_"), tuple(args.rule[1:]))]
    else:
        try:
            script = Path(args.script).read_text(encoding="utf-8")
        except OSError as exc:
            raise _Failure(EXIT_USAGE, [f"error: cannot read {args.script}: {exc}"]) from None
        lines = [ln for ln in script.splitlines() if ln.strip() and not ln.lstrip().startswith("//")]
        applications = [parse_rule_line(ln) for ln in lines]
        if not applications:
            raise _Failure(EXIT_USAGE, [f"error: no rule applications in {args.script}"])
    result = h
    for app in applications:
        result = apply_rule(result, app)
    verdict = check_refinement(result, h, config.depth, config.chaos_cap, config.trace_cap)
    _emit(config, serialize_hma(result))
    print(verdict.render(), file=sys.stderr)
    return EXIT_OK if verdict.counterexample is None else EXIT_NEGATIVE


def build_parser(env_depth, env_chaos, env_trace) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hma",
        description="Workbench for hierarchical Mealy automata: check, flatten, "
        "complete, enumerate behaviors, and test refinement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, depth=False, mode=False, strictness=False, caps=False, output=False):
        if depth:
            p.add_argument("--depth", type=int, default=env_depth,
                           help=f"enumeration bound (default {env_depth})")
        if mode:
            p.add_argument("--mode", choices=("impl", "spec"), default="spec",
                           help="completion variant (default spec)")
        if strictness:
            p.add_argument("--strictness", choices=("lenient", "strict"), default="strict",
                           help="context-condition level (default strict)")
        if caps:
            p.add_argument("--chaos-cap", dest="chaos_cap", type=int, default=env_chaos,
                           help="max transitions after chaos completion")
            p.add_argument("--trace-cap", dest="trace_cap", type=int, default=env_trace,
                           help="max enumerated traces")
        if output:
            p.add_argument("--output", help="write the data stream to this file")

    p = sub.add_parser("check", help="report context-condition diagnostics")
    p.add_argument("file")
    common(p, strictness=True, output=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("flatten", help="remove the state hierarchy")
    p.add_argument("file")
    common(p, strictness=True, output=True)
    p.set_defaults(func=_cmd_flatten)

    p = sub.add_parser("complete", help="complete the flattened automaton")
    p.add_argument("file")
    common(p, mode=True, strictness=True, caps=True, output=True)
    p.set_defaults(func=_cmd_complete)

    p = sub.add_parser("behaviors", help="enumerate the bounded trace set")
    p.add_argument("file")
    common(p, depth=True, mode=True, strictness=True, caps=True, output=True)
    p.set_defaults(func=_cmd_behaviors)

    p = sub.add_parser("refines", help="check trace-set inclusion of two documents")
    p.add_argument("refiner", help="the candidate refinement")
    p.add_argument("refinee", help="the document being refined")
    common(p, depth=True, mode=True, caps=True, output=True)
    p.set_defaults(func=_cmd_refines)

    p = sub.add_parser("consistent", help="test whether the document has any implementation")
    p.add_argument("file")
    common(p, depth=True, strictness=True, caps=True, output=True)
    p.set_defaults(func=_cmd_consistent)

    p = sub.add_parser("compose", help="intersect the specification semantics of two documents")
    p.add_argument("first")
    p.add_argument("second")
    common(p, depth=True, strictness=True, caps=True, output=True)
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("transform", help="apply transformation rules and verify soundness")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rule", nargs="+", metavar=("NAME", "ARG"),
                       help="one rule application: NAME ARG...")
    group.add_argument("--script", help="file with one rule application per line")
    common(p, depth=True, caps=True, output=True)
    p.set_defaults(func=_cmd_transform)

    return parser


def main(argv=None) -> int:
    try:
        env_depth = _env_default("HMA_DEPTH", 3)
        env_chaos = _env_default("HMA_CHAOS_CAP", DEFAULT_CHAOS_CAP)
        env_trace = _env_default("HMA_TRACE_CAP", DEFAULT_TRACE_CAP)
        parser = build_parser(env_depth, env_chaos, env_trace)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_USAGE if exc.code else EXIT_OK
        return args.func(args)
    except _Failure as exc:
        for line in exc.lines:
            print(line, file=sys.stderr)
        return exc.code
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (HmaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
