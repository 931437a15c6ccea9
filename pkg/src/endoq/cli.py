"""``endoq`` command line: build games, test cores, sweep machine costs."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .games import (
    ENUMERATION_CAP,
    RearrangementVariant,
    private_requeueing_game,
    public_requeueing_game,
    queueing_cost_game,
    reduced_cost_game,
    relaxed_public_game,
)
from .model import (
    CapExceededError,
    GameTable,
    ProblemError,
    QueueingProblem,
    RequeueingProblem,
    fmt,
    load_problem,
    to_scalar,
)
from .oracle import run_oracle_checks
from .solutions import CORE_CAP, classify_regimes, core_nonempty, theorem_bounds
from .verify import render_results, run_claims

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_EMPTY_CORE = 10

FAMILIES = ("queueing", "private", "public", "reduced", "relaxed")


class UsageError(Exception):
    pass


def _dump(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def _load(args) -> QueueingProblem | RequeueingProblem:
    if not args.problem:
        raise UsageError("--problem is required for this command")
    path = Path(args.problem)
    if not path.is_file():
        raise UsageError(f"no such problem file: {path}")
    problem = load_problem(path)
    if args.machine_cost is not None:
        problem = problem.with_machine_cost(to_scalar(args.machine_cost))
    return problem


def build_game(problem, family: str, variant: str, cap: int) -> GameTable:
    if family in ("queueing", "reduced"):
        base = problem.base if isinstance(problem, RequeueingProblem) else problem
        if base.n > cap:
            raise CapExceededError(f"{base.n} agents exceeds the cap of {cap}")
        return queueing_cost_game(base) if family == "queueing" else reduced_cost_game(base)
    if not isinstance(problem, RequeueingProblem):
        raise UsageError(f"family {family!r} needs an 'initial' block in the problem file")
    if family == "private":
        return private_requeueing_game(problem, variant, cap=cap)
    if family == "public":
        return public_requeueing_game(problem, variant, cap=cap)
    if problem.n > cap:
        raise CapExceededError(f"{problem.n} agents exceeds the cap of {cap}")
    return relaxed_public_game(problem)


def render_game(game: GameTable) -> str:
    width = max(len(game.key(S)) for S in range(1, 1 << game.n))
    lines = [f"{game.kind} game, n={game.n}"]
    if game.warning:
        lines.append(f"warning: {game.warning}")
    for S, v in game.items():
        lines.append(f"  {{{game.key(S)}}}".ljust(width + 5) + fmt(v))
    return "\n".join(lines)


def cmd_game(args) -> tuple[str, int]:
    game = build_game(_load(args), args.family, args.variant, args.max_n or ENUMERATION_CAP)
    text = _dump(game.to_dict()) if args.format == "json" else render_game(game)
    return text, EXIT_OK


def cmd_core(args) -> tuple[str, int]:
    problem = _load(args)
    game = build_game(problem, args.family, args.variant, args.max_n or ENUMERATION_CAP)
    cert = core_nonempty(game, cap=max(args.max_n or 0, CORE_CAP))
    labels = list(game.labels) if game.labels else None
    if args.format == "json":
        out = cert.to_dict(labels)
        out["family"] = args.family
        out["bounds"] = theorem_bounds(problem).to_dict()
        text = _dump(out)
    else:
        lines = [f"{args.family} {game.kind} game: core {cert.verdict}"]
        if cert.nonempty:
            lines.append("allocation: (" + ", ".join(fmt(x) for x in cert.allocation) + ")")
        else:
            rel = "<" if game.kind == "cost" else ">"
            for S, w in cert.weights:
                lines.append(f"  {w} x {{{game.key(S)}}} = {fmt(w * game[S])}")
            lines.append(f"weighted sum {fmt(cert.lhs)} {rel} {fmt(cert.rhs)} "
                         f"= {cert.scale} x worth(N)")
        text = "\n".join(lines)
    return text, EXIT_OK if cert.nonempty else EXIT_EMPTY_CORE


def cmd_regimes(args) -> tuple[str, int]:
    problem = _load(args)
    if isinstance(problem, RequeueingProblem):
        raise UsageError("regimes takes a plain queueing problem (no 'initial' block)")
    report = classify_regimes(problem, cap=args.max_n or CORE_CAP)
    text = _dump(report.to_dict()) if args.format == "json" else report.render_text()
    return text, EXIT_OK


def cmd_verify_paper(args) -> tuple[str, int]:
    results = run_claims(args.fixtures_dir)
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = _dump({"passed": ok, "claims": [r.to_dict() for r in results]})
    else:
        text = render_results(results)
    return text, EXIT_OK if ok else EXIT_MISMATCH


def cmd_oracle_check(args) -> tuple[str, int]:
    report = run_oracle_checks(seed=args.seed, instances=args.instances,
                               max_n=args.max_n or 5)
    text = _dump(report.to_dict()) if args.format == "json" else report.render_text()
    return text, EXIT_OK if report.passed else EXIT_MISMATCH


COMMANDS = {
    "game": cmd_game,
    "core": cmd_core,
    "regimes": cmd_regimes,
    "verify-paper": cmd_verify_paper,
    "oracle-check": cmd_oracle_check,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="endoq",
        description="Queueing games with an endogenous number of machines.")
    ap.add_argument("command", choices=list(COMMANDS))
    ap.add_argument("--problem", help="problem JSON file")
    ap.add_argument("--family", choices=FAMILIES, default="queueing")
    ap.add_argument("--variant", default="swaps",
                    help="rearrangement rule for requeueing games: swaps or no-swaps")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    ap.add_argument("--machine-cost", help="override the machine cost, e.g. 25/2")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--instances", type=int, default=100)
    ap.add_argument("--max-n", type=int, help="size cap for enumeration and core solves")
    ap.add_argument("--fixtures-dir", help="directory with the example fixtures")
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        RearrangementVariant.parse(args.variant)
    except ValueError:
        print(f"endoq: unknown variant {args.variant!r} (use swaps or no-swaps)", file=sys.stderr)
        return EXIT_INPUT
    try:
        text, code = COMMANDS[args.command](args)
    except CapExceededError as exc:
        print(f"endoq: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ProblemError, UsageError, ValueError, OSError) as exc:
        print(f"endoq: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
