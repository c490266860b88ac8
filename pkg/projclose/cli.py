from __future__ import annotations

import argparse
import asyncio
import pathlib
import sys
from typing import TYPE_CHECKING

from loguru import logger
from pydantic import ValidationError

from .enums import Command, OutputFormat, PairStrategy
from .exceptions import ProjcloseError
from .lab import ProjectiveLab, default_threads, points_csv
from .models import DEFAULT_ROUNDS, ClosureCaps, MoebiusRound, Report, RunConfig
from .subplane import classify_basis
from .utils import parse_triples

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .models import ClosureTrace
    from .store import PointStore

__all__ = ("build_parser", "execute", "main", "resolve_config", "run")

EXIT_OK = 0
EXIT_INVALID = 2
POINT_COMMANDS = frozenset({Command.CLOSURE, Command.DENSITY, Command.MOEBIUS})

EPILOG = """
examples:
  projclose classify --basis "1,0,0;0,1,0;0,0,1"
  projclose closure --basis "1,0,0;0,1,0;0,1,1" --output out/five
  projclose density --basis "1,0,0;1,1,0;1,1,1" --levels 5 --samples 10000
  projclose moebius --quadrangle "1,0,0;0,1,0;0,0,1;1,1,1" --levels 3
"""


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--levels", type=int, default=None,
        help="level cap, default 6 (for moebius: join/meet rounds, default 3, 0 allowed)",
    )
    common.add_argument("--max-points", type=int, default=100_000, help="point cap")
    common.add_argument("--samples", type=int, default=10_000, help="sphere sample size")
    common.add_argument(
        "--sample-budget", type=int, default=10_000, help="pairs sampled per axiom check"
    )
    common.add_argument("--seed", type=int, default=0, help="seed for axiom sampling")
    common.add_argument(
        "--threads", type=int, default=None, help="workers (default: $PROJCLOSE_THREADS or CPUs)"
    )
    common.add_argument(
        "--strategy",
        choices=[s.value for s in PairStrategy],
        default=PairStrategy.FRONTIER.value,
        help="pair enumeration per level",
    )
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value,
        help="what is echoed to stdout: the JSON report or the CSV point table",
    )
    common.add_argument(
        "--output", type=pathlib.Path, default=pathlib.Path("projclose-report"),
        help="report path prefix, .json and .csv are appended",
    )
    common.add_argument(
        "--approx-floats", action="store_true", help="accept decimal floats, approximated by rationals"
    )
    common.add_argument("--timings", action="store_true", help="record wall time per level")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="projclose",
        description="Cross-product closure of three rays in the real projective plane.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub = commands.add_parser(command.value, parents=[common])
        if command is Command.MOEBIUS:
            sub.add_argument(
                "--quadrangle", default=None, help='four vectors "x1,x2,x3;...", default e1,e2,e3,(1,1,1)'
            )
        else:
            sub.add_argument("--basis", required=True, help='three vectors "x1,x2,x3;y1,y2,y3;z1,z2,z3"')
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """
    Turn parsed arguments into a validated config.

    Raises
    ------
    InvalidInput
        If a basis or quadrangle does not parse, or ``PROJCLOSE_THREADS`` is malformed.
    pydantic.ValidationError
        If a value is out of range.
    """
    command = Command(args.command)
    basis = quadrangle = None
    if command is Command.MOEBIUS:
        if args.quadrangle is not None:
            quadrangle = parse_triples(args.quadrangle, count=4, approx_floats=args.approx_floats)
    else:
        basis = parse_triples(args.basis, count=3, approx_floats=args.approx_floats)

    caps = {"max_points": args.max_points, "strategy": args.strategy}
    rounds = None
    if command is Command.MOEBIUS:
        rounds = args.levels if args.levels is not None else DEFAULT_ROUNDS
    elif args.levels is not None:
        caps["max_level"] = args.levels

    return RunConfig(
        command=command,
        basis=basis,
        quadrangle=quadrangle,
        caps=ClosureCaps(**caps),
        rounds=rounds,
        samples=args.samples,
        sample_budget=args.sample_budget,
        seed=args.seed,
        threads=args.threads if args.threads is not None else default_threads(),
        output=args.output,
        format=args.format,
        approx_floats=args.approx_floats,
        timings=args.timings,
        verbosity=args.verbose,
    )


def _trace_section(config: RunConfig, trace: ClosureTrace) -> ClosureTrace:
    return trace if config.timings else trace.without_timings()


async def execute(config: RunConfig) -> tuple[Report, PointStore | None]:
    """Run the pipeline of ``config.command``, write its files and return the report."""
    provenance = config.provenance()
    store: PointStore | None = None

    async with ProjectiveLab(
        threads=config.threads,
        caps=config.caps,
        samples=config.samples,
        sample_budget=config.sample_budget,
        seed=config.seed,
    ) as lab:
        match config.command:
            case Command.CLASSIFY:
                classification = await lab.classify(config.basis_spec)
                report = Report(config=provenance, classification=classification)
            case Command.CLOSURE:
                basis = config.basis_spec
                store, trace = await lab.run_closure(basis)
                report = Report(
                    config=provenance,
                    classification=classify_basis(basis),
                    trace=_trace_section(config, trace).levels,
                    points=len(store),
                    stabilized=trace.stabilized,
                    cap_hit=trace.cap_hit,
                )
            case Command.DENSITY:
                basis = config.basis_spec
                store, trace, density = await lab.density(basis)
                report = Report(
                    config=provenance,
                    classification=classify_basis(basis),
                    trace=_trace_section(config, trace).levels,
                    density=density.levels,
                    points=len(store),
                    stabilized=trace.stabilized,
                    cap_hit=trace.cap_hit,
                )
            case Command.VERIFY:
                basis = config.basis_spec
                verified, trace, axioms, shape = await lab.verify(basis)
                report = Report(
                    config=provenance,
                    classification=classify_basis(basis),
                    trace=_trace_section(config, trace).levels,
                    axioms=axioms,
                    shape=shape,
                    points=len(verified),
                    stabilized=trace.stabilized,
                    cap_hit=trace.cap_hit,
                )
            case Command.MOEBIUS:
                store = await lab.moebius(config.quadrangle_or_default, config.moebius_rounds)
                rounds: list[MoebiusRound] = []
                total = 0
                for level, count in sorted(store.level_counts().items()):
                    total += count
                    if level > 1:
                        rounds.append(MoebiusRound(round=level - 1, points=total, new_points=count))
                report = Report(config=provenance, moebius=rounds, points=len(store))

        await lab.save_report(report, config.json_path)
        if store is not None:
            await lab.save_points(store, config.csv_path)
    return report, store


def run(config: RunConfig) -> int:
    """
    Execute ``config`` and echo the result to stdout.

    Returns
    -------
    int
        0 on success, 2 on invalid input, 3 when a cap or stabilization condition fails.
    """
    if config.format is OutputFormat.CSV and config.command not in POINT_COMMANDS:
        logger.error(f"{config.command} produces no point table, use --format json")
        return EXIT_INVALID

    try:
        report, store = asyncio.run(execute(config))
    except ProjcloseError as e:
        logger.error(str(e))
        return e.code

    if config.format is OutputFormat.CSV and store is not None:
        sys.stdout.write(points_csv(store))
    else:
        sys.stdout.write(report.to_json())
    return EXIT_OK


def configure_logging(verbosity: int) -> None:
    logger.remove()
    level = {0: "WARNING", 1: "INFO"}.get(verbosity, "DEBUG")
    logger.add(sys.stderr, level=level, format="<level>{level: <8}</level> | {message}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = resolve_config(args)
    except (ProjcloseError, ValidationError) as e:
        logger.error(str(e))
        return EXIT_INVALID
    return run(config)
