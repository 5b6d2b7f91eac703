"""Command-line interface.

Every subcommand prints one canonical JSON document on stdout. Logs and
warnings go to stderr. The exit code is 0 on success, 1 on invalid input,
malformed arguments included, and 2 when a guaranteed witness could not be
produced or a check of ``verify`` failed.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import pathlib
import sys
import typing as ty

import numpy

from levelcross.clustered import ColoringParams, render_slice
from levelcross.config import Settings
from levelcross.constants import (
    build_singleton_obstruction,
    exhaustive_check_c1,
    largest_level_component,
    singleton_sufficient,
)
from levelcross.continuous import (
    ContinuousWitness,
    approximate_level_crossing,
    certify_witness,
    chessboard_via_distance_fields,
    discretize,
    refine_sequence,
    rescale,
)
from levelcross.discrete import solve
from levelcross.exceptions import InvalidInput, LevelCrossException, TheoremViolation
from levelcross.functions import BUILTINS, ContinuousFn, builtin, polynomial_from_file
from levelcross.grid import CellLabeling, GridShape
from levelcross.render import CellWitness, render_grid_svg, render_layers_ppm
from levelcross.serialization import dumps, parse_labeling, witness_document
from levelcross.steinhaus import find_crossing, random_coloring
from levelcross.suite import CHECKS, run_suite

logger = logging.getLogger("levelcross")

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_FAILURE = 2


def _parse_box(text: str) -> list[tuple[int, int]]:
    """Parse ``low:high,low:high,...`` into inclusive ranges."""
    try:
        ranges = [tuple(int(x) for x in part.split(":")) for part in text.split(",")]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"Invalid box {text!r}.") from error
    if any(len(r) != 2 for r in ranges):
        raise argparse.ArgumentTypeError(f"Invalid box {text!r}, expected low:high ranges.")
    return [(r[0], r[1]) for r in ranges]


def _read_labeling(path: pathlib.Path) -> CellLabeling:
    try:
        text = path.read_text()
    except OSError as error:
        raise InvalidInput(f"Cannot read {path}: {error.strerror}.") from error
    return parse_labeling(text)


def _write_pictures(
    args: argparse.Namespace, labeling: CellLabeling, witness: CellWitness
) -> None:
    if args.svg is not None:
        args.svg.write_text(render_grid_svg(labeling, witness))
        logger.info("Wrote %s.", args.svg)
    if args.ppm_dir is not None:
        args.ppm_dir.mkdir(parents=True, exist_ok=True)
        for layer, image in enumerate(render_layers_ppm(labeling, witness), start=1):
            (args.ppm_dir / f"layer_{layer:03d}.ppm").write_bytes(image)
        logger.info("Wrote the layers of the witness in %s.", args.ppm_dir)


def _color(args: argparse.Namespace) -> dict[str, ty.Any]:
    params = ColoringParams(args.n, args.m)
    box = args.box if args.box is not None else [(-5, 5)] * args.n
    text, grid = render_slice(params, box)
    return {
        "n": args.n,
        "m": args.m,
        "box": [list(r) for r in box],
        "rows": text.split("\n"),
        "colors": grid,
    }


def _chessboard(args: argparse.Namespace) -> dict[str, ty.Any]:
    if args.input is not None:
        coloring = _read_labeling(args.input)
    else:
        rng = numpy.random.default_rng(args.random)
        coloring = random_coloring(GridShape(args.n, args.k), rng)
    if args.distance_fields:
        witness = chessboard_via_distance_fields(coloring)
    else:
        witness = find_crossing(coloring)
    _write_pictures(args, coloring, witness)
    return witness_document(witness)


def _solve_discrete(args: argparse.Namespace) -> dict[str, ty.Any]:
    labeling = _read_labeling(args.input)
    witness = solve(labeling, args.m, shrink_values=args.shrink)
    _write_pictures(args, labeling, witness)
    return witness_document(witness)


def _function(args: argparse.Namespace) -> ContinuousFn:
    if args.fn in BUILTINS:
        return builtin(args.fn, args.n)
    path = pathlib.Path(args.fn)
    if not path.exists():
        raise InvalidInput(
            f"Unknown function {args.fn!r}, expected a polynomial file or one of "
            f"{', '.join(sorted(BUILTINS))}."
        )
    return polynomial_from_file(path)


def _continuous_document(
    function: ContinuousFn, witness: ContinuousWitness, refinement: int
) -> dict[str, ty.Any]:
    certificate = certify_witness(function, witness, refinement)
    document = witness_document(witness)
    document["bound"] = certificate.bound
    document["coordinate_bounds"] = list(certificate.coordinate_bounds)
    return document


def _levelset(args: argparse.Namespace) -> dict[str, ty.Any]:
    function = _function(args)
    if args.steps == 1:
        witness = approximate_level_crossing(function, args.epsilon)
        witnesses = [witness]
        document = _continuous_document(function, witness, args.refinement)
    else:
        result = refine_sequence(function, args.epsilon, args.steps)
        witnesses = result.witnesses
        document = {
            "kind": "refinement",
            "axis": result.axis,
            "witnesses": [
                _continuous_document(function, w, args.refinement) for w in result.witnesses
            ],
            "hausdorff": result.hausdorff,
            "drift": result.drift,
            "unions_intersect": result.unions_intersect,
            "drift_within_bound": result.drift_within_bound,
        }
    if args.svg is not None or args.ppm_dir is not None:
        last = witnesses[-1]
        labeling = discretize(rescale(function)[0], last.resolution).labeling
        _write_pictures(args, labeling, last)
    return document


def _constants(args: argparse.Namespace) -> dict[str, ty.Any]:
    if args.obstruction:
        labeling = build_singleton_obstruction(args.n)
        witness = solve(labeling, 0)
        return {
            "kind": "singleton-obstruction",
            "grid": {"n": labeling.shape.n, "k": labeling.shape.k},
            "largest_level_component": largest_level_component(labeling),
            "singleton_crossing": singleton_sufficient(labeling) is not None,
            "value_set_size": len(witness.value_set),
        }
    report = exhaustive_check_c1(
        args.k, args.m, args.radius, budget=args.budget, workers=args.workers
    )
    document = dataclasses.asdict(report)
    document["counterexamples"] = [list(c) for c in report.counterexamples]
    return document


def _verify(args: argparse.Namespace) -> dict[str, ty.Any]:
    results = run_suite(quick=args.quick, names=args.check)
    return {
        "passed": all(r.passed for r in results),
        "checks": [dataclasses.asdict(r) for r in results],
    }


class _ArgumentParser(argparse.ArgumentParser):
    """Parser reporting usage errors with the invalid input exit code."""

    def error(self, message: str) -> ty.NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID_INPUT, f"{self.prog}: error: {message}\n")


def _add_picture_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--svg", type=pathlib.Path, help="Write an SVG picture (n = 2).")
    parser.add_argument(
        "--ppm-dir", type=pathlib.Path, help="Write one PPM picture per layer (n = 3)."
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="levelcross",
        description="Crossing families of cubes in grid labelings and level sets.",
    )
    parser.add_argument(
        "--log-level", help="Logging level, overrides LEVELCROSS_LOG_LEVEL (default WARNING)."
    )
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=_ArgumentParser
    )

    color = commands.add_parser("color", help="Print a slice of the clustered coloring.")
    color.add_argument("--n", type=int, default=2)
    color.add_argument("--m", type=int, default=1)
    color.add_argument("--box", type=_parse_box, help="Inclusive ranges low:high,low:high,...")
    color.set_defaults(handler=_color)

    chessboard = commands.add_parser("chessboard", help="Find a monochromatic crossing.")
    source = chessboard.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=pathlib.Path, help="Labeling JSON document.")
    source.add_argument("--random", type=int, metavar="SEED", help="Random coloring seed.")
    chessboard.add_argument("--n", type=int, default=2, help="Dimension of a random coloring.")
    chessboard.add_argument("--k", type=int, default=8, help="Side of a random coloring.")
    chessboard.add_argument(
        "--distance-fields",
        action="store_true",
        help="Derive the crossing from level sets of the distance fields.",
    )
    _add_picture_flags(chessboard)
    chessboard.set_defaults(handler=_chessboard)

    discrete = commands.add_parser("solve-discrete", help="Solve a lattice labeling.")
    discrete.add_argument("--input", type=pathlib.Path, required=True)
    discrete.add_argument("--m", type=int, required=True)
    discrete.add_argument("--shrink", action="store_true", help="Shrink the value set.")
    _add_picture_flags(discrete)
    discrete.set_defaults(handler=_solve_discrete)

    levelset = commands.add_parser("levelset", help="Approximate a crossing level set.")
    levelset.add_argument(
        "--fn",
        required=True,
        help=f"One of {', '.join(sorted(BUILTINS))} or a polynomial JSON file.",
    )
    levelset.add_argument("--epsilon", type=float, required=True)
    levelset.add_argument(
        "--steps", type=int, default=1, help="Number of witnesses, epsilon halved between two."
    )
    levelset.add_argument("--n", type=int, default=2, help="Dimension of built-in functions.")
    levelset.add_argument(
        "--refinement", type=int, default=1, help="Sampling refinement of certificates."
    )
    _add_picture_flags(levelset)
    levelset.set_defaults(handler=_levelset)

    constants = commands.add_parser("constants", help="Exhaustive small-grid searches.")
    constants.add_argument("--k", type=int, default=2)
    constants.add_argument("--m", type=int, default=1)
    constants.add_argument("--radius", type=int, default=2)
    constants.add_argument("--budget", type=int, help="Overrides LEVELCROSS_ENUMERATION_BUDGET.")
    constants.add_argument("--workers", type=int, help="Overrides LEVELCROSS_WORKERS.")
    constants.add_argument(
        "--obstruction",
        action="store_true",
        help="Check the labeling where no single value has a crossing level set.",
    )
    constants.add_argument("--n", type=int, default=3, help="Dimension of the obstruction.")
    constants.set_defaults(handler=_constants)

    verify = commands.add_parser("verify", help="Run the property checks.")
    verify.add_argument("--quick", action="store_true", help="Fewer and smaller instances.")
    verify.add_argument("--check", action="append", choices=sorted(CHECKS), help="Repeatable.")
    verify.set_defaults(handler=_verify)
    return parser


def main(argv: ty.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = Settings.from_env().with_overrides(log_level=args.log_level)
    except InvalidInput as error:
        print(error, file=sys.stderr)
        return EXIT_INVALID_INPUT
    logging.basicConfig(
        level=settings.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logging.captureWarnings(True)
    try:
        document = args.handler(args)
    except TheoremViolation as error:
        logger.error("%s", error)
        return EXIT_FAILURE
    except LevelCrossException as error:
        logger.error("%s", error)
        return EXIT_INVALID_INPUT
    sys.stdout.write(dumps(document))
    if args.command == "verify" and not document["passed"]:
        return EXIT_FAILURE
    return EXIT_OK
