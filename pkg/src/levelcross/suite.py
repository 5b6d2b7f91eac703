"""End-to-end property checks of every solver, run by ``levelcross verify``.

Each check draws seeded random instances, runs the constructing code and
validates its output with the independent verifiers. The quick mode runs the
same checks on fewer and smaller instances.
"""

from __future__ import annotations

import itertools
import logging
import time
import typing as ty
from dataclasses import dataclass, field

import numpy

from levelcross.clustered import (
    ColoringParams,
    check_cluster_shapes,
    check_partition,
    check_separation,
)
from levelcross.constants import (
    build_singleton_obstruction,
    exhaustive_check_c1,
    largest_level_component,
    singleton_sufficient,
)
from levelcross.continuous import (
    approximate_level_crossing,
    certify_witness,
    chessboard_via_distance_fields,
    refine_sequence,
)
from levelcross.discrete import solve
from levelcross.exceptions import LevelCrossException
from levelcross.functions import builtin
from levelcross.generators import random_polynomial_labeling, random_walk_labeling
from levelcross.grid import GridShape, box_intersection_dim, intersection_dim
from levelcross.steinhaus import find_crossing, random_coloring
from levelcross.verification import (
    verify_chessboard_witness,
    verify_continuous_witness,
    verify_discrete_witness,
    verify_weakened_condition,
)

logger = logging.getLogger(__name__)

MAX_DETAILS = 10


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def fail(self, detail: str) -> None:
        self.passed = False
        if len(self.details) < MAX_DETAILS:
            self.details.append(detail)


Check = ty.Callable[[CheckResult, bool], None]


def check_clustered_partition(result: CheckResult, quick: bool) -> None:
    radius = 10 if quick else 50
    for n, m in itertools.product((1, 2, 3), repeat=2):
        for failure in check_partition(ColoringParams(n, m), radius):
            result.fail(f"n={n}, m={m}: {failure}")


def check_cluster_bounds(result: CheckResult, quick: bool) -> None:
    radius = 6 if quick else 30
    for n, m in itertools.product((1, 2, 3), repeat=2):
        params = ColoringParams(n, m)
        for failure in check_cluster_shapes(params, radius) + check_separation(params, radius):
            result.fail(f"n={n}, m={m}: {failure}")


def check_chessboard(result: CheckResult, quick: bool) -> None:
    samples = 20 if quick else 1000
    for n, k in itertools.product((2, 3), range(2, 9)):
        rng = numpy.random.default_rng(1000 * n + k)
        for _ in range(samples):
            coloring = random_coloring(GridShape(n, k), rng)
            for reason in verify_chessboard_witness(coloring, find_crossing(coloring)):
                result.fail(f"n={n}, k={k}: {reason}")


def check_discrete_bound(result: CheckResult, quick: bool) -> None:
    samples = 10 if quick else 500
    for n, m in [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]:
        rng = numpy.random.default_rng(100 * n + m)
        for _ in range(samples):
            k = int(rng.integers(2, 7))
            shape = GridShape(n, k)
            for labeling in (
                random_walk_labeling(shape, m, rng),
                random_polynomial_labeling(shape, rng),
            ):
                witness = solve(labeling, m)
                for reason in verify_discrete_witness(labeling, m, witness):
                    result.fail(f"n={n}, m={m}, k={k}: {reason}")


def check_singleton_sufficiency(result: CheckResult, quick: bool) -> None:
    runs = [(2, 0, 2), (2, 1, 2), (3, 1, 1)] if quick else [
        (k, m, 2) for k in (2, 3) for m in (0, 1)
    ]
    for k, m, radius in runs:
        report = exhaustive_check_c1(k, m, radius)
        if report.verified != report.enumerated:
            result.fail(
                f"k={k}, m={m}: {report.enumerated - report.verified} labelings have no "
                f"crossing level set, first {report.counterexamples[0]}."
            )


def check_singleton_obstruction(result: CheckResult, quick: bool) -> None:
    labeling = build_singleton_obstruction()
    if largest_level_component(labeling) >= labeling.shape.k:
        result.fail("A level set component is large enough to cross.")
    if singleton_sufficient(labeling) is not None:
        result.fail("A single value has a crossing level set.")
    witness = solve(labeling, 0)
    if len(witness.value_set) != 2:
        result.fail(f"The value set has {len(witness.value_set)} points instead of 2.")
    for reason in verify_discrete_witness(labeling, 0, witness):
        result.fail(reason)


def check_level_crossings(result: CheckResult, quick: bool) -> None:
    epsilons = (0.1,) if quick else (0.1, 0.05)
    for name in ("projection", "linear", "quadratic", "sine-curve"):
        function = builtin(name, 2)
        for epsilon in epsilons:
            witness = approximate_level_crossing(function, epsilon)
            certificate = certify_witness(function, witness)
            if not certificate.bound < epsilon:
                result.fail(f"{name} at epsilon={epsilon}: certified bound {certificate.bound}.")
            for reason in verify_continuous_witness(function, witness):
                result.fail(f"{name} at epsilon={epsilon}: {reason}")


def check_refinement(result: CheckResult, quick: bool) -> None:
    function = builtin("linear", 2)
    refinement = refine_sequence(function, 0.2, 3 if quick else 5)
    for witness in refinement.witnesses:
        for reason in verify_continuous_witness(function, witness):
            result.fail(f"epsilon={witness.epsilon}: {reason}")
    for j, within in enumerate(refinement.drift_within_bound):
        if within is False:
            result.fail(f"Step {j}: p moved by {refinement.drift[j]} between intersecting unions.")


def check_distance_fields(result: CheckResult, quick: bool) -> None:
    samples = 2 if quick else 100
    for n, k in [(2, 6), (3, 4)]:
        rng = numpy.random.default_rng(10 * n + k)
        for _ in range(samples):
            coloring = random_coloring(GridShape(n, k), rng)
            reference = verify_chessboard_witness(coloring, find_crossing(coloring))
            derived = verify_chessboard_witness(coloring, chessboard_via_distance_fields(coloring))
            if reference or derived:
                result.fail(f"n={n}, k={k}: {reference + derived}")


def check_grid_geometry(result: CheckResult, quick: bool) -> None:
    for n in (1, 2, 3):
        for k in range(1, 5):
            shape = GridShape(n, k)
            for a, b in itertools.product(shape.cells(), repeat=2):
                if intersection_dim(a, b, shape) != box_intersection_dim(a, b, shape):
                    result.fail(f"Cells {a} and {b} of the grid {k}^{n}.")
    rng = numpy.random.default_rng(7)
    for _ in range(20 if quick else 500):
        n = int(rng.integers(2, 4))
        m = int(rng.integers(0, n))
        labeling = random_walk_labeling(GridShape(n, int(rng.integers(2, 6))), m, rng)
        for reason in verify_weakened_condition(labeling, m):
            result.fail(reason)


CHECKS: dict[str, Check] = {
    "clustered-partition": check_clustered_partition,
    "cluster-bounds": check_cluster_bounds,
    "chessboard": check_chessboard,
    "discrete-bound": check_discrete_bound,
    "singleton-sufficiency": check_singleton_sufficiency,
    "singleton-obstruction": check_singleton_obstruction,
    "level-crossings": check_level_crossings,
    "refinement": check_refinement,
    "distance-fields": check_distance_fields,
    "grid-geometry": check_grid_geometry,
}


def run_check(name: str, quick: bool = False) -> CheckResult:
    """Run one check, exceptions of the package counting as failures."""
    result = CheckResult(name)
    started = time.perf_counter()
    try:
        CHECKS[name](result, quick)
    except LevelCrossException as error:
        result.fail(f"{type(error).__name__}: {error}")
    result.elapsed = time.perf_counter() - started
    logger.info(
        "Check %s %s in %.2fs.", name, "passed" if result.passed else "failed", result.elapsed
    )
    return result


def run_suite(quick: bool = False, names: ty.Iterable[str] | None = None) -> list[CheckResult]:
    return [run_check(name, quick) for name in (CHECKS if names is None else names)]
