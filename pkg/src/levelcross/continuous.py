"""Approximate level sets of Lipschitz maps ``f: I^n → R^{n-1}`` crossing ``I^n``.

For every ``ε > 0`` some point ``p`` admits a connected union of cubes inside
``f^{-1}[B(p, ε)]`` meeting two opposite faces of ``I^n``. The construction
rescales ``f`` into ``I^{n-1}``, labels a fine grid of ``I^n`` with the cubes of
a coarse grid of ``I^{n-1}`` containing the values of ``f``, and solves the
resulting discrete problem. Sequences of such witnesses for decreasing ``ε``
approximate a connected crossing subset of an exact level set.
"""

from __future__ import annotations

import collections
import itertools
import logging
import math
import typing as ty
import warnings
from dataclasses import dataclass, replace

import numpy
import numpy.typing as npt
from scipy.spatial.distance import directed_hausdorff

from levelcross.discrete import solve
from levelcross.exceptions import InvalidInput, LevelCrossWarning, TheoremViolation
from levelcross.functions import (
    ContinuousFn,
    FloatArray,
    GridEvaluator,
    distance_field_function,
    spot_check,
)
from levelcross.grid import CellIndex, CellLabeling, GridShape, cells_of_mask, touched_axes
from levelcross.steinhaus import ChessboardWitness, find_crossing
from levelcross.verification import sample_indices, verify_chessboard_witness

logger = logging.getLogger(__name__)

IntArray = npt.NDArray[numpy.int64]

MAX_HALVINGS = 6
"""Number of times the distance-field chessboard solver halves ε before giving up."""


@dataclass(frozen=True)
class AffineRescaling:
    """The map ``y ↦ y / (2M) + 1/2`` sending ``[-M, M]^{n-1}`` into ``I^{n-1}``."""

    bound: float

    @property
    def scale(self) -> float:
        return 2 * self.bound

    def to_original(
        self, p0: ty.Sequence[float], epsilon0: float
    ) -> tuple[tuple[float, ...], float]:
        """Map a witness point and radius of the rescaled function back."""
        return tuple(self.scale * (c - 0.5) for c in p0), self.scale * epsilon0


@dataclass(frozen=True)
class Discretization:
    """Labeling of the fine grid by indices of cubes of the coarse value grid."""

    labeling: CellLabeling
    resolution: int


@dataclass(frozen=True)
class ContinuousWitness:
    """Cells of ``shape`` crossing ``axis`` on which ``‖f - p‖ < epsilon``.

    ``resolution`` is the number of subdivisions per axis of the grid of
    ``I^{n-1}`` used to discretize the values.
    """

    p: tuple[float, ...]
    cells: frozenset[CellIndex]
    axis: int
    epsilon: float
    shape: GridShape
    resolution: int


@dataclass(frozen=True)
class Certificate:
    """Rigorous upper bounds of ``‖f - p‖`` over the union of the witness cells.

    ``bound`` is the Euclidean bound, ``coordinate_bounds[j]`` bounds
    ``|f_j - p_j|`` and ``coordinate_ranges[j]`` encloses the values of ``f_j``.
    All are sampled extrema widened by the Lipschitz slack.
    """

    sampled_max: float
    slack: float
    bound: float
    coordinate_bounds: tuple[float, ...]
    coordinate_ranges: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class RefinementResult:
    """Witnesses for geometrically decreasing ``ε`` and their diagnostics.

    Entry ``j`` of the lists compares witness ``j`` with witness ``j + 1``.
    ``drift_within_bound[j]`` is ``None`` when the two cell unions are disjoint.
    """

    witnesses: list[ContinuousWitness]
    axis: int
    hausdorff: list[float]
    drift: list[float]
    unions_intersect: list[bool]
    drift_within_bound: list[bool | None]


def rescale(function: ContinuousFn) -> tuple[ContinuousFn, AffineRescaling]:
    """Compose ``function`` with the affine map sending its range into ``I^{n-1}``.

    Returns:
        the rescaled function, with Lipschitz constant ``L / (2M)``, and the
        affine map needed to translate its witnesses back.
    """
    rescaling = AffineRescaling(function.bound)
    scale = rescaling.scale
    grid = function.grid
    rescaled_grid = None if grid is None else _RescaledGrid(grid, scale)
    return (
        ContinuousFn(
            function.n,
            lambda x: function(x) / scale + 0.5,
            lipschitz=function.lipschitz / scale,
            bound=1.0,
            name=f"rescaled {function.name}",
            grid=rescaled_grid,
        ),
        rescaling,
    )


class _RescaledGrid:
    def __init__(self, grid: GridEvaluator, scale: float) -> None:
        self._grid = grid
        self._scale = scale
        self.multiple: int = grid.multiple

    def centers(self, resolution: int) -> FloatArray:
        return self._grid.centers(resolution) / self._scale + 0.5

    def vertices(self, resolution: int) -> FloatArray:
        return self._grid.vertices(resolution) / self._scale + 0.5


def resolution_constant(n: int) -> int:
    """Size bound of the value sets used to choose the resolution in dimension ``n``.

    Singletons suffice in dimension 2 and two values in dimension 3. Above, the
    general bound ``(n-1)!`` is used.
    """
    if n <= 2:
        return 1
    if n == 3:
        return 2
    return math.factorial(n - 1)


def _resolution_error(n: int, k: int) -> float:
    return 3 * math.sqrt(n - 1) * resolution_constant(n) / (2 * k)


def choose_resolution(n: int, epsilon0: float) -> int:
    """Smallest ``k`` with ``3·sqrt(n-1)·C_n / (2k) < ε0``."""
    if not epsilon0 > 0:
        raise InvalidInput(f"Invalid epsilon {epsilon0}, should be positive.")
    if n == 1:
        return 1
    k = max(1, math.floor(_resolution_error(n, 1) / epsilon0))
    while not _resolution_error(n, k) < epsilon0:
        k += 1
    while k > 1 and _resolution_error(n, k - 1) < epsilon0:
        k -= 1
    return k


def fine_resolution(function: ContinuousFn, k: int) -> int:
    """Subdivisions per axis such that ``L / m <= 1 / (4k)``.

    Rounded up to a multiple of the exact grid evaluator's resolution when the
    function has one.
    """
    m = max(1, math.ceil(4 * k * function.lipschitz))
    if function.grid is not None:
        multiple = function.grid.multiple
        m = multiple * math.ceil(m / multiple)
    return m


def discretize(rescaled: ContinuousFn, k: int) -> Discretization:
    """Label each fine cell with the coarse cube of ``I^{n-1}`` containing ``f(center)``.

    The fine grid is chosen by :func:`fine_resolution`. Over a fine cell, ``f``
    moves by at most ``1 / (4k)`` from its value at the center, so images of
    intersecting cells lie in l∞-adjacent coarse cubes and the labeling satisfies
    the discrete hypothesis at ``m = 0``.

    Args:
        rescaled: a function with values in ``I^{n-1}``.
        k: subdivisions per axis of ``I^{n-1}``.

    Raises:
        InvalidInput: if ``k`` is not positive.
    """
    if k < 1:
        raise InvalidInput(f"Invalid resolution k={k}, should be at least 1.")
    n = rescaled.n
    m = fine_resolution(rescaled, k)
    values = rescaled.at_centers(m)
    outside = (values < -1e-12) | (values > 1 + 1e-12)
    if outside.any():
        warnings.warn(
            f"The function {rescaled.name} leaves I^{n - 1} at {int(outside.any(axis=1).sum())} "
            "cell center(s), values are clamped.",
            LevelCrossWarning,
        )
    indices = numpy.clip(numpy.floor(values * k).astype(numpy.int64) + 1, 1, k)
    shape = GridShape(n, m)
    logger.debug(
        "Discretized %s on %d^%d cells, values on %d^%d cubes.", rescaled.name, m, n, k, n - 1
    )
    return Discretization(CellLabeling(shape, indices.reshape(shape.dense_shape + (n - 1,))), k)


def approximate_level_crossing(function: ContinuousFn, epsilon: float) -> ContinuousWitness:
    """Find ``p`` and cells crossing ``I^n`` on whose union ``‖f - p‖ < ε``.

    ``p`` is the image of the center of the smallest coarse cube of the value set
    found by the discrete solver.

    Raises:
        InvalidInput: if ``epsilon`` is not positive.
    """
    if not epsilon > 0:
        raise InvalidInput(f"Invalid epsilon {epsilon}, should be positive.")
    n = function.n
    if n == 1:
        return ContinuousWitness((), frozenset({(1,)}), 1, epsilon, GridShape(1, 1), 1)
    spot_check(function, numpy.random.default_rng(0))
    rescaled, rescaling = rescale(function)
    epsilon0 = epsilon / rescaling.scale
    k = choose_resolution(n, epsilon0)
    discretization = discretize(rescaled, k)
    # discretize meets the hypothesis at m = 0 by construction.
    witness = solve(discretization.labeling, 0, validate=False)
    smallest = min(witness.value_set)
    p0 = tuple((2 * c - 1) / (2 * k) for c in smallest)
    p, _ = rescaling.to_original(p0, epsilon0)
    logger.info(
        "Found %d cells crossing axis %d for %s at epsilon=%g.",
        len(witness.cells),
        witness.axis,
        function.name,
        epsilon,
    )
    return ContinuousWitness(
        p, witness.cells, witness.axis, epsilon, discretization.labeling.shape, k
    )


def certify_witness(
    function: ContinuousFn, witness: ContinuousWitness, refinement: int = 1
) -> Certificate:
    """Bound ``‖f - p‖`` over the union of the witness cells.

    Each cell is sampled at ``2^refinement + 1`` points per axis. Every point
    of a cell is within l∞ distance ``1 / (2^(refinement+1)·m)`` of a sample, so
    adding the Lipschitz constant times that distance to the sampled maxima
    gives rigorous bounds.
    """
    n = witness.shape.n
    if n == 1:
        return Certificate(0.0, 0.0, 0.0, (), ())
    indices, resolution = sample_indices(witness.cells, witness.shape, refinement)
    values = function.at_vertices(indices, resolution)
    deviations = numpy.abs(values - numpy.asarray(witness.p))
    coordinate_slack = function.lipschitz / (2 * resolution)
    slack = math.sqrt(n - 1) * coordinate_slack
    sampled_max = float(numpy.linalg.norm(deviations, axis=1).max())
    return Certificate(
        sampled_max=sampled_max,
        slack=slack,
        bound=sampled_max + slack,
        coordinate_bounds=tuple(float(d) + coordinate_slack for d in deviations.max(axis=0)),
        coordinate_ranges=tuple(
            (float(low) - coordinate_slack, float(high) + coordinate_slack)
            for low, high in zip(values.min(axis=0), values.max(axis=0))
        ),
    )


def hausdorff_distance(a: FloatArray, b: FloatArray) -> float:
    """Euclidean Hausdorff distance between two finite point sets.

    Sets are ``(N, d)`` arrays. A flat array is a set of points of the real line.

    Raises:
        InvalidInput: if a set is empty or the dimensions differ.
    """
    first, second = (
        numpy.asarray(x, dtype=numpy.float64).reshape(-1, 1)
        if numpy.ndim(x) <= 1
        else numpy.asarray(x, dtype=numpy.float64)
        for x in (a, b)
    )
    if first.size == 0 or second.size == 0:
        raise InvalidInput("Cannot compute the Hausdorff distance of an empty set.")
    if first.shape[1] != second.shape[1]:
        raise InvalidInput(
            f"Cannot compute the Hausdorff distance between sets of dimensions "
            f"{first.shape[1]} and {second.shape[1]}."
        )
    return max(directed_hausdorff(first, second)[0], directed_hausdorff(second, first)[0])


def cell_centers(cells: ty.Iterable[CellIndex], shape: GridShape) -> FloatArray:
    return (numpy.array(sorted(cells), dtype=numpy.float64) - 0.5) / shape.k


def unions_intersect(
    first: frozenset[CellIndex],
    first_shape: GridShape,
    second: frozenset[CellIndex],
    second_shape: GridShape,
) -> bool:
    """Whether the unions of two families of cells of different grids intersect."""
    ka, kb = first_shape.k, second_shape.k
    for cell in sorted(first):
        # Cells b of the second grid with [(b-1)/kb, b/kb] ∩ [(a-1)/ka, a/ka] ≠ ∅.
        ranges = [
            range(max(1, -((-(a - 1) * kb) // ka)), min(kb, (a * kb) // ka + 1) + 1) for a in cell
        ]
        if any(candidate in second for candidate in itertools.product(*ranges)):
            return True
    return False


def refine_sequence(
    function: ContinuousFn, epsilon_start: float, steps: int
) -> RefinementResult:
    """Witnesses for ``ε, ε/2, …, ε/2^(steps-1)`` reported along a common axis.

    The reported axis is the one crossed by the largest number of witnesses,
    the smallest such axis on ties. Witnesses that do not cross it keep their
    own axis.

    Raises:
        InvalidInput: if ``steps < 1``.
    """
    if steps < 1:
        raise InvalidInput(f"Invalid number of steps {steps}, should be at least 1.")
    witnesses = [
        approximate_level_crossing(function, epsilon_start / 2**j) for j in range(steps)
    ]
    axes = [touched_axes(w.cells, w.shape) for w in witnesses]
    counts = collections.Counter(axis for crossed in axes for axis in crossed)
    majority = min(counts, key=lambda axis: (-counts[axis], axis))
    witnesses = [
        replace(w, axis=majority) if majority in crossed else w
        for w, crossed in zip(witnesses, axes)
    ]
    hausdorff: list[float] = []
    drift: list[float] = []
    intersect: list[bool] = []
    within: list[bool | None] = []
    for current, following in zip(witnesses, witnesses[1:]):
        hausdorff.append(
            hausdorff_distance(
                cell_centers(current.cells, current.shape),
                cell_centers(following.cells, following.shape),
            )
        )
        step = float(numpy.linalg.norm(numpy.subtract(following.p, current.p)))
        drift.append(step)
        meets = unions_intersect(current.cells, current.shape, following.cells, following.shape)
        intersect.append(meets)
        within.append(step <= current.epsilon + following.epsilon if meets else None)
    logger.info("Refined %s over %d steps along axis %d.", function.name, steps, majority)
    return RefinementResult(witnesses, majority, hausdorff, drift, intersect, within)


def _coarse_box_gaps(
    fine: IntArray, fine_k: int, coarse: IntArray, coarse_k: int
) -> FloatArray:
    """l∞ distances between fine cells (rows) and coarse cells (columns)."""
    fine_low = (fine - 1) / fine_k
    coarse_low = (coarse - 1) / coarse_k
    gaps = numpy.maximum(
        coarse_low[None, :, :] - (fine_low[:, None, :] + 1 / fine_k),
        fine_low[:, None, :] - (coarse_low[None, :, :] + 1 / coarse_k),
    )
    return numpy.maximum(gaps, 0.0).max(axis=2)


def _chessboard_from_level_set(
    coloring: CellLabeling, witness: ContinuousWitness, certificate: Certificate
) -> ChessboardWitness | None:
    shape = coloring.shape
    n, k = shape.n, shape.k
    colors = coloring.values[..., 0]
    fine_k = witness.shape.k
    h = 1 / fine_k
    fine = numpy.array(list(witness.cells), dtype=numpy.int64)
    # Enclosures of the distances to the classes 1 to n - 1 over the witness.
    ranges = [(low + 0.5, high + 0.5) for low, high in certificate.coordinate_ranges]
    for j, (_, tau) in enumerate(ranges, start=1):
        if 2 * tau + 2 * h < 1 / k:
            coarse = numpy.argwhere(colors == j) + 1
            if len(coarse) == 0:
                continue
            near = numpy.zeros(len(coarse), dtype=bool)
            for start in range(0, len(fine), 4096):
                gaps = _coarse_box_gaps(fine[start : start + 4096], fine_k, coarse, k)
                near |= (gaps <= tau).any(axis=0)
            cells = frozenset(tuple(int(i) for i in c) for c in coarse[near])
            return ChessboardWitness(j, cells, _pick_axis(cells, shape, witness.axis))
    if all(low > 0 for low, _ in ranges):
        if fine_k % k != 0:
            return None
        containing = numpy.zeros(colors.shape, dtype=bool)
        containing[tuple(((fine - 1) // (fine_k // k)).T)] = True
        cells = cells_of_mask(containing & (colors == n))
        return ChessboardWitness(n, cells, _pick_axis(cells, shape, witness.axis))
    return None


def _pick_axis(cells: frozenset[CellIndex], shape: GridShape, preferred: int) -> int:
    axes = touched_axes(cells, shape)
    if preferred in axes or not axes:
        return preferred
    return min(axes)


def distance_field_epsilon(n: int, k: int, bound: float) -> float:
    """First ``ε`` tried on the distance fields of an ``n``-coloring of ``K_k^n``.

    It gives a value grid of ``(2C + 1)k + 1`` subdivisions per axis, ``C``
    being :func:`resolution_constant`. The witness values then span at most
    ``C`` cubes per coordinate, which keeps every coordinate either close
    enough to its class or bounded away from it.
    """
    subdivisions = (2 * resolution_constant(n) + 1) * k + 1
    return 2 * bound * _resolution_error(n, 1) / (subdivisions - 0.5)


def chessboard_via_distance_fields(coloring: CellLabeling) -> ChessboardWitness:
    """Find a monochromatic crossing of an ``n``-coloring through the continuous solver.

    The coordinates of ``f(x) = (dist∞(x, class j) - 1/2)_{j < n}`` vanish
    exactly on the color classes ``1`` to ``n - 1`` shifted by ``1/2``. A level
    crossing of ``f`` near ``p`` either stays close to some class ``j`` with
    ``p_j`` small, and the class ``j`` cubes close to it cross too, or stays away
    from all of them and lies in the class ``n``. When the certified bounds are
    too loose to decide, ``ε`` is halved.

    Raises:
        InvalidInput: if ``coloring`` is not a valid ``n``-coloring.
        TheoremViolation: if no crossing could be derived.
    """
    reference = find_crossing(coloring)
    shape = coloring.shape
    n, k = shape.n, shape.k
    if n == 1:
        return reference
    function = distance_field_function(coloring)
    epsilon = distance_field_epsilon(n, k, function.bound)
    for attempt in range(MAX_HALVINGS + 1):
        witness = approximate_level_crossing(function, epsilon)
        certificate = certify_witness(function, witness, refinement=0)
        chessboard = _chessboard_from_level_set(coloring, witness, certificate)
        if chessboard is not None:
            reasons = verify_chessboard_witness(coloring, chessboard)
            if reasons:
                raise TheoremViolation(
                    "The crossing derived from the distance fields is invalid: "
                    + " ".join(reasons)
                )
            logger.info(
                "Derived a crossing of color %d after %d halving(s).", chessboard.color, attempt
            )
            return chessboard
        epsilon /= 2
    raise TheoremViolation(
        f"No crossing derived from the distance fields after {MAX_HALVINGS} halvings of epsilon."
    )
