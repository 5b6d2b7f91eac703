"""Computational evidence on the smallest admissible size of value sets.

In dimension 2 a single value always suffices: every labeling of ``K_k^2`` by
integers satisfying the hypothesis at ``m = 0`` or ``m = 1`` has a level set
with a component crossing the square. :func:`exhaustive_check_c1` checks this on
every labeling of small grids with bounded values. In dimension 3 a single
value does not suffice, as the labeling of :func:`build_singleton_obstruction`
shows: its level sets only have components of at most ``n!`` cells on a grid
of side ``n! + 1``.

The results are evidence, never proofs: reports state whether the enumeration
is consistent with the claim.
"""

from __future__ import annotations

import collections
import concurrent.futures
import logging
import math
import time
import typing as ty
from dataclasses import dataclass

import numpy

from levelcross.clustered import ColoringParams, color_array
from levelcross.config import Settings
from levelcross.exceptions import InfeasibleEnumeration, InvalidInput
from levelcross.grid import CellIndex, CellLabeling, GridShape, intersection_dim, label_mask
from levelcross.lattice import LatticePoint
from levelcross.steinhaus import crossing_in_mask
from levelcross.utils import neighbour_offsets

logger = logging.getLogger(__name__)

SearchHook = ty.Callable[[CellLabeling], bool]
"""Per-labeling predicate of :func:`exhaustive_check_c1`, ``True`` meaning verified.

Must be picklable, i.e. a module-level function, when more than one worker is used.
"""

CONSISTENT = "consistent with a single value always sufficing"
INCONSISTENT = "counterexample found"


@dataclass(frozen=True)
class SingletonCrossing:
    """Cells labeled with ``value`` forming one component that crosses ``axis``."""

    value: LatticePoint
    cells: frozenset[CellIndex]
    axis: int


@dataclass(frozen=True)
class EnumerationReport:
    """Outcome of an exhaustive enumeration.

    ``enumerated`` counts the labelings satisfying the hypothesis, ``verified``
    those accepted by the check. ``counterexamples`` holds the rejected
    labelings, in enumeration order, up to a small limit.
    """

    k: int
    m: int
    radius: int
    projected: int
    enumerated: int
    verified: int
    elapsed: float
    verdict: str
    counterexamples: tuple[tuple[int, ...], ...] = ()


def singleton_sufficient(labeling: CellLabeling) -> SingletonCrossing | None:
    """Find a single value whose preimage has a component crossing the cube.

    Values are tried in lexicographic order, then axes in increasing order,
    then components by their smallest cell.

    Returns:
        the first crossing found, ``None`` if no value admits one.
    """
    for value in labeling.distinct_values():
        crossing = crossing_in_mask(labeling.mask_of(value))
        if crossing is not None:
            cells, axis = crossing
            return SingletonCrossing(value, cells, axis)
    return None


def naive_crossing(labeling: CellLabeling, value: LatticePoint) -> frozenset[int]:
    """Axes crossed by some component of the preimage of ``value``.

    Components are grown by breadth-first flood fill over cells sharing at least
    a corner.
    """
    shape = labeling.shape
    remaining = {cell for cell, v in labeling.items() if v == value}
    offsets = neighbour_offsets(shape.n)
    axes: set[int] = set()
    while remaining:
        start = min(remaining)
        remaining.discard(start)
        component = [start]
        queue = collections.deque([start])
        while queue:
            cell = queue.popleft()
            for offset in offsets:
                neighbour = tuple(c + o for c, o in zip(cell, offset))
                if neighbour in remaining:
                    remaining.discard(neighbour)
                    component.append(neighbour)
                    queue.append(neighbour)
        for axis in range(shape.n):
            coordinates = [c[axis] for c in component]
            if min(coordinates) == 1 and max(coordinates) == shape.k:
                axes.add(axis + 1)
    return frozenset(axes)


def singleton_check(labeling: CellLabeling) -> bool:
    """Default check of :func:`exhaustive_check_c1`, double checked by flood fill."""
    crossing = singleton_sufficient(labeling)
    return crossing is not None and crossing.axis in naive_crossing(labeling, crossing.value)


def projected_count(k: int, radius: int) -> int:
    """Labelings of ``K_k^2`` with values in ``[-radius, radius]`` and a fixed first value."""
    return (2 * radius + 1) ** (k * k - 1)


def _constraints(k: int, m: int) -> list[list[int]]:
    """For each cell position, the earlier positions whose cells meet it in dimension ``>= m``."""
    shape = GridShape(2, k)
    cells = list(shape.cells())
    return [
        [i for i in range(j) if intersection_dim(cells[i], cells[j], shape) >= m]
        for j in range(len(cells))
    ]


def _enumerate_branch(
    k: int,
    m: int,
    radius: int,
    prefix: tuple[int, ...],
    check: SearchHook,
    max_counterexamples: int,
) -> tuple[int, int, list[tuple[int, ...]]]:
    """Run the check on every valid completion of ``prefix``, cells in row-major order.

    Each free cell only takes the values within distance 1 of its already
    assigned neighbours, so invalid partial labelings are never extended.
    """
    size = k * k
    shape = GridShape(2, k)
    constraints = _constraints(k, m)
    values = list(prefix) + [0] * (size - len(prefix))
    enumerated = verified = 0
    counterexamples: list[tuple[int, ...]] = []

    def candidates(position: int) -> list[int]:
        return [
            v
            for v in range(-radius, radius + 1)
            if all(abs(values[i] - v) <= 1 for i in constraints[position])
        ]

    def visit() -> None:
        nonlocal enumerated, verified
        enumerated += 1
        labeling = CellLabeling(shape, numpy.array(values, dtype=numpy.int64).reshape(k, k, 1))
        if check(labeling):
            verified += 1
        elif len(counterexamples) < max_counterexamples:
            counterexamples.append(tuple(values))

    start = len(prefix)
    if any(abs(values[i] - values[p]) > 1 for p in range(start) for i in constraints[p]):
        return 0, 0, []
    if start == size:
        visit()
        return enumerated, verified, counterexamples
    stack = [iter(candidates(start))]
    while stack:
        position = start + len(stack) - 1
        value = next(stack[-1], None)
        if value is None:
            stack.pop()
            continue
        values[position] = value
        if position + 1 == size:
            visit()
        else:
            stack.append(iter(candidates(position + 1)))
    return enumerated, verified, counterexamples


def exhaustive_check_c1(
    k: int,
    m: int,
    radius: int = 2,
    budget: int | None = None,
    workers: int | None = None,
    search_hook: SearchHook | None = None,
    max_counterexamples: int = 10,
) -> EnumerationReport:
    """Check that a single value suffices on every small labeling of ``K_k^2``.

    Enumerates the labelings ``F: [k]^2 → [-radius, radius]`` with
    ``F(1, 1) = 0`` satisfying the hypothesis at parameter ``m``. The
    hypothesis and the level sets are invariant under translation of the
    values, so fixing the first value loses nothing. The branches given by the
    value of the second cell run on separate worker processes.

    Args:
        k: side of the grid.
        m: parameter of the hypothesis, ``0`` or ``1``.
        radius: largest absolute value of a label.
        budget: largest projected number of labelings, defaults to the
            configured enumeration budget.
        workers: number of worker processes, defaults to the configured count.
        search_hook: check run on each labeling instead of
            :func:`singleton_check`.
        max_counterexamples: number of rejected labelings kept in the report.

    Raises:
        InvalidInput: if a parameter is out of range.
        InfeasibleEnumeration: if the projected number of labelings exceeds the
            budget.
    """
    if k < 1:
        raise InvalidInput(f"Invalid grid side k={k}, should be at least 1.")
    if m not in (0, 1):
        raise InvalidInput(f"Invalid parameter m={m}, expected 0 or 1.")
    if radius < 0:
        raise InvalidInput(f"Invalid radius {radius}, should be non-negative.")
    settings = Settings.from_env().with_overrides(workers=workers, enumeration_budget=budget)
    projected = projected_count(k, radius)
    if projected > settings.enumeration_budget:
        raise InfeasibleEnumeration(
            f"Enumerating the labelings of the grid {k}^2 with values in "
            f"[-{radius}, {radius}] visits up to {projected} labelings, above the budget "
            f"{settings.enumeration_budget}."
        )
    check = singleton_check if search_hook is None else search_hook
    prefixes = [(0,)] if k == 1 else [(0, v) for v in range(-radius, radius + 1)]
    started = time.perf_counter()
    if settings.workers == 1:
        results = [
            _enumerate_branch(k, m, radius, prefix, check, max_counterexamples)
            for prefix in prefixes
        ]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=settings.workers) as executor:
            futures = [
                executor.submit(
                    _enumerate_branch, k, m, radius, prefix, check, max_counterexamples
                )
                for prefix in prefixes
            ]
            results = [future.result() for future in futures]
    enumerated = sum(r[0] for r in results)
    verified = sum(r[1] for r in results)
    counterexamples = tuple(c for r in results for c in r[2])[:max_counterexamples]
    elapsed = time.perf_counter() - started
    logger.info(
        "Checked %d labelings of the grid %d^2 at m=%d, %d verified in %.2fs.",
        enumerated,
        k,
        m,
        verified,
        elapsed,
    )
    return EnumerationReport(
        k=k,
        m=m,
        radius=radius,
        projected=projected,
        enumerated=enumerated,
        verified=verified,
        elapsed=elapsed,
        verdict=CONSISTENT if verified == enumerated else INCONSISTENT,
        counterexamples=counterexamples,
    )


def build_singleton_obstruction(n: int = 3) -> CellLabeling:
    """A labeling of ``K_{n!+1}^n`` where no single value has a crossing level set.

    Cells are colored with the clustered coloring of ``Z^n`` at distance
    parameter 1, whose ``n + 1`` colors are encoded injectively as vertices of
    ``{0, 1}^{n-1}`` by the binary digits of ``color - 1``. Values of distinct
    cells are at l∞ distance at most 1, so the hypothesis holds at every ``m``,
    while each level set component lies in a single cluster of ``n!`` cells,
    too few to cross a grid of side ``n! + 1``.

    Raises:
        InvalidInput: if ``n < 3``.
    """
    if n < 3:
        raise InvalidInput(f"Invalid dimension n={n}, the construction needs n >= 3.")
    params = ColoringParams(n, 1)
    shape = GridShape(n, math.factorial(n) + 1)
    # Cell i gets the color of the lattice point i.
    points = numpy.argwhere(numpy.ones(shape.dense_shape, dtype=bool)).astype(numpy.int64) + 1
    codes = color_array(points, params) - 1
    bits = (codes[:, numpy.newaxis] >> numpy.arange(n - 2, -1, -1)) & 1
    return CellLabeling(shape, bits.reshape(shape.dense_shape + (n - 1,)))


def largest_level_component(labeling: CellLabeling) -> int:
    """Number of cells of the largest r = 0 component of a level set."""
    largest = 0
    for value in labeling.distinct_values():
        labels, count = label_mask(labeling.mask_of(value))
        if count:
            largest = max(largest, int(numpy.bincount(labels.ravel())[1:].max()))
    return largest
