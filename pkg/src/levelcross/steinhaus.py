"""Monochromatic crossings of ``n``-colorings of the cube decomposition ``K_k^n``.

Whatever the coloring of the ``k^n`` cubes with ``n`` colors, some color class
contains a connected family of cubes whose union meets two opposite faces of
``I^n``. :func:`find_crossing` exhibits such a family.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy
import numpy.typing as npt

from levelcross.exceptions import InvalidInput, TheoremViolation
from levelcross.grid import (
    CellIndex,
    CellLabeling,
    GridShape,
    cells_of_mask,
    label_mask,
)
from levelcross.predicates import is_valid_coloring


@dataclass(frozen=True)
class ChessboardWitness:
    """Cells of a single color forming one component that crosses ``axis``."""

    color: int
    cells: frozenset[CellIndex]
    axis: int


def _crossing_components(labels: npt.NDArray[numpy.int32], axis: int) -> list[int]:
    first = numpy.unique(labels.take(0, axis=axis - 1))
    last = numpy.unique(labels.take(labels.shape[axis - 1] - 1, axis=axis - 1))
    return [int(c) for c in numpy.intersect1d(first, last) if c != 0]


def _first_occurrence(labels: npt.NDArray[numpy.int32], candidates: list[int]) -> int:
    """The candidate component holding the lexicographically smallest cell."""
    flat = labels.ravel()
    return min(candidates, key=lambda c: int(numpy.argmax(flat == c)))


def crossing_in_mask(mask: npt.NDArray[numpy.bool_]) -> tuple[frozenset[CellIndex], int] | None:
    """The first r = 0 component of a dense cell mask connecting two opposite faces.

    Axes are tried in increasing order. Among the components crossing the
    first crossed axis, the one holding the lexicographically smallest cell is
    returned with that axis.
    """
    labels, count = label_mask(mask)
    if count == 0:
        return None
    for axis in range(1, mask.ndim + 1):
        candidates = _crossing_components(labels, axis)
        if candidates:
            component = _first_occurrence(labels, candidates)
            return cells_of_mask(labels == component), axis
    return None


def find_crossing(labeling: CellLabeling) -> ChessboardWitness:
    """Find a monochromatic family of cells connecting two opposite faces.

    The search goes through colors in increasing order, then axes in increasing
    order, and returns the whole monochromatic component crossing that axis
    whose lexicographically smallest cell comes first.

    Args:
        labeling: a coloring of ``K_k^n`` with colors in ``[n]``.

    Raises:
        InvalidInput: if ``labeling`` is not a valid ``n``-coloring.
        TheoremViolation: if no crossing is found.

    Returns:
        the first crossing found.
    """
    reason = is_valid_coloring(labeling)
    if reason is not None:
        raise InvalidInput(reason)
    n = labeling.shape.n
    colors = labeling.values[..., 0]
    for color in range(1, n + 1):
        crossing = crossing_in_mask(colors == color)
        if crossing is not None:
            cells, axis = crossing
            return ChessboardWitness(color, cells, axis)
    raise TheoremViolation(
        f"No monochromatic crossing found in a {n}-coloring of the grid "
        f"{labeling.shape.k}^{n}."
    )


def random_coloring(
    shape: GridShape, rng: numpy.random.Generator, colors: int | None = None
) -> CellLabeling:
    """Uniformly random coloring of ``shape`` with colors in ``[colors]`` (default ``n``)."""
    num_colors = shape.n if colors is None else colors
    return CellLabeling.from_colors(shape, rng.integers(1, num_colors + 1, size=shape.dense_shape))
