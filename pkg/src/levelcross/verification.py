"""Independent checks of the witnesses produced by the solvers.

Verifiers recompute every property from the input labeling or function and the
witness alone, with plain set based connectivity instead of the dense
labeling used by the solvers. Each verifier returns the list of reasons why the
witness is invalid, an empty list meaning the witness is valid.
"""

from __future__ import annotations

import math
import typing as ty

import numpy
import numpy.typing as npt

from levelcross.grid import CellIndex, CellLabeling, GridShape
from levelcross.lattice import LatticeSet, dimension_of, is_one_connected
from levelcross.utils import forward_offsets, shifted_slices

if ty.TYPE_CHECKING:
    from levelcross.continuous import ContinuousWitness
    from levelcross.discrete import DiscreteWitness
    from levelcross.functions import ContinuousFn
    from levelcross.steinhaus import ChessboardWitness


def _verify_crossing(cells: frozenset[CellIndex], axis: int, shape: GridShape) -> list[str]:
    reasons: list[str] = []
    if not cells:
        return ["The witness has no cell."]
    invalid = sorted(c for c in cells if not shape.contains(c))
    if invalid:
        return [f"Cell {invalid[0]} is not a cell of the grid {shape.k}^{shape.n}."]
    if not 1 <= axis <= shape.n:
        reasons.append(f"Invalid axis {axis}.")
    elif not (
        any(c[axis - 1] == 1 for c in cells) and any(c[axis - 1] == shape.k for c in cells)
    ):
        reasons.append(f"The cells do not meet both faces orthogonal to axis {axis}.")
    if not is_one_connected(cells):
        reasons.append("The cells do not form a single connected family.")
    if len(cells) < shape.k:
        reasons.append(f"A crossing needs at least {shape.k} cells, got {len(cells)}.")
    return reasons


def verify_chessboard_witness(
    labeling: CellLabeling, witness: ChessboardWitness
) -> list[str]:
    shape = labeling.shape
    reasons: list[str] = []
    if not 1 <= witness.color <= shape.n:
        reasons.append(f"Invalid color {witness.color}.")
    reasons.extend(_verify_crossing(witness.cells, witness.axis, shape))
    if reasons:
        return reasons
    for cell in sorted(witness.cells):
        if labeling.value(cell) != (witness.color,):
            reasons.append(f"Cell {cell} does not have color {witness.color}.")
            break
    return reasons


def value_set_bound(n: int, m: int) -> int:
    """Size bound ``(n-1)!·(m+1)^(n-1)`` on the value set of a discrete crossing."""
    return math.factorial(n - 1) * (m + 1) ** (n - 1)


def verify_value_set(value_set: LatticeSet, n: int, bound: int) -> list[str]:
    reasons: list[str] = []
    if not value_set:
        return ["The value set is empty."]
    if dimension_of(value_set) != n - 1:
        return [f"The value set should contain points of dimension {n - 1}."]
    if not is_one_connected(value_set):
        reasons.append("The value set is not 1-connected.")
    if len(value_set) > bound:
        reasons.append(f"The value set has {len(value_set)} points, more than {bound}.")
    return reasons


def verify_discrete_witness(
    labeling: CellLabeling, m: int, witness: DiscreteWitness
) -> list[str]:
    shape = labeling.shape
    reasons: list[str] = []
    expected_bound = value_set_bound(shape.n, m)
    if witness.bound != expected_bound:
        reasons.append(f"The bound should be {expected_bound}, got {witness.bound}.")
    reasons.extend(verify_value_set(witness.value_set, shape.n, expected_bound))
    crossing = _verify_crossing(witness.cells, witness.axis, shape)
    reasons.extend(crossing)
    if crossing:
        return reasons
    for cell in sorted(witness.cells):
        if labeling.value(cell) not in witness.value_set:
            reasons.append(f"The value of cell {cell} is not in the value set.")
            break
    return reasons


def verify_weakened_condition(labeling: CellLabeling, m: int) -> list[str]:
    """Check that intersecting cells have values at l∞ distance at most ``m + 1``.

    Labelings whose cells sharing a face of dimension at least ``m`` have values
    at distance at most 1 always satisfy this weaker condition.
    """
    values = labeling.values
    reasons: list[str] = []
    if labeling.d == 0:
        return reasons
    grid = values.shape[:-1]
    for offset in forward_offsets(labeling.shape.n):
        source, target = shifted_slices(grid, offset)
        gaps = numpy.abs(values[source] - values[target]).max(axis=-1)
        for index in numpy.argwhere(gaps > m + 1)[:1]:
            cell = tuple(int(i) + s.start + 1 for i, s in zip(index, source))
            reasons.append(
                f"Cells {cell} and {tuple(c + o for c, o in zip(cell, offset))} intersect "
                f"but their values are at distance more than {m + 1}."
            )
    return reasons


def sample_indices(
    cells: ty.Iterable[CellIndex], shape: GridShape, refinement: int
) -> tuple[npt.NDArray[numpy.int64], int]:
    """Vertices of a regular subdivision of each cell, shared vertices counted once.

    Each cell is sampled at ``2^refinement + 1`` points per axis, corners
    included, center included for ``refinement >= 1``.

    Returns:
        the integer coordinates of the samples and the resolution ``r`` they
        refer to, sample ``s`` being the point ``s / r`` of ``I^n``.
    """
    per_cell = 2**refinement
    steps = numpy.arange(per_cell + 1)
    corners = (numpy.array(list(cells), dtype=numpy.int64).reshape(-1, shape.n) - 1) * per_cell
    local = numpy.stack(
        [g.ravel() for g in numpy.meshgrid(*([steps] * shape.n), indexing="ij")], axis=1
    )
    samples = (corners[:, None, :] + local[None, :, :]).reshape(-1, shape.n)
    resolution = per_cell * shape.k
    dims = (resolution + 1,) * shape.n
    keys = numpy.unique(numpy.ravel_multi_index(tuple(samples.T), dims))
    return numpy.stack(numpy.unravel_index(keys, dims), axis=1).astype(numpy.int64), resolution


def verify_continuous_witness(
    function: ContinuousFn, witness: ContinuousWitness, refinement: int = 1
) -> list[str]:
    """Check that the witness cells cross an axis and lie in ``f^{-1}[B(p, ε)]``.

    The supremum of ``‖f - p‖`` over the union of the cells is bounded by the
    maximum over sample points plus the Lipschitz constant times the largest
    l∞ distance from a point of a cell to the closest sample.
    """
    shape = witness.shape
    reasons = _verify_crossing(witness.cells, witness.axis, shape)
    if reasons:
        return reasons
    n = shape.n
    if len(witness.p) != n - 1:
        return [f"The point p should have dimension {n - 1}, got {len(witness.p)}."]
    if n == 1:
        return reasons
    indices, resolution = sample_indices(witness.cells, shape, refinement)
    points = indices / resolution
    distances = numpy.linalg.norm(function(points) - numpy.asarray(witness.p), axis=1)
    slack = math.sqrt(n - 1) * function.lipschitz / (2 ** (refinement + 1) * shape.k)
    bound = float(distances.max()) + slack
    if not bound < witness.epsilon:
        reasons.append(
            f"The certified distance bound {bound} is not smaller than epsilon={witness.epsilon}."
        )
    return reasons
