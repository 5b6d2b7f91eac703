"""Decomposition of the unit cube ``I^n`` into ``k^n`` closed subcubes.

A subcube is identified by its index ``i ∈ [k]^n`` (1-based), the subcube of
index ``i`` being ``∏ [(i_s - 1)/k, i_s/k]``. Geometry is computed with exact
rationals and combinatorics directly on indices.
"""

from __future__ import annotations

import typing as ty
from dataclasses import dataclass
from fractions import Fraction

import numpy
import numpy.typing as npt
from scipy import ndimage

from levelcross.exceptions import InvalidInput
from levelcross.lattice import LatticePoint
from levelcross.utils import iter_indices

CellIndex = tuple[int, ...]
Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class GridShape:
    """Shape of the decomposition ``K_k^n``: dimension ``n`` and ``k`` cubes per axis."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.k < 1:
            raise InvalidInput(
                f"Invalid grid shape n={self.n}, k={self.k}, both should be at least 1."
            )

    @property
    def num_cells(self) -> int:
        return self.k**self.n

    @property
    def dense_shape(self) -> tuple[int, ...]:
        return (self.k,) * self.n

    def cells(self) -> ty.Iterator[CellIndex]:
        """Iterate over all the cell indices in row-major (lexicographic) order."""
        return iter_indices(self.k, self.n)

    def contains(self, cell: CellIndex) -> bool:
        return len(cell) == self.n and all(1 <= i <= self.k for i in cell)

    def check(self, cell: CellIndex) -> None:
        if not self.contains(cell):
            raise InvalidInput(f"Invalid cell index {cell} for the grid {self.k}^{self.n}.")


def cube_bounds(cell: CellIndex, shape: GridShape) -> tuple[Interval, ...]:
    """Closed intervals ``[(i_s - 1)/k, i_s/k]`` of the cube indexed by ``cell``."""
    shape.check(cell)
    return tuple((Fraction(i - 1, shape.k), Fraction(i, shape.k)) for i in cell)


def cube_center(cell: CellIndex, shape: GridShape) -> tuple[Fraction, ...]:
    shape.check(cell)
    return tuple(Fraction(2 * i - 1, 2 * shape.k) for i in cell)


def intersection_dim(a: CellIndex, b: CellIndex, shape: GridShape) -> int:
    """Dimension of the intersection of two cubes, ``-1`` when it is empty.

    Two cubes intersect if and only if their indices are at l∞ distance at most
    1, and they then share a face of dimension the number of equal coordinates.
    """
    shape.check(a)
    shape.check(b)
    if any(abs(x - y) > 1 for x, y in zip(a, b)):
        return -1
    return sum(1 for x, y in zip(a, b) if x == y)


def box_intersection_dim(a: CellIndex, b: CellIndex, shape: GridShape) -> int:
    """Dimension of the intersection of two cubes computed from their exact bounds."""
    dimension = 0
    for (low_a, high_a), (low_b, high_b) in zip(cube_bounds(a, shape), cube_bounds(b, shape)):
        low, high = max(low_a, low_b), min(high_a, high_b)
        if low > high:
            return -1
        if low < high:
            dimension += 1
    return dimension


def components_min_dim(
    cells: ty.Iterable[CellIndex], r: int, shape: GridShape
) -> list[frozenset[CellIndex]]:
    """Components of ``cells`` under the relation ``intersection_dim >= r``.

    For ``r = 0`` this is the 1-connectivity of the index set.

    Returns:
        the components, ordered by their lexicographically smallest cell.
    """
    cell_set = frozenset(cells)
    for cell in cell_set:
        shape.check(cell)
    if not 0 <= r <= shape.n:
        raise InvalidInput(f"Invalid intersection dimension r={r}, expected 0 <= r <= {shape.n}.")
    if not cell_set:
        return []
    if r == shape.n:
        return [frozenset({cell}) for cell in sorted(cell_set)]
    mask = numpy.zeros(shape.dense_shape, dtype=bool)
    mask[tuple((numpy.array(list(cell_set)) - 1).T)] = True
    labels, _ = label_mask(mask, r)
    indices = numpy.argwhere(mask)
    owners = labels[mask]
    order = numpy.argsort(owners, kind="stable")
    groups = numpy.split(indices[order], numpy.flatnonzero(numpy.diff(owners[order])) + 1)
    return sorted((frozenset(map(tuple, (g + 1).tolist())) for g in groups), key=min)


def touched_axes(cells: ty.Iterable[CellIndex], shape: GridShape) -> frozenset[int]:
    """Axes ``i`` (1-based) such that ``cells`` meet both faces ``x_i = 0`` and ``x_i = 1``."""
    cell_list = list(cells)
    if not cell_list:
        return frozenset()
    return frozenset(
        axis + 1
        for axis in range(shape.n)
        if min(c[axis] for c in cell_list) == 1 and max(c[axis] for c in cell_list) == shape.k
    )


def crossing_axes(cells: ty.Iterable[CellIndex], shape: GridShape) -> frozenset[int]:
    """Axes whose opposite faces are connected by the union of the cubes in ``cells``.

    The union connects the ``i``-th opposite faces when it is connected, which for
    closed cubes means that ``cells`` is a single 1-connected index set, and when
    it meets both faces.
    """
    cell_set = frozenset(cells)
    if len(components_min_dim(cell_set, 0, shape)) != 1:
        return frozenset()
    return touched_axes(cell_set, shape)


class CellLabeling:
    """A total map from the cells of a grid to lattice points of a fixed dimension.

    Values are stored densely in a read-only ``int64`` array of shape
    ``(k,)*n + (d,)``, the value of cell ``i`` being ``values[i - 1]``. Its
    row-major order is the lexicographic order of cell indices.
    """

    __slots__ = ("_shape", "_values")

    def __init__(self, shape: GridShape, values: npt.ArrayLike) -> None:
        array = numpy.array(values, dtype=numpy.int64)
        if array.ndim != shape.n + 1 or array.shape[:-1] != shape.dense_shape:
            raise InvalidInput(
                f"Expected labeling values of shape {shape.dense_shape} + (d,), "
                f"got {array.shape}."
            )
        array.setflags(write=False)
        self._shape = shape
        self._values = array

    @staticmethod
    def from_function(
        shape: GridShape, function: ty.Callable[[CellIndex], ty.Sequence[int]], d: int
    ) -> CellLabeling:
        values = numpy.empty(shape.dense_shape + (d,), dtype=numpy.int64)
        for cell in shape.cells():
            values[tuple(i - 1 for i in cell)] = function(cell)
        return CellLabeling(shape, values)

    @staticmethod
    def from_colors(shape: GridShape, colors: npt.ArrayLike) -> CellLabeling:
        """Build a 1-dimensional labeling from a dense array of shape ``(k,)*n``."""
        return CellLabeling(shape, numpy.asarray(colors, dtype=numpy.int64)[..., numpy.newaxis])

    @property
    def shape(self) -> GridShape:
        return self._shape

    @property
    def d(self) -> int:
        return int(self._values.shape[-1])

    @property
    def values(self) -> npt.NDArray[numpy.int64]:
        return self._values

    def value(self, cell: CellIndex) -> LatticePoint:
        self._shape.check(cell)
        return tuple(int(x) for x in self._values[tuple(i - 1 for i in cell)])

    def cells(self) -> ty.Iterator[CellIndex]:
        return self._shape.cells()

    def items(self) -> ty.Iterator[tuple[CellIndex, LatticePoint]]:
        for cell in self.cells():
            yield cell, self.value(cell)

    def flat_values(self) -> npt.NDArray[numpy.int64]:
        """Values as a ``(k^n, d)`` array in row-major order."""
        return self._values.reshape(self._shape.num_cells, self.d)

    def distinct_values(self) -> list[LatticePoint]:
        """Values occurring in the labeling, in lexicographic order."""
        return sorted({tuple(int(x) for x in row) for row in self.flat_values()})

    def mask_of(self, value: LatticePoint) -> npt.NDArray[numpy.bool_]:
        """Dense boolean mask of the cells labeled with ``value``."""
        if len(value) != self.d:
            raise InvalidInput(f"Expected a value of dimension {self.d}, got {len(value)}.")
        return numpy.all(self._values == numpy.asarray(value, dtype=numpy.int64), axis=-1)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CellLabeling)
            and self._shape == other._shape
            and numpy.array_equal(self._values, other._values)
        )

    def __hash__(self) -> int:
        return hash((self._shape, self._values.tobytes()))

    def __repr__(self) -> str:
        return f"CellLabeling(n={self._shape.n}, k={self._shape.k}, d={self.d})"


def label_mask(
    mask: npt.NDArray[numpy.bool_], r: int = 0
) -> tuple[npt.NDArray[numpy.int32], int]:
    """Label the components of a dense cell mask under ``intersection_dim >= r``.

    Cells sharing a face of dimension at least ``r`` differ in at most ``n - r``
    coordinates, which is the structuring element of connectivity ``n - r``.
    For ``r = 0`` it is the full ``3^n`` element. Requires ``r < n``.

    Returns:
        an array with ``0`` outside of the mask and component numbers starting at
        ``1`` inside it, and the number of components.
    """
    structure = ndimage.generate_binary_structure(mask.ndim, mask.ndim - r)
    labels, count = ndimage.label(mask, structure=structure)
    return labels, int(count)


def mask_crossing_axes(component: npt.NDArray[numpy.bool_]) -> frozenset[int]:
    """Axes (1-based) whose two boundary layers are both met by ``component``.

    ``component`` must hold a single r = 0 component, typically ``labels == c``.
    """
    axes = []
    for axis in range(component.ndim):
        first = component.take(0, axis=axis)
        last = component.take(component.shape[axis] - 1, axis=axis)
        if first.any() and last.any():
            axes.append(axis + 1)
    return frozenset(axes)


def cells_of_mask(mask: npt.NDArray[numpy.bool_]) -> frozenset[CellIndex]:
    return frozenset(map(tuple, (numpy.argwhere(mask) + 1).tolist()))
