"""Crossings of labelings of ``K_k^n`` by points of ``Z^{n-1}``.

Assume that cells sharing a face of dimension at least ``m`` receive values at
l∞ distance at most 1. Coloring each value with the ``(m + 1)``-distance
clustered ``n``-coloring of ``Z^{n-1}`` turns the labeling into an
``n``-coloring of the grid. A monochromatic crossing of that coloring only
takes values in a single cluster, which gives a 1-connected set ``P`` of at
most ``(n-1)!·(m+1)^(n-1)`` values whose preimage connects opposite faces.
"""

from __future__ import annotations

import collections
from dataclasses import dataclass

import numpy

from levelcross.clustered import ClusterId, ColoringParams, decode_array, enumerate_cluster
from levelcross.exceptions import InvalidInput, TheoremViolation
from levelcross.grid import CellIndex, CellLabeling
from levelcross.lattice import LatticePoint, LatticeSet, one_connected_components
from levelcross.predicates import is_valid_lattice_labeling
from levelcross.steinhaus import find_crossing
from levelcross.utils import forward_offsets, neighbour_offsets, shifted_slices
from levelcross.verification import value_set_bound

CellPair = tuple[CellIndex, CellIndex]


@dataclass(frozen=True)
class DiscreteWitness:
    """Cells crossing ``axis`` whose values all lie in the 1-connected ``value_set``.

    ``bound`` is the guaranteed upper bound ``(n-1)!·(m+1)^(n-1)`` on the size
    of ``value_set``.
    """

    value_set: LatticeSet
    cells: frozenset[CellIndex]
    axis: int
    bound: int


def _check_parameters(labeling: CellLabeling, m: int) -> None:
    reason = is_valid_lattice_labeling(labeling)
    if reason is not None:
        raise InvalidInput(reason)
    n = labeling.shape.n
    if not 0 <= m <= n - 1:
        raise InvalidInput(f"Invalid parameter m={m}, expected 0 <= m <= {n - 1}.")


def validate_condition(labeling: CellLabeling, m: int) -> list[CellPair]:
    """List the cell pairs breaking the hypothesis at parameter ``m``.

    A pair breaks the hypothesis when the two cubes share a face of dimension at
    least ``m`` but their values are at l∞ distance more than 1.

    Args:
        labeling: a labeling of ``K_k^n`` by points of ``Z^{n-1}``.
        m: the face dimension threshold, ``0 <= m <= n - 1``.

    Raises:
        InvalidInput: if ``m`` is out of range or the values have the wrong
            dimension.

    Returns:
        the violating pairs ``(a, b)`` with ``a < b`` lexicographically, sorted.
    """
    _check_parameters(labeling, m)
    if labeling.d == 0:
        return []
    values = labeling.values
    grid = values.shape[:-1]
    violations: list[CellPair] = []
    for offset in forward_offsets(labeling.shape.n):
        if offset.count(0) < m:
            continue
        source, target = shifted_slices(grid, offset)
        gaps = numpy.abs(values[source] - values[target]).max(axis=-1)
        for index in numpy.argwhere(gaps > 1):
            cell = tuple(int(i) + s.start + 1 for i, s in zip(index, source))
            violations.append((cell, tuple(c + o for c, o in zip(cell, offset))))
    return sorted(violations)


def composed_coloring(labeling: CellLabeling, m: int) -> CellLabeling:
    """Color each cell with the ``(m+1)``-distance clustered coloring of its value."""
    params = ColoringParams(labeling.shape.n - 1, m + 1)
    _, _, k = decode_array(labeling.flat_values(), params)
    colors = k + 1
    return CellLabeling.from_colors(labeling.shape, colors.reshape(labeling.shape.dense_shape))


def solve(
    labeling: CellLabeling, m: int, shrink_values: bool = False, validate: bool = True
) -> DiscreteWitness:
    """Find a connected family of cells crossing ``I^n`` with few distinct values.

    Args:
        labeling: a labeling of ``K_k^n`` by points of ``Z^{n-1}`` satisfying the
            hypothesis at parameter ``m``.
        m: the face dimension threshold of the hypothesis.
        shrink_values: if ``True``, post-process the witness with :func:`shrink`.
        validate: if ``False``, trust the caller that the labeling satisfies the
            hypothesis and skip checking it.

    Raises:
        InvalidInput: if the labeling breaks the hypothesis.
        TheoremViolation: if the values of the crossing cells do not lie in a
            single cluster.

    Returns:
        the witness. Its value set is a whole cluster of the clustered coloring
        unless ``shrink_values`` is set.
    """
    violations = validate_condition(labeling, m) if validate else []
    if violations:
        raise InvalidInput(
            f"The labeling breaks the hypothesis at m={m}: {len(violations)} cell pair(s) "
            f"violate it, the first one being {violations[0]}."
        )
    shape = labeling.shape
    n = shape.n
    bound = value_set_bound(n, m)
    if n == 1:
        witness = DiscreteWitness(
            value_set=frozenset({labeling.value((1,))}),
            cells=frozenset(shape.cells()),
            axis=1,
            bound=bound,
        )
    else:
        crossing = find_crossing(composed_coloring(labeling, m))
        params = ColoringParams(n - 1, m + 1)
        index = numpy.array(list(crossing.cells), dtype=numpy.int64) - 1
        values = labeling.values[tuple(index.T)]
        _, u, k = decode_array(values, params)
        ids = numpy.column_stack([k, u])
        if not (ids == ids[0]).all():
            spanned = len(numpy.unique(ids, axis=0))
            raise TheoremViolation(
                f"The values of a monochromatic crossing span {spanned} clusters."
            )
        cluster = ClusterId(int(k[0]), tuple(int(x) for x in u[0]))
        witness = DiscreteWitness(
            value_set=enumerate_cluster(cluster, params),
            cells=crossing.cells,
            axis=crossing.axis,
            bound=bound,
        )
    return shrink(witness, labeling) if shrink_values else witness


def _shortest_path(
    sources: set[LatticePoint], targets: set[LatticePoint], allowed: LatticeSet
) -> list[LatticePoint]:
    """Breadth-first shortest 1-path inside ``allowed`` from ``sources`` to ``targets``."""
    dimension = len(next(iter(sources)))
    offsets = neighbour_offsets(dimension)
    parents: dict[LatticePoint, LatticePoint | None] = {s: None for s in sorted(sources)}
    queue = collections.deque(sorted(sources))
    while queue:
        point = queue.popleft()
        if point in targets:
            path = []
            current: LatticePoint | None = point
            while current is not None:
                path.append(current)
                current = parents[current]
            return path
        for offset in offsets:
            neighbour = tuple(p + o for p, o in zip(point, offset))
            if neighbour in allowed and neighbour not in parents:
                parents[neighbour] = point
                queue.append(neighbour)
    raise TheoremViolation("The value set of a witness is not 1-connected.")


def shrink(witness: DiscreteWitness, labeling: CellLabeling) -> DiscreteWitness:
    """Reduce the value set to the values of the crossing cells, made 1-connected.

    The values taken on the witness cells are joined by shortest paths inside
    the original value set until they form a single 1-connected set. The
    result is a subset of the original value set, so ``bound`` still holds.
    """
    hull = {labeling.value(cell) for cell in witness.cells}
    components = one_connected_components(hull)
    while len(components) > 1:
        first = set(components[0])
        others = set().union(*components[1:])
        hull.update(_shortest_path(first, others, witness.value_set))
        components = one_connected_components(hull)
    return DiscreteWitness(
        value_set=frozenset(hull),
        cells=witness.cells,
        axis=witness.axis,
        bound=witness.bound,
    )
