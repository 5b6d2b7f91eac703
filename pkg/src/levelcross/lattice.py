"""Points of the integer lattice with the l∞ metric and their 1-connectivity.

Coordinates are Python integers, so there is no overflow at any magnitude. The
fixed-width ``int64`` arrays used by vectorized code elsewhere in the package are
only fed with coordinates bounded by ``10**6`` in absolute value.
"""

from __future__ import annotations

import typing as ty

from levelcross.exceptions import InvalidInput
from levelcross.utils import neighbour_offsets

LatticePoint = tuple[int, ...]
"""A point of ``Z^d``. The empty tuple is the only point of ``Z^0``."""

LatticeSet = frozenset[LatticePoint]


class UnionFind:
    """Disjoint sets with union by rank and path compression.

    Elements must be hashable. Elements are added lazily on first use.
    """

    __slots__ = ("_parent", "_rank")

    def __init__(self, elements: ty.Iterable[ty.Hashable] = ()) -> None:
        self._parent: dict[ty.Hashable, ty.Hashable] = {}
        self._rank: dict[ty.Hashable, int] = {}
        for element in elements:
            self.add(element)

    def add(self, element: ty.Hashable) -> None:
        if element not in self._parent:
            self._parent[element] = element
            self._rank[element] = 0

    def find(self, element: ty.Hashable) -> ty.Hashable:
        self.add(element)
        root = element
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[element] != root:
            self._parent[element], element = root, self._parent[element]
        return root

    def union(self, a: ty.Hashable, b: ty.Hashable) -> None:
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return
        if self._rank[root_a] < self._rank[root_b]:
            root_a, root_b = root_b, root_a
        self._parent[root_b] = root_a
        if self._rank[root_a] == self._rank[root_b]:
            self._rank[root_a] += 1

    def groups(self) -> list[list[ty.Hashable]]:
        by_root: dict[ty.Hashable, list[ty.Hashable]] = {}
        for element in self._parent:
            by_root.setdefault(self.find(element), []).append(element)
        return list(by_root.values())


def dimension_of(points: ty.Iterable[LatticePoint]) -> int | None:
    """Common dimension of ``points``, ``None`` for an empty collection.

    Raises:
        InvalidInput: if two points have different dimensions.
    """
    dimension: int | None = None
    for point in points:
        if dimension is None:
            dimension = len(point)
        elif len(point) != dimension:
            raise InvalidInput(
                f"Lattice points of different dimensions: {dimension} and {len(point)}."
            )
    return dimension


def linf_distance(a: LatticePoint, b: LatticePoint) -> int:
    if len(a) != len(b):
        raise InvalidInput(
            f"Cannot compute the distance between points of dimensions {len(a)} and {len(b)}."
        )
    return max((abs(x - y) for x, y in zip(a, b)), default=0)


def components_within(points: ty.Iterable[LatticePoint], radius: int) -> list[LatticeSet]:
    """Partition ``points`` into ``radius``-connected components.

    Components are sorted by their lexicographically smallest member.
    """
    point_set = frozenset(points)
    dimension = dimension_of(point_set)
    if dimension is None:
        return []
    union_find = UnionFind(point_set)
    offsets = neighbour_offsets(dimension, radius)
    for point in point_set:
        for offset in offsets:
            neighbour = tuple(p + o for p, o in zip(point, offset))
            if neighbour in point_set:
                union_find.union(point, neighbour)
    components = [
        frozenset(ty.cast(list[LatticePoint], group)) for group in union_find.groups()
    ]
    return sorted(components, key=min)


def one_connected_components(points: ty.Iterable[LatticePoint]) -> list[LatticeSet]:
    """Partition a finite lattice set into its maximal 1-connected subsets.

    Two points are joined when a path between them exists inside the set with
    consecutive points at l∞ distance at most 1.

    Args:
        points: a finite collection of points of a common dimension.

    Returns:
        the components, ordered by their lexicographically smallest member.
    """
    return components_within(points, 1)


def is_one_connected(points: ty.Iterable[LatticePoint]) -> bool:
    return len(one_connected_components(points)) <= 1
