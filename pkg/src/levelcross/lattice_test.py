import itertools

import numpy
import pytest

from levelcross.exceptions import InvalidInput
from levelcross.lattice import (
    UnionFind,
    components_within,
    dimension_of,
    is_one_connected,
    linf_distance,
    one_connected_components,
)


def test_union_find() -> None:
    union_find = UnionFind(range(5))
    union_find.union(0, 1)
    union_find.union(3, 4)
    union_find.union(1, 0)
    assert union_find.find(0) == union_find.find(1)
    assert union_find.find(2) != union_find.find(3)
    assert sorted(sorted(g) for g in union_find.groups()) == [[0, 1], [2], [3, 4]]


def test_union_find_adds_lazily() -> None:
    union_find = UnionFind()
    union_find.union("a", "b")
    assert union_find.find("a") == union_find.find("b")
    assert union_find.find("c") == "c"


def test_dimension_of() -> None:
    assert dimension_of([]) is None
    assert dimension_of([(), ()]) == 0
    assert dimension_of([(1, 2), (3, 4)]) == 2
    with pytest.raises(InvalidInput, match=r"^Lattice points of different dimensions"):
        dimension_of([(1,), (1, 2)])


def test_linf_distance() -> None:
    assert linf_distance((0, 0), (3, -5)) == 5
    assert linf_distance((), ()) == 0
    with pytest.raises(InvalidInput):
        linf_distance((0,), (0, 0))


def test_one_connected_components() -> None:
    points = [(0, 0), (1, 1), (2, 2), (5, 5), (5, 6), (0, 3)]
    assert one_connected_components(points) == [
        frozenset({(0, 0), (1, 1), (2, 2)}),
        frozenset({(0, 3)}),
        frozenset({(5, 5), (5, 6)}),
    ]


def test_components_within_radius() -> None:
    points = [(0,), (2,), (5,)]
    assert components_within(points, 1) == [
        frozenset({(0,)}),
        frozenset({(2,)}),
        frozenset({(5,)}),
    ]
    assert components_within(points, 2) == [frozenset({(0,), (2,)}), frozenset({(5,)})]
    assert components_within(points, 3) == [frozenset(points)]
    assert components_within([], 1) == []


@pytest.mark.parametrize(
    "points,expected",
    [
        ([], True),
        ([()], True),
        ([(7, -3)], True),
        ([(0, 0, 0), (1, 1, 1), (2, 1, 0)], True),
        ([(0, 0), (2, 0)], False),
        ([(10**30,), (10**30 + 1,)], True),
    ],
)
def test_is_one_connected(points: list[tuple[int, ...]], expected: bool) -> None:
    assert is_one_connected(points) == expected


def _random_points(
    rng: numpy.random.Generator, count: int, n: int, side: int
) -> list[tuple[int, ...]]:
    rows = rng.integers(-side, side + 1, size=(count, n))
    return [tuple(int(x) for x in row) for row in rows]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_linf_distance_is_a_metric(n: int) -> None:
    rng = numpy.random.default_rng(n)
    for _ in range(200):
        a, b, c = _random_points(rng, 3, n, 50)
        assert linf_distance(a, b) == linf_distance(b, a)
        assert (linf_distance(a, b) == 0) == (a == b)
        assert linf_distance(a, c) <= linf_distance(a, b) + linf_distance(b, c)


@pytest.mark.parametrize("n,count,side", [(1, 10, 8), (2, 40, 6), (3, 60, 3), (4, 50, 2)])
def test_one_connected_components_partition(n: int, count: int, side: int) -> None:
    rng = numpy.random.default_rng(17 * n + count)
    for _ in range(20):
        points = frozenset(_random_points(rng, count, n, side))
        components = one_connected_components(points)
        assert sum(len(c) for c in components) == len(points)
        assert frozenset().union(*components) == points
        assert all(is_one_connected(c) for c in components)
        for first, second in itertools.combinations(components, 2):
            assert not first & second
            assert min(linf_distance(a, b) for a in first for b in second) >= 2


def test_components_within_separation() -> None:
    rng = numpy.random.default_rng(3)
    for radius in (1, 2, 3):
        points = frozenset(_random_points(rng, 30, 2, 10))
        components = components_within(points, radius)
        assert frozenset().union(*components) == points
        for first, second in itertools.combinations(components, 2):
            assert min(linf_distance(a, b) for a in first for b in second) > radius
