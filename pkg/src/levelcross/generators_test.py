import numpy
import pytest

from levelcross.discrete import validate_condition
from levelcross.exceptions import InvalidInput
from levelcross.generators import random_polynomial_labeling, random_walk_labeling
from levelcross.grid import GridShape


@pytest.mark.parametrize("n,k", [(1, 4), (2, 3), (2, 8), (3, 4)])
def test_polynomial_labelings_are_valid_at_zero(n: int, k: int) -> None:
    rng = numpy.random.default_rng(k)
    for _ in range(10):
        labeling = random_polynomial_labeling(GridShape(n, k), rng)
        assert labeling.d == n - 1
        assert validate_condition(labeling, 0) == []


def test_polynomial_labeling_invalid_degree() -> None:
    with pytest.raises(InvalidInput, match=r"^Invalid polynomial degree"):
        random_polynomial_labeling(GridShape(2, 2), numpy.random.default_rng(0), degree=0)


@pytest.mark.parametrize("n,m", [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)])
def test_walk_labelings_are_valid(n: int, m: int) -> None:
    rng = numpy.random.default_rng(n * 3 + m)
    for _ in range(10):
        labeling = random_walk_labeling(GridShape(n, 4), m, rng)
        assert validate_condition(labeling, m) == []


def test_walk_labelings_are_seeded() -> None:
    shape = GridShape(2, 6)
    first = random_walk_labeling(shape, 1, numpy.random.default_rng(3))
    second = random_walk_labeling(shape, 1, numpy.random.default_rng(3))
    assert first == second


def test_walk_labeling_invalid_parameter() -> None:
    with pytest.raises(InvalidInput, match=r"^Invalid parameter m=2"):
        random_walk_labeling(GridShape(2, 3), 2, numpy.random.default_rng(0))
