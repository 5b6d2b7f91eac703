import numpy

from levelcross.grid import CellLabeling, GridShape
from levelcross.predicates import is_valid_coloring, is_valid_lattice_labeling


def test_is_valid_coloring() -> None:
    shape = GridShape(2, 2)
    assert is_valid_coloring(CellLabeling.from_colors(shape, [[1, 2], [2, 2]])) is None
    reason = is_valid_coloring(CellLabeling.from_colors(shape, [[0, 2], [2, 2]]))
    assert reason is not None and "colors 1 to 2" in reason
    reason = is_valid_coloring(CellLabeling(shape, numpy.ones((2, 2, 3))))
    assert reason is not None and "1-dimensional" in reason


def test_is_valid_lattice_labeling() -> None:
    shape = GridShape(3, 2)
    assert is_valid_lattice_labeling(CellLabeling(shape, numpy.zeros((2, 2, 2, 2)))) is None
    reason = is_valid_lattice_labeling(CellLabeling(shape, numpy.zeros((2, 2, 2, 1))))
    assert reason is not None and "dimension 2, got 1" in reason
