import numpy

from levelcross.continuous import ContinuousWitness
from levelcross.discrete import DiscreteWitness
from levelcross.functions import projection
from levelcross.grid import CellLabeling, GridShape
from levelcross.steinhaus import ChessboardWitness
from levelcross.verification import (
    sample_indices,
    value_set_bound,
    verify_chessboard_witness,
    verify_continuous_witness,
    verify_discrete_witness,
    verify_value_set,
    verify_weakened_condition,
)


def _diagonal() -> CellLabeling:
    return CellLabeling.from_colors(GridShape(2, 2), [[1, 2], [2, 1]])


def test_verify_chessboard_witness() -> None:
    coloring = _diagonal()
    diagonal = frozenset({(1, 1), (2, 2)})
    assert verify_chessboard_witness(coloring, ChessboardWitness(1, diagonal, 1)) == []
    assert verify_chessboard_witness(
        coloring, ChessboardWitness(2, diagonal, 1)
    ) == ["Cell (1, 1) does not have color 2."]
    assert verify_chessboard_witness(coloring, ChessboardWitness(1, frozenset(), 1)) == [
        "The witness has no cell."
    ]
    assert verify_chessboard_witness(coloring, ChessboardWitness(3, diagonal, 1)) == [
        "Invalid color 3."
    ]


def test_verify_chessboard_witness_geometry() -> None:
    coloring = CellLabeling.from_colors(GridShape(2, 3), numpy.ones((3, 3)))
    reasons = verify_chessboard_witness(
        coloring, ChessboardWitness(1, frozenset({(1, 1), (3, 1)}), 1)
    )
    assert reasons == [
        "The cells do not form a single connected family.",
        "A crossing needs at least 3 cells, got 2.",
    ]
    reasons = verify_chessboard_witness(
        coloring, ChessboardWitness(1, frozenset({(1, 1), (2, 1), (3, 1)}), 2)
    )
    assert reasons == ["The cells do not meet both faces orthogonal to axis 2."]
    reasons = verify_chessboard_witness(
        coloring, ChessboardWitness(1, frozenset({(1, 1), (4, 1)}), 1)
    )
    assert reasons == ["Cell (4, 1) is not a cell of the grid 3^2."]


def test_value_set_bound() -> None:
    assert value_set_bound(1, 0) == 1
    assert value_set_bound(2, 0) == 1
    assert value_set_bound(2, 1) == 2
    assert value_set_bound(3, 0) == 2
    assert value_set_bound(3, 2) == 18


def test_verify_value_set() -> None:
    assert verify_value_set(frozenset({(0, 0), (1, 1)}), 3, 2) == []
    assert verify_value_set(frozenset(), 3, 2) == ["The value set is empty."]
    assert verify_value_set(frozenset({(0, 0), (2, 2)}), 3, 2) == [
        "The value set is not 1-connected."
    ]
    assert verify_value_set(frozenset({(0,), (1,), (2,)}), 2, 2) == [
        "The value set has 3 points, more than 2."
    ]


def test_verify_discrete_witness() -> None:
    labeling = CellLabeling.from_function(GridShape(2, 2), lambda cell: (cell[0],), d=1)
    good = DiscreteWitness(frozenset({(1,), (2,)}), frozenset({(1, 1), (1, 2)}), 2, 2)
    assert verify_discrete_witness(labeling, 1, good) == []
    other_column = DiscreteWitness(frozenset({(1,), (2,)}), frozenset({(2, 1), (2, 2)}), 2, 2)
    assert verify_discrete_witness(labeling, 1, other_column) == []
    missing = DiscreteWitness(frozenset({(1,)}), frozenset({(2, 1), (2, 2)}), 2, 2)
    assert verify_discrete_witness(labeling, 1, missing) == [
        "The value of cell (2, 1) is not in the value set."
    ]
    assert verify_discrete_witness(labeling, 0, good) == [
        "The bound should be 1, got 2.",
        "The value set has 2 points, more than 1.",
    ]


def test_verify_weakened_condition() -> None:
    labeling = CellLabeling.from_function(GridShape(2, 3), lambda cell: (2 * cell[0],), d=1)
    assert verify_weakened_condition(labeling, 1) == []
    assert len(verify_weakened_condition(labeling, 0)) == 3


def test_sample_indices() -> None:
    indices, resolution = sample_indices({(1, 1), (1, 2)}, GridShape(2, 2), refinement=1)
    assert resolution == 4
    samples = indices / resolution
    assert samples.shape == (15, 2)
    assert samples.min() == 0.0 and samples.max() == 1.0
    assert [0.25, 0.75] in samples.tolist()


def test_verify_continuous_witness() -> None:
    shape = GridShape(2, 4)
    column = frozenset((1, j) for j in range(1, 5))
    function = projection(2)
    assert verify_continuous_witness(
        function, ContinuousWitness((0.125,), column, 2, 0.2, shape, 8)
    ) == []
    assert verify_continuous_witness(
        function, ContinuousWitness((0.125,), column, 2, 0.15, shape, 8)
    ) == ["The certified distance bound 0.1875 is not smaller than epsilon=0.15."]
    assert verify_continuous_witness(
        function, ContinuousWitness((0.1, 0.2), column, 2, 0.2, shape, 8)
    ) == ["The point p should have dimension 1, got 2."]
    assert verify_continuous_witness(
        function, ContinuousWitness((0.125,), column, 1, 0.2, shape, 8)
    ) == ["The cells do not meet both faces orthogonal to axis 1."]
