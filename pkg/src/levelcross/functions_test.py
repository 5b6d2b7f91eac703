import json
import math
import pathlib

import numpy
import pytest

from levelcross.exceptions import (
    InvalidInput,
    LevelCrossWarning,
    SchemaError,
    UnsupportedDimension,
)
from levelcross.functions import (
    ContinuousFn,
    builtin,
    distance_field_function,
    grid_centers,
    linear,
    polynomial,
    polynomial_from_file,
    projection,
    quadratic,
    sine_curve,
    spot_check,
)
from levelcross.grid import CellLabeling, GridShape


def _diagonal_coloring() -> CellLabeling:
    return CellLabeling.from_colors(GridShape(2, 2), numpy.array([[1, 2], [2, 1]]))


def test_grid_centers_row_major() -> None:
    numpy.testing.assert_allclose(
        grid_centers(2, 2), [[0.25, 0.25], [0.25, 0.75], [0.75, 0.25], [0.75, 0.75]]
    )


def test_invalid_constants() -> None:
    with pytest.raises(InvalidInput, match=r"^Invalid dimension"):
        ContinuousFn(0, lambda x: x, lipschitz=1.0, bound=1.0)
    with pytest.raises(InvalidInput, match=r"^Invalid Lipschitz constant"):
        ContinuousFn(2, lambda x: x[:, :1], lipschitz=0.0, bound=1.0)
    with pytest.raises(InvalidInput, match=r"^Invalid bound"):
        ContinuousFn(2, lambda x: x[:, :1], lipschitz=1.0, bound=-1.0)


def test_call_checks_point_shape() -> None:
    with pytest.raises(InvalidInput, match=r"^Expected points of shape"):
        projection(3)(numpy.zeros((4, 2)))


def test_builtins_values() -> None:
    points = numpy.array([[0.2, 0.7], [1.0, 0.0]])
    numpy.testing.assert_allclose(projection(2)(points), [[0.2], [1.0]])
    numpy.testing.assert_allclose(linear(2)(points), [[-0.5], [1.0]])
    numpy.testing.assert_allclose(quadratic()(points), [[0.39], [1.0]])
    numpy.testing.assert_allclose(
        linear(3)(numpy.array([[0.1, 0.4, 0.2]])), [[-0.3, 0.2]]
    )


def test_builtin_registry() -> None:
    assert builtin("projection", 3).n == 3
    with pytest.raises(InvalidInput, match=r"^Unknown function 'cubic'"):
        builtin("cubic")
    with pytest.raises(UnsupportedDimension):
        quadratic(3)
    with pytest.raises(UnsupportedDimension):
        sine_curve(1)


def test_sine_curve_vanishes_on_the_curve() -> None:
    function = sine_curve(samples=4000)
    values = function(numpy.array([[0.0, 1.0], [0.1, 0.8], [0.25, 0.5], [1.0, 0.0]]))
    numpy.testing.assert_allclose(values, 0.0, atol=1e-3)
    assert function(numpy.array([[1.0, 1.0]]))[0, 0] > 0.3
    assert function.lipschitz == pytest.approx(math.sqrt(2.0))


def test_sine_curve_uses_consecutive_coordinate_pairs() -> None:
    planar = sine_curve(samples=4000)
    function = sine_curve(3, samples=4000)
    assert function.n == 3
    points = numpy.random.default_rng(6).uniform(size=(50, 3))
    values = function(points)
    assert values.shape == (50, 2)
    numpy.testing.assert_allclose(values[:, 0], planar(points[:, :2])[:, 0])
    numpy.testing.assert_allclose(values[:, 1], planar(points[:, 1:])[:, 0])
    assert function(numpy.array([[0.0, 1.0, 1.0]]))[0, 0] == pytest.approx(0.0, abs=1e-3)
    assert spot_check(function, numpy.random.default_rng(7)) == []


def test_builtins_respect_declared_constants() -> None:
    rng = numpy.random.default_rng(3)
    for function in (projection(3), linear(2), linear(4), quadratic()):
        assert spot_check(function, rng) == []


def test_spot_check_reports_wrong_constants() -> None:
    function = ContinuousFn(2, lambda x: 10 * x[:, :1], lipschitz=1.0, bound=1.0, name="steep")
    with pytest.warns(LevelCrossWarning):
        issues = spot_check(function, numpy.random.default_rng(0))
    assert len(issues) == 2
    assert "declared bound" in issues[0]
    assert "Lipschitz" in issues[1]


def test_polynomial() -> None:
    function = polynomial(
        {
            "n": 2,
            "components": [
                [
                    {"coefficient": 2.0, "exponents": [1, 1]},
                    {"coefficient": -1.0, "exponents": [0, 0]},
                ]
            ],
        }
    )
    assert function.bound == 3.0
    assert function.lipschitz == 4.0
    numpy.testing.assert_allclose(function(numpy.array([[0.5, 0.5], [1.0, 1.0]])), [[-0.5], [1.0]])


@pytest.mark.parametrize(
    "document,position",
    [
        ({"components": []}, "n"),
        ({"n": 2, "components": []}, "components"),
        ({"n": 2, "components": [{}]}, "components[0]"),
        ({"n": 2, "components": [[{"coefficient": 1.0}]]}, "components[0][0]"),
        (
            {"n": 2, "components": [[{"coefficient": "1", "exponents": [1, 0]}]]},
            "components[0][0]",
        ),
        ({"n": 2, "components": [[{"coefficient": 1, "exponents": [1]}]]}, "components[0][0]"),
        ({"n": 2, "components": [[{"coefficient": 1, "exponents": [-1, 0]}]]}, "components[0][0]"),
    ],
)
def test_polynomial_schema_errors(document: dict[str, object], position: str) -> None:
    with pytest.raises(SchemaError) as info:
        polynomial(document)
    assert info.value.position == position


def test_polynomial_from_file(tmp_path: pathlib.Path) -> None:
    path = tmp_path / "poly.json"
    path.write_text(
        json.dumps({"n": 2, "components": [[{"coefficient": 1.0, "exponents": [0, 2]}]]})
    )
    function = polynomial_from_file(path)
    numpy.testing.assert_allclose(function(numpy.array([[0.3, 0.5]])), [[0.25]])
    path.write_text("{")
    with pytest.raises(SchemaError, match="Invalid JSON"):
        polynomial_from_file(path)
    path.write_text("[]")
    with pytest.raises(SchemaError, match="Expected a JSON object"):
        polynomial_from_file(path)


def test_distance_field_values() -> None:
    function = distance_field_function(_diagonal_coloring())
    assert function.n == 2
    assert function.bound == 0.5
    numpy.testing.assert_allclose(
        function(numpy.array([[0.25, 0.25], [0.0, 1.0], [0.5, 0.5], [0.1, 0.9]])),
        [[-0.5], [0.0], [-0.5], [-0.1]],
    )


@pytest.mark.parametrize("resolution", [2, 4, 6])
def test_distance_field_grid_matches_evaluation(resolution: int) -> None:
    function = distance_field_function(_diagonal_coloring())
    assert function.grid is not None
    numpy.testing.assert_allclose(
        function.at_centers(resolution), function(grid_centers(2, resolution)), atol=1e-12
    )
    indices = numpy.array(
        [[i, j] for i in range(resolution + 1) for j in range(resolution + 1)], dtype=numpy.int64
    )
    numpy.testing.assert_allclose(
        function.at_vertices(indices, resolution), function(indices / resolution), atol=1e-12
    )


def test_distance_field_grid_three_dimensional() -> None:
    rng = numpy.random.default_rng(5)
    colors = rng.integers(1, 4, size=(3, 3, 3))
    function = distance_field_function(CellLabeling.from_colors(GridShape(3, 3), colors))
    numpy.testing.assert_allclose(function.at_centers(6), function(grid_centers(3, 6)), atol=1e-12)
