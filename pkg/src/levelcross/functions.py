"""Lipschitz maps ``I^n → R^{n-1}`` fed to the continuous solver.

A :class:`ContinuousFn` bundles a vectorized evaluation with two declared
constants: ``lipschitz``, bounding ``‖f(x) - f(y)‖∞ / ‖x - y‖∞``, and ``bound``,
with every output in ``[-bound, bound]^{n-1}``. The solver relies on both, and
:func:`spot_check` warns when sampling contradicts them.
"""

from __future__ import annotations

import itertools
import json
import math
import pathlib
import typing as ty
import warnings
from dataclasses import dataclass, field

import numpy
import numpy.typing as npt
from scipy import ndimage, spatial

from levelcross.exceptions import (
    InvalidInput,
    LevelCrossWarning,
    SchemaError,
    UnsupportedDimension,
)
from levelcross.grid import CellLabeling

FloatArray = npt.NDArray[numpy.float64]
Evaluator = ty.Callable[[FloatArray], FloatArray]


class GridEvaluator(ty.Protocol):
    """Exact evaluation of a function on regular grids of ``I^n``.

    Resolutions must be multiples of ``multiple``. Values are returned as
    ``(N, n - 1)`` arrays in row-major order.
    """

    multiple: int

    def centers(self, resolution: int) -> FloatArray: ...

    def vertices(self, resolution: int) -> FloatArray: ...


def grid_centers(n: int, resolution: int) -> FloatArray:
    """Centers of the cells of ``K_resolution^n`` in row-major order."""
    axis = (numpy.arange(resolution) + 0.5) / resolution
    return _cartesian(n, axis)


def _cartesian(n: int, axis: FloatArray) -> FloatArray:
    grids = numpy.meshgrid(*([axis] * n), indexing="ij")
    return numpy.stack([g.ravel() for g in grids], axis=1) if n else numpy.zeros((1, 0))


@dataclass(frozen=True)
class ContinuousFn:
    """A map ``I^n → R^{n-1}`` with declared Lipschitz constant and bound.

    ``evaluate`` receives an ``(N, n)`` array of points and returns the ``(N, n-1)``
    array of their images. It must not hold mutable state.
    """

    n: int
    evaluate: Evaluator
    lipschitz: float
    bound: float
    name: str = "function"
    grid: GridEvaluator | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInput(f"Invalid dimension n={self.n}, should be at least 1.")
        if not self.lipschitz > 0:
            raise InvalidInput(
                f"Invalid Lipschitz constant {self.lipschitz}, should be positive."
            )
        if not self.bound > 0:
            raise InvalidInput(f"Invalid bound {self.bound}, should be positive.")

    def __call__(self, points: npt.ArrayLike) -> FloatArray:
        array = numpy.asarray(points, dtype=numpy.float64)
        if array.ndim != 2 or array.shape[1] != self.n:
            raise InvalidInput(f"Expected points of shape (N, {self.n}), got {array.shape}.")
        values = numpy.asarray(self.evaluate(array), dtype=numpy.float64)
        return values.reshape(len(array), self.n - 1)

    def _has_grid(self, resolution: int) -> bool:
        return self.grid is not None and resolution % self.grid.multiple == 0

    def at_centers(self, resolution: int) -> FloatArray:
        """Values at the centers of the cells of ``K_resolution^n``, row-major."""
        if self.grid is not None and self._has_grid(resolution):
            return self.grid.centers(resolution)
        return self(grid_centers(self.n, resolution))

    def at_vertices(self, indices: npt.NDArray[numpy.int64], resolution: int) -> FloatArray:
        """Values at the points ``indices / resolution``."""
        if self.grid is not None and self._has_grid(resolution):
            full = self.grid.vertices(resolution)
            flat = numpy.ravel_multi_index(tuple(indices.T), (resolution + 1,) * self.n)
            return full[flat]
        return self(indices / resolution)


def spot_check(
    function: ContinuousFn, rng: numpy.random.Generator, samples: int = 256
) -> list[str]:
    """Compare the declared constants of ``function`` against random samples.

    Every contradiction is also emitted as a :class:`LevelCrossWarning`.

    Returns:
        descriptions of the contradictions found.
    """
    if function.n == 1:
        return []
    first = rng.random((samples, function.n))
    second = numpy.clip(first + rng.uniform(-0.05, 0.05, first.shape), 0.0, 1.0)
    values_first, values_second = function(first), function(second)
    issues: list[str] = []
    tolerance = 1e-9
    largest = float(numpy.abs(values_first).max())
    if largest > function.bound * (1 + tolerance):
        issues.append(
            f"The function {function.name} reaches {largest}, above its declared bound "
            f"{function.bound}."
        )
    steps = numpy.abs(first - second).max(axis=1)
    jumps = numpy.abs(values_first - values_second).max(axis=1)
    moved = steps > 0
    if moved.any():
        ratio = float((jumps[moved] / steps[moved]).max())
        if ratio > function.lipschitz * (1 + tolerance):
            issues.append(
                f"The function {function.name} has a local slope {ratio}, above its declared "
                f"Lipschitz constant {function.lipschitz}."
            )
    for issue in issues:
        warnings.warn(issue, LevelCrossWarning)
    return issues


def projection(n: int) -> ContinuousFn:
    """``f(x) = (x_1, …, x_{n-1})``."""
    return ContinuousFn(n, lambda x: x[:, : n - 1], lipschitz=1.0, bound=1.0, name="projection")


def linear(n: int) -> ContinuousFn:
    """``f(x)_i = x_i - x_{i+1}``, that is ``x_1 - x_2`` for ``n = 2``."""
    return ContinuousFn(
        n, lambda x: x[:, :-1] - x[:, 1:], lipschitz=2.0, bound=1.0, name="linear"
    )


def quadratic(n: int = 2) -> ContinuousFn:
    """``f(x) = x_1² + x_2² - x_1·x_2`` on ``I^2``.

    Its values lie in ``[0, 1]`` and ``|∂_1 f| + |∂_2 f| <= 3`` on ``I^2``.
    """
    if n != 2:
        raise UnsupportedDimension(f"The quadratic function is only defined for n=2, got {n}.")

    def evaluate(x: FloatArray) -> FloatArray:
        value = x[:, 0] ** 2 + x[:, 1] ** 2 - x[:, 0] * x[:, 1]
        return value[:, numpy.newaxis]

    return ContinuousFn(2, evaluate, lipschitz=3.0, bound=1.0, name="quadratic")


def sine_curve_points(samples: int = 200_000) -> FloatArray:
    """Dense sampling of the closed set ``G ⊂ I^2`` built around a topologist's sine curve.

    ``G`` is the union of the graph of ``g`` and of the vertical segment
    ``{1/4} × [1/4, 3/4]``, where ``g(x) = 1 - 2x`` on ``[0, 1/4)``,
    ``g(x) = sin(1 / (x - 1/4)) / 4 + 1/2`` on ``(1/4, 1/2]`` and ``g`` is affine
    on ``[1/2, 1]``, joining ``(1/2, g(1/2))`` to ``(1, 0)``.
    """
    sin4 = math.sin(4.0)
    left_x = numpy.linspace(0.0, 0.25, samples // 8, endpoint=False)
    left = numpy.stack([left_x, 1.0 - 2.0 * left_x], axis=1)
    # Uniform in 1 / (x - 1/4) so that every oscillation is sampled.
    inverse = numpy.linspace(4.0, 4.0 + samples * 0.01, samples // 2)
    middle_x = 0.25 + 1.0 / inverse
    middle = numpy.stack([middle_x, 0.25 * numpy.sin(inverse) + 0.5], axis=1)
    right_x = numpy.linspace(0.5, 1.0, samples // 8)
    slope = 0.5 * sin4 + 1.0
    right = numpy.stack([right_x, -slope * right_x + slope], axis=1)
    segment_y = numpy.linspace(0.25, 0.75, samples // 8)
    segment = numpy.stack([numpy.full_like(segment_y, 0.25), segment_y], axis=1)
    return numpy.concatenate([left, middle, right, segment])


def sine_curve(n: int = 2, samples: int = 200_000) -> ContinuousFn:
    """Euclidean distances of consecutive coordinate pairs to :func:`sine_curve_points`.

    ``f_j(x) = dist((x_j, x_{j+1}), G)`` for ``j < n``, so the zero set of
    ``f_j`` is the preimage of ``G`` under the projection on the coordinates
    ``j`` and ``j + 1``. The distance to a set is 1-Lipschitz for the Euclidean
    norm, hence each coordinate is ``sqrt(2)``-Lipschitz from l∞ to absolute value.
    """
    if n < 2:
        raise UnsupportedDimension(f"The sine-curve function needs n >= 2, got {n}.")
    tree = spatial.cKDTree(sine_curve_points(samples))

    def evaluate(x: FloatArray) -> FloatArray:
        out = numpy.empty((len(x), n - 1))
        for j in range(n - 1):
            distances, _ = tree.query(x[:, j : j + 2])
            out[:, j] = distances
        return out

    return ContinuousFn(n, evaluate, lipschitz=math.sqrt(2.0), bound=1.5, name="sine-curve")


@dataclass(frozen=True)
class Monomial:
    coefficient: float
    exponents: tuple[int, ...]


def _parse_monomial(raw: ty.Any, n: int, position: str) -> Monomial:
    if not isinstance(raw, dict) or "coefficient" not in raw or "exponents" not in raw:
        raise SchemaError("Expected an object with 'coefficient' and 'exponents'.", position)
    coefficient, exponents = raw["coefficient"], raw["exponents"]
    if not isinstance(coefficient, (int, float)) or isinstance(coefficient, bool):
        raise SchemaError("The coefficient should be a number.", position)
    if (
        not isinstance(exponents, list)
        or len(exponents) != n
        or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exponents)
    ):
        raise SchemaError(f"Expected {n} non-negative integer exponents.", position)
    return Monomial(float(coefficient), tuple(exponents))


def polynomial(document: ty.Mapping[str, ty.Any]) -> ContinuousFn:
    """Polynomial map described by a JSON-like document.

    The document has the shape ``{"n": 2, "components": [[{"coefficient": 1.0,
    "exponents": [1, 0]}, …], …]}`` with ``n - 1`` components, each a list of
    monomials. On ``I^n``, ``|c·x^a| <= |c|`` and ``|∂_s c·x^a| <= |c|·a_s``, so
    the maximum over components of ``Σ|c|`` and ``Σ|c|·Σa`` give the bound and the
    Lipschitz constant.

    Raises:
        SchemaError: if the document is malformed.
    """
    n = document.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("Expected a positive integer 'n'.", "n")
    components = document.get("components")
    if not isinstance(components, list) or len(components) != n - 1:
        raise SchemaError(f"Expected a list of {n - 1} components.", "components")
    parsed: list[list[Monomial]] = []
    for j, component in enumerate(components):
        if not isinstance(component, list):
            raise SchemaError("Expected a list of monomials.", f"components[{j}]")
        parsed.append(
            [_parse_monomial(raw, n, f"components[{j}][{t}]") for t, raw in enumerate(component)]
        )
    lipschitz = max(
        (sum(abs(t.coefficient) * sum(t.exponents) for t in c) for c in parsed), default=0.0
    )
    bound = max((sum(abs(t.coefficient) for t in c) for c in parsed), default=0.0)

    def evaluate(x: FloatArray) -> FloatArray:
        out = numpy.zeros((len(x), n - 1))
        for j, component in enumerate(parsed):
            for term in component:
                out[:, j] += term.coefficient * numpy.prod(x**term.exponents, axis=1)
        return out

    return ContinuousFn(
        n,
        evaluate,
        lipschitz=lipschitz if lipschitz > 0 else 1.0,
        bound=bound if bound > 0 else 1.0,
        name="polynomial",
    )


def polynomial_from_file(path: str | pathlib.Path) -> ContinuousFn:
    try:
        document = json.loads(pathlib.Path(path).read_text())
    except json.JSONDecodeError as error:
        raise SchemaError(f"Invalid JSON: {error.msg}.", f"line {error.lineno}") from error
    if not isinstance(document, dict):
        raise SchemaError("Expected a JSON object.", "document")
    return polynomial(document)


BUILTINS: dict[str, ty.Callable[[int], ContinuousFn]] = {
    "projection": projection,
    "linear": linear,
    "quadratic": quadratic,
    "sine-curve": sine_curve,
}


def builtin(name: str, n: int = 2) -> ContinuousFn:
    if name not in BUILTINS:
        raise InvalidInput(
            f"Unknown function {name!r}, expected one of {', '.join(sorted(BUILTINS))}."
        )
    return BUILTINS[name](n)


class DistanceFieldGrid:
    """Exact values of the shifted distance fields of a coloring on aligned grids.

    On a grid refining the coloring's grid, each color class is a union of
    fine cells and the chessboard distance transform of its mask gives the
    exact l∞ distance: ``(d - 1/2)·h`` from the center of a fine cell at
    chessboard distance ``d >= 1``, ``d·h`` from a vertex at chessboard
    distance ``d`` from the closure of the class.
    """

    def __init__(self, colors: npt.NDArray[numpy.int64], num_classes: int) -> None:
        self._colors = colors
        self._num_classes = num_classes
        self.multiple = int(colors.shape[0])

    def _fine_masks(self, resolution: int) -> list[npt.NDArray[numpy.bool_] | None]:
        factor = resolution // self.multiple
        fine = self._colors
        for axis in range(fine.ndim):
            fine = numpy.repeat(fine, factor, axis=axis)
        return [
            (fine == j) if numpy.any(self._colors == j) else None
            for j in range(1, self._num_classes + 1)
        ]

    def centers(self, resolution: int) -> FloatArray:
        columns = []
        for mask in self._fine_masks(resolution):
            if mask is None:
                columns.append(numpy.ones(resolution**self._colors.ndim))
                continue
            steps = ndimage.distance_transform_cdt(~mask, metric="chessboard")
            columns.append(numpy.maximum(steps - 0.5, 0.0).ravel() / resolution)
        return _stack_columns(columns, resolution**self._colors.ndim)

    def vertices(self, resolution: int) -> FloatArray:
        n = self._colors.ndim
        size = (resolution + 1) ** n
        columns = []
        for mask in self._fine_masks(resolution):
            if mask is None:
                columns.append(numpy.ones(size))
                continue
            closure = numpy.zeros((resolution + 1,) * n, dtype=bool)
            for corner in itertools.product((0, 1), repeat=n):
                closure[tuple(slice(o, o + resolution) for o in corner)] |= mask
            steps = ndimage.distance_transform_cdt(~closure, metric="chessboard")
            columns.append(steps.ravel() / resolution)
        return _stack_columns(columns, size)


def _stack_columns(columns: list[FloatArray], size: int) -> FloatArray:
    if not columns:
        return numpy.zeros((size, 0))
    return numpy.stack(columns, axis=1) - 0.5


def _box_distances(points: FloatArray, lows: FloatArray, width: float) -> FloatArray:
    """l∞ distance from each point to the union of the boxes ``low + [0, width]^n``."""
    best = numpy.full(len(points), numpy.inf)
    for start in range(0, len(lows), 64):
        chunk = lows[start : start + 64]
        gaps = numpy.maximum(chunk[None, :, :] - points[:, None, :], 0.0)
        gaps = numpy.maximum(gaps, points[:, None, :] - (chunk[None, :, :] + width))
        best = numpy.minimum(best, gaps.max(axis=2).min(axis=1))
    return best


def distance_field_function(coloring: CellLabeling) -> ContinuousFn:
    """Map whose coordinates vanish exactly on the color classes ``1`` to ``n - 1``.

    ``f_j(x) = dist∞(x, ∪ F^{-1}[{j}]) - 1/2``, with the distance taken to be 1
    when the class is empty. Each coordinate is 1-Lipschitz for the l∞ norm and
    takes values in ``[-1/2, 1/2]``.
    """
    shape = coloring.shape
    n, k = shape.n, shape.k
    colors = coloring.values[..., 0]
    lows = [
        numpy.argwhere(colors == j).astype(numpy.float64) / k for j in range(1, n)
    ]

    def evaluate(x: FloatArray) -> FloatArray:
        out = numpy.empty((len(x), n - 1))
        for j, low in enumerate(lows):
            out[:, j] = _box_distances(x, low, 1.0 / k) if len(low) else 1.0
        return out - 0.5

    return ContinuousFn(
        n,
        evaluate,
        lipschitz=1.0,
        bound=0.5,
        name="distance-field",
        grid=DistanceFieldGrid(colors, n - 1),
    )
