"""Seeded random labelings of ``K_k^n`` satisfying the discrete hypothesis.

Two families are provided:

- :func:`random_polynomial_labeling` discretizes a random polynomial map
  ``I^n → R^{n-1}``. The scale is chosen so that values at the centers of
  intersecting cells differ by less than 1, so the labeling satisfies the
  hypothesis for every ``m``.
- :func:`random_walk_labeling` assigns values cell by cell in row-major order,
  drawing each value uniformly among the points within l∞ distance 1 of the
  already assigned cells that share a face of dimension at least ``m``.
"""

from __future__ import annotations

import itertools
import math

import numpy
import numpy.typing as npt

from levelcross.exceptions import InvalidInput, LevelCrossException
from levelcross.grid import CellLabeling, GridShape
from levelcross.utils import neighbour_offsets


def _random_monomials(
    n: int, degree: int, rng: numpy.random.Generator
) -> list[tuple[float, tuple[int, ...]]]:
    exponents = [
        e for e in itertools.product(range(degree + 1), repeat=n) if 0 < sum(e) <= degree
    ]
    coefficients = rng.uniform(-1.0, 1.0, size=len(exponents))
    return [(float(c), e) for c, e in zip(coefficients, exponents)]


def random_polynomial_labeling(
    shape: GridShape, rng: numpy.random.Generator, degree: int = 2
) -> CellLabeling:
    """Labeling ``F(K) = floor(s·g(center(K)))`` for a random polynomial ``g``.

    Each coordinate of ``g`` has random coefficients in ``[-1, 1]`` and
    ``s < k / L`` where ``L`` bounds the l∞ Lipschitz constant of ``g`` on
    ``I^n``, so centers of intersecting cells, at l∞ distance at most ``1/k``,
    have values differing by less than 1.
    """
    if degree < 1:
        raise InvalidInput(f"Invalid polynomial degree {degree}, should be at least 1.")
    n, k = shape.n, shape.k
    axes = [(numpy.arange(k) + 0.5) / k] * n
    centers = numpy.stack([g.ravel() for g in numpy.meshgrid(*axes, indexing="ij")], axis=1)
    outputs = numpy.zeros((len(centers), n - 1))
    lipschitz = 0.0
    for j in range(n - 1):
        monomials = _random_monomials(n, degree, rng)
        lipschitz = max(lipschitz, sum(abs(c) * sum(e) for c, e in monomials))
        for coefficient, exponent in monomials:
            outputs[:, j] += coefficient * numpy.prod(centers**exponent, axis=1)
    scale = rng.uniform(0.5, 0.95) * k / lipschitz if lipschitz > 0 else float(k)
    values = numpy.floor(outputs * scale).astype(numpy.int64)
    return CellLabeling(shape, values.reshape(shape.dense_shape + (n - 1,)))


def random_walk_labeling(
    shape: GridShape, m: int, rng: numpy.random.Generator, max_restarts: int = 100
) -> CellLabeling:
    """Random labeling satisfying the hypothesis at parameter ``m``.

    Raises:
        InvalidInput: if ``m`` is not in ``[0, n - 1]``.
        LevelCrossException: if no labeling could be completed within
            ``max_restarts`` attempts.
    """
    n = shape.n
    if not 0 <= m <= n - 1:
        raise InvalidInput(f"Invalid parameter m={m}, expected 0 <= m <= {n - 1}.")
    predecessors = [
        offset
        for offset in neighbour_offsets(n)
        if next(c for c in offset if c != 0) < 0 and offset.count(0) >= m
    ]
    for _ in range(max_restarts):
        values = numpy.zeros(shape.dense_shape + (n - 1,), dtype=numpy.int64)
        if _fill(values, shape, predecessors, rng):
            return CellLabeling(shape, values)
    raise LevelCrossException(
        f"Could not build a random labeling of the grid {shape.k}^{n} at m={m} "
        f"in {max_restarts} attempts."
    )


def _fill(
    values: npt.NDArray[numpy.int64],
    shape: GridShape,
    predecessors: list[tuple[int, ...]],
    rng: numpy.random.Generator,
) -> bool:
    d = values.shape[-1]
    for cell in shape.cells():
        index = tuple(i - 1 for i in cell)
        low = numpy.full(d, -math.inf)
        high = numpy.full(d, math.inf)
        for offset in predecessors:
            neighbour = tuple(i + o for i, o in zip(cell, offset))
            if not shape.contains(neighbour):
                continue
            value = values[tuple(i - 1 for i in neighbour)]
            low = numpy.maximum(low, value - 1)
            high = numpy.minimum(high, value + 1)
        if numpy.any(low > high):
            return False
        if numpy.isinf(low).any():
            values[index] = 0
        else:
            values[index] = rng.integers(low.astype(numpy.int64), high.astype(numpy.int64) + 1)
    return True
