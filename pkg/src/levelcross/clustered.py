"""Explicit m-distance clustered (n+1)-coloring of the lattice ``Z^n``.

The lattice is partitioned into translates

.. code-block:: text

    V_k^u = 𝒱 + A·u + k·(m, …, m),    𝒱 = [m] × [2m] × … × [n·m]

for ``u ∈ Z^n`` and ``0 ≤ k ≤ n``, where ``A`` is the upper triangular matrix
returned by :func:`matrix_a`. Coloring ``t`` with ``k + 1`` when ``t ∈ V_k^u``
gives ``n + 1`` colors whose monochromatic 1-connected components are exactly
the translates ``V_k^u``: each has ``n!·m^n`` points, and two distinct
translates with the same ``k`` are at l∞ distance at least ``m + 1``.

All remainders are taken in ``[0, divisor)`` whatever the sign of the dividend.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy
import numpy.typing as npt

from levelcross.exceptions import InvalidInput
from levelcross.lattice import LatticePoint, LatticeSet, is_one_connected
from levelcross.utils import exact_div, neighbour_offsets, nonnegative_mod, shifted_slices

IntArray = npt.NDArray[numpy.int64]


@dataclass(frozen=True)
class ColoringParams:
    """Lattice dimension ``n`` and distance parameter ``m`` of the coloring."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise InvalidInput(
                f"Invalid coloring parameters n={self.n}, m={self.m}, both should be at least 1."
            )

    @property
    def num_colors(self) -> int:
        return self.n + 1

    @property
    def cluster_size(self) -> int:
        return math.factorial(self.n) * self.m**self.n

    @property
    def box_sides(self) -> tuple[int, ...]:
        """Side lengths ``(m, 2m, …, n·m)`` of the box 𝒱."""
        return tuple(i * self.m for i in range(1, self.n + 1))


@dataclass(frozen=True)
class Decode:
    """The unique ``(v, u, k)`` such that ``t = v + A·u + k·(m, …, m)``."""

    v: LatticePoint
    u: LatticePoint
    k: int


@dataclass(frozen=True, order=True)
class ClusterId:
    """Identifies the cluster ``V_k^u``."""

    k: int
    u: LatticePoint


def matrix_a(params: ColoringParams) -> IntArray:
    """The ``n × n`` matrix with ``0`` below, ``(i+1)·m`` on and ``m`` above the diagonal."""
    n, m = params.n, params.m
    a = numpy.triu(numpy.full((n, n), m, dtype=numpy.int64), k=1)
    a[numpy.diag_indices(n)] = [(i + 1) * m for i in range(1, n + 1)]
    return a


def _check_dimension(t: LatticePoint | IntArray, params: ColoringParams) -> None:
    size = len(t) if isinstance(t, tuple) else t.shape[-1]
    if size != params.n:
        raise InvalidInput(
            f"Expected a point of dimension {params.n} but got dimension {size}."
        )


def decode(t: LatticePoint, params: ColoringParams) -> Decode:
    """Compute the decomposition ``t = v + A·u + k·(m, …, m)``.

    The recurrences only involve divisions that are proven to be exact. An
    inexact division therefore denotes a bug and fails an assertion.

    Args:
        t: a point of ``Z^n``.
        params: parameters of the coloring.

    Raises:
        InvalidInput: if ``t`` does not have dimension ``n``.

    Returns:
        the decomposition of ``t``, with ``v ∈ 𝒱`` and ``0 ≤ k ≤ n``.
    """
    _check_dimension(t, params)
    n, m = params.n, params.m
    v = [nonnegative_mod(t[0] - 1, m) + 1]
    for i in range(2, n + 1):
        im = i * m
        step = nonnegative_mod(t[i - 1] - t[i - 2], im)
        v.append(nonnegative_mod(step + v[i - 2] - 1, im) + 1)
    quotient = exact_div(t[n - 1] - v[n - 1], m)
    k = nonnegative_mod(quotient, n + 1)
    u = [0] * n
    u[n - 1] = exact_div(quotient - k, n + 1)
    for i in range(n, 1, -1):
        jump = t[i - 1] - t[i - 2] - (v[i - 1] - v[i - 2])
        u[i - 2] = u[i - 1] - exact_div(jump, i * m)
    return Decode(v=tuple(v), u=tuple(u), k=k)


def decode_array(
    points: IntArray, params: ColoringParams
) -> tuple[IntArray, IntArray, IntArray]:
    """Vectorized :func:`decode` over the rows of an ``(N, n)`` integer array.

    Returns:
        the arrays ``v`` of shape ``(N, n)``, ``u`` of shape ``(N, n)`` and ``k``
        of shape ``(N,)``.
    """
    t = numpy.asarray(points, dtype=numpy.int64)
    if t.ndim != 2:
        raise InvalidInput(f"Expected a 2-dimensional array of points, got shape {t.shape}.")
    _check_dimension(t, params)
    n, m = params.n, params.m
    v = numpy.empty_like(t)
    v[:, 0] = numpy.mod(t[:, 0] - 1, m) + 1
    for i in range(2, n + 1):
        im = i * m
        step = numpy.mod(t[:, i - 1] - t[:, i - 2], im)
        v[:, i - 1] = numpy.mod(step + v[:, i - 2] - 1, im) + 1
    remainder = t[:, n - 1] - v[:, n - 1]
    assert not numpy.any(numpy.mod(remainder, m)), "Inexact division by m."
    quotient = remainder // m
    k = numpy.mod(quotient, n + 1)
    u = numpy.empty_like(t)
    u[:, n - 1] = (quotient - k) // (n + 1)
    for i in range(n, 1, -1):
        jump = t[:, i - 1] - t[:, i - 2] - (v[:, i - 1] - v[:, i - 2])
        assert not numpy.any(numpy.mod(jump, i * m)), f"Inexact division by {i * m}."
        u[:, i - 2] = u[:, i - 1] - jump // (i * m)
    return v, u, k


def color(t: LatticePoint, params: ColoringParams) -> int:
    return decode(t, params).k + 1


def color_array(points: IntArray, params: ColoringParams) -> IntArray:
    """Colors in ``[n + 1]`` of the rows of an ``(N, n)`` integer array."""
    return decode_array(points, params)[2] + 1


def cluster_of(t: LatticePoint, params: ColoringParams) -> ClusterId:
    decoded = decode(t, params)
    return ClusterId(k=decoded.k, u=decoded.u)


def reconstruct(decoded: Decode, params: ColoringParams) -> LatticePoint:
    """Evaluate ``v + A·u + k·(m, …, m)``."""
    offset = _cluster_offset(ClusterId(decoded.k, decoded.u), params)
    return tuple(int(x) for x in numpy.asarray(decoded.v, dtype=numpy.int64) + offset)


def box_points(params: ColoringParams) -> IntArray:
    """All points of the box 𝒱 as an ``(n!·m^n, n)`` array, in lexicographic order."""
    ranges = [range(1, side + 1) for side in params.box_sides]
    return numpy.array(list(itertools.product(*ranges)), dtype=numpy.int64)


def _cluster_offset(cluster: ClusterId, params: ColoringParams) -> IntArray:
    u = numpy.asarray(cluster.u, dtype=numpy.int64)
    return matrix_a(params) @ u + cluster.k * params.m


def enumerate_cluster(cluster: ClusterId, params: ColoringParams) -> LatticeSet:
    """All the points of ``V_k^u``.

    Raises:
        InvalidInput: if ``k`` is not in ``[0, n]`` or ``u`` has the wrong dimension.
    """
    if not 0 <= cluster.k <= params.n:
        raise InvalidInput(f"Invalid cluster index k={cluster.k}, expected 0 <= k <= {params.n}.")
    _check_dimension(cluster.u, params)
    points = box_points(params) + _cluster_offset(cluster, params)
    return frozenset(tuple(int(x) for x in row) for row in points)


def _box_grid(params: ColoringParams, radius: int) -> IntArray:
    axis = numpy.arange(-radius, radius + 1, dtype=numpy.int64)
    grids = numpy.meshgrid(*([axis] * params.n), indexing="ij")
    return numpy.stack([g.ravel() for g in grids], axis=1)


def check_partition(
    params: ColoringParams, radius: int, max_failures: int = 10
) -> list[str]:
    """Check that the clusters partition ``[-radius, radius]^n``.

    Every point must decode into ``𝒱 × Z^n × [0, n]`` and be reconstructed
    exactly, and every point of every cluster touched by the box must decode
    back to that same cluster, so no point belongs to two clusters.

    Returns:
        descriptions of at most ``max_failures`` failures, empty on success.
    """
    failures: list[str] = []
    t = _box_grid(params, radius)
    v, u, k = decode_array(t, params)
    sides = numpy.asarray(params.box_sides, dtype=numpy.int64)
    outside = numpy.any((v < 1) | (v > sides), axis=1) | (k < 0) | (k > params.n)
    rebuilt = v + u @ matrix_a(params).T + (k * params.m)[:, None]
    broken = outside | numpy.any(rebuilt != t, axis=1)
    for row in numpy.flatnonzero(broken)[:max_failures]:
        failures.append(f"point {tuple(int(x) for x in t[row])} decodes inconsistently")

    ids = numpy.unique(numpy.concatenate([k[:, None], u], axis=1), axis=0)
    box = box_points(params)
    offsets = ids[:, 1:] @ matrix_a(params).T + (ids[:, 0] * params.m)[:, None]
    members = (offsets[:, None, :] + box[None, :, :]).reshape(-1, params.n)
    owner = numpy.repeat(ids, len(box), axis=0)
    _, member_u, member_k = decode_array(members, params)
    wrong = (member_k != owner[:, 0]) | numpy.any(member_u != owner[:, 1:], axis=1)
    for row in numpy.flatnonzero(wrong)[: max_failures - len(failures)]:
        failures.append(
            f"point {tuple(int(x) for x in members[row])} of cluster "
            f"k={int(owner[row, 0])}, u={tuple(int(x) for x in owner[row, 1:])} "
            "decodes into another cluster"
        )
    return failures


def check_cluster_shapes(
    params: ColoringParams, radius: int, max_failures: int = 10
) -> list[str]:
    """Check every cluster touching ``[-radius, radius]^n``.

    Each must have exactly ``n!·m^n`` points and be 1-connected.

    Returns:
        descriptions of at most ``max_failures`` failures, empty on success.
    """
    _, u, k = decode_array(_box_grid(params, radius), params)
    ids = numpy.unique(numpy.concatenate([k[:, None], u], axis=1), axis=0)
    expected = cluster_size(params)
    failures: list[str] = []
    for row in ids:
        cluster = ClusterId(int(row[0]), tuple(int(x) for x in row[1:]))
        points = enumerate_cluster(cluster, params)
        if len(points) != expected:
            failures.append(f"cluster {cluster} has {len(points)} points instead of {expected}")
        elif not is_one_connected(points):
            failures.append(f"cluster {cluster} is not 1-connected")
        if len(failures) >= max_failures:
            break
    return failures


def check_separation(
    params: ColoringParams, radius: int, max_failures: int = 10
) -> list[str]:
    """Check that same-color clusters touching ``[-radius, radius]^n`` are ``> m`` apart.

    Equivalently, any two points of the same color at l∞ distance at most ``m``
    belong to the same cluster. The box is padded so that closest pairs of
    clusters reaching outside of it are covered too.
    """
    n, m = params.n, params.m
    padded = radius + n * m + m
    side = 2 * padded + 1
    t = _box_grid(params, padded)
    _, u, k = decode_array(t, params)
    k_grid = k.reshape((side,) * n)
    u_grid = u.reshape((side,) * n + (n,))
    failures: list[str] = []
    for offset in neighbour_offsets(n, m):
        if next(c for c in offset if c != 0) < 0:
            continue
        source, target = shifted_slices(k_grid.shape, offset)
        same_color = k_grid[source] == k_grid[target]
        other_cluster = numpy.any(u_grid[source] != u_grid[target], axis=-1)
        bad = numpy.argwhere(same_color & other_cluster)
        for index in bad[: max_failures - len(failures)]:
            point = tuple(int(i) + s.start - padded for i, s in zip(index, source))
            failures.append(
                f"points {point} and {tuple(p + o for p, o in zip(point, offset))} have the "
                "same color but lie in different clusters"
            )
        if len(failures) >= max_failures:
            break
    return failures


def colors_in_box(params: ColoringParams, corner: LatticePoint, side: int) -> set[int]:
    """Set of colors met in the box ``corner + [0, side)^n``."""
    _check_dimension(corner, params)
    axis = numpy.arange(side, dtype=numpy.int64)
    grids = numpy.meshgrid(*([axis] * params.n), indexing="ij")
    points = numpy.stack([g.ravel() for g in grids], axis=1) + numpy.asarray(corner)
    return {int(c) for c in numpy.unique(color_array(points, params))}


def render_slice(
    params: ColoringParams, box: list[tuple[int, int]]
) -> tuple[str, list[list[int]]]:
    """Colors of a 2-D slice of the coloring.

    Args:
        params: parameters of the coloring.
        box: inclusive ``(low, high)`` ranges, one per axis. For ``n >= 3`` only
            the first two ranges are scanned, the other axes are fixed at their
            low end.

    Returns:
        a character grid (one digit per point, the second axis growing upwards)
        and the same colors as nested lists indexed ``[x][y]``.
    """
    if len(box) != params.n:
        raise InvalidInput(f"Expected {params.n} ranges in the box, got {len(box)}.")
    if any(low > high for low, high in box):
        raise InvalidInput(f"Invalid box {box}, each range should satisfy low <= high.")
    xs = range(box[0][0], box[0][1] + 1)
    ys = range(box[1][0], box[1][1] + 1) if params.n >= 2 else range(1)
    fixed = tuple(low for low, _ in box[2:])
    grid: list[list[int]] = []
    for x in xs:
        column = []
        for y in ys:
            point = (x,) if params.n == 1 else (x, y) + fixed
            column.append(color(point, params))
        grid.append(column)
    lines = [
        "".join(_color_char(grid[ix][iy]) for ix in range(len(xs)))
        for iy in reversed(range(len(ys)))
    ]
    return "\n".join(lines), grid


def _color_char(c: int) -> str:
    return str(c) if c < 10 else chr(ord("a") + c - 10)


def cluster_size(params: ColoringParams) -> int:
    """Number ``n!·m^n`` of points of every cluster."""
    return params.cluster_size
