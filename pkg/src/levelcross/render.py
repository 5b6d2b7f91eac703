"""Static pictures of labelings and witnesses.

Two-dimensional labelings are drawn as SVG, the first axis growing to the
right and the second upwards. Three-dimensional labelings are drawn as one
binary PPM image per layer along the third axis.
"""

from __future__ import annotations

import typing as ty
import zlib

import numpy
import numpy.typing as npt

from levelcross.exceptions import UnsupportedDimension
from levelcross.grid import CellIndex, CellLabeling
from levelcross.lattice import LatticePoint

PALETTE: tuple[str, ...] = (
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
)


class CellWitness(ty.Protocol):
    @property
    def cells(self) -> frozenset[CellIndex]: ...

    @property
    def axis(self) -> int: ...


def value_color(value: LatticePoint) -> str:
    """Palette entry of a value, stable across runs."""
    return PALETTE[zlib.crc32(repr(tuple(value)).encode()) % len(PALETTE)]


def _rgb(color: str) -> tuple[int, int, int]:
    return int(color[1:3], 16), int(color[3:5], 16), int(color[5:7], 16)


def render_grid_svg(
    labeling: CellLabeling, witness: CellWitness | None = None, size: int = 400
) -> str:
    """SVG picture of a labeling of ``K_k^2``, witness cells outlined.

    Raises:
        UnsupportedDimension: if the labeling is not two-dimensional.
    """
    shape = labeling.shape
    if shape.n != 2:
        raise UnsupportedDimension(f"SVG pictures need a 2-dimensional grid, got n={shape.n}.")
    k = shape.k
    c = size / k
    margin = 30
    lines = [
        f'<svg width="{size + 2 * margin}" height="{size + 2 * margin}" '
        f'viewBox="0 0 {size + 2 * margin} {size + 2 * margin}" '
        'xmlns="http://www.w3.org/2000/svg">'
    ]
    for (i, j), value in labeling.items():
        x, y = margin + (i - 1) * c, margin + (k - j) * c
        label = ",".join(str(v) for v in value)
        lines.append(
            f'  <rect class="cell" x="{x:g}" y="{y:g}" width="{c:g}" height="{c:g}" '
            f'fill="{value_color(value)}" stroke="#ffffff" stroke-width="1">'
            f"<title>({i},{j}): ({label})</title></rect>"
        )
    if witness is not None:
        for i, j in sorted(witness.cells):
            x, y = margin + (i - 1) * c, margin + (k - j) * c
            lines.append(
                f'  <rect class="witness" x="{x:g}" y="{y:g}" width="{c:g}" height="{c:g}" '
                'fill="none" stroke="#000000" stroke-width="3" />'
            )
        middle = margin + size / 2
        if witness.axis == 1:
            x1, y1, x2, y2 = margin, size + 1.5 * margin, margin + size, size + 1.5 * margin
        else:
            x1, y1, x2, y2 = margin / 2, margin + size, margin / 2, margin
        lines.append(
            f'  <line class="axis" x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" '
            'stroke="#000000" stroke-width="2" />'
        )
        lines.append(
            f'  <text class="axis" x="{middle:g}" y="{margin / 2:g}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">crossing axis {witness.axis}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _layer_image(
    colors: npt.NDArray[numpy.uint8],
    outlined: npt.NDArray[numpy.bool_],
    scale: int,
) -> npt.NDArray[numpy.uint8]:
    """Image of one layer, ``colors[i, j]`` being the RGB color of cell ``(i+1, j+1)``."""
    k = colors.shape[0]
    # Row 0 of the image is the top, that is the largest second coordinate.
    image = numpy.repeat(numpy.repeat(colors.transpose(1, 0, 2)[::-1], scale, 0), scale, 1)
    border = numpy.zeros((scale, scale), dtype=bool)
    width = max(1, scale // 8)
    border[:width, :] = border[-width:, :] = border[:, :width] = border[:, -width:] = True
    for i, j in numpy.argwhere(outlined):
        row, column = (k - 1 - j) * scale, i * scale
        image[row : row + scale, column : column + scale][border] = 0
    return image


def render_layers_ppm(
    labeling: CellLabeling, witness: CellWitness | None = None, scale: int = 16
) -> list[bytes]:
    """Binary PPM pictures of the layers ``x_3 = 1, …, k`` of a labeling of ``K_k^3``.

    Raises:
        UnsupportedDimension: if the labeling is not three-dimensional.
    """
    shape = labeling.shape
    if shape.n != 3:
        raise UnsupportedDimension(f"Layer pictures need a 3-dimensional grid, got n={shape.n}.")
    k = shape.k
    colors = numpy.zeros(shape.dense_shape + (3,), dtype=numpy.uint8)
    for cell, value in labeling.items():
        colors[tuple(i - 1 for i in cell)] = _rgb(value_color(value))
    outlined = numpy.zeros(shape.dense_shape, dtype=bool)
    if witness is not None:
        for cell in witness.cells:
            outlined[tuple(i - 1 for i in cell)] = True
    images = []
    for layer in range(k):
        image = _layer_image(colors[:, :, layer], outlined[:, :, layer], scale)
        header = f"P6\n{image.shape[1]} {image.shape[0]}\n255\n".encode("ascii")
        images.append(header + image.tobytes())
    return images
