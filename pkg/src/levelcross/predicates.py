from __future__ import annotations

import typing as ty

import numpy

from levelcross.grid import CellLabeling


def has_scalar_values(labeling: CellLabeling) -> bool:
    return labeling.d == 1


def has_colors_in_range(labeling: CellLabeling) -> bool:
    values = labeling.values
    return bool(numpy.all((values >= 1) & (values <= labeling.shape.n)))


def has_codimension_one_values(labeling: CellLabeling) -> bool:
    return labeling.d == labeling.shape.n - 1


def _first_failure(
    labeling: CellLabeling,
    predicates: list[tuple[ty.Callable[[CellLabeling], bool], str]],
) -> str | None:
    for pred, reason in predicates:
        if not pred(labeling):
            return reason
    return None


def is_valid_coloring(labeling: CellLabeling) -> str | None:
    """Check that ``labeling`` colors the ``n``-dimensional grid with colors in ``[n]``.

    Returns:
        ``None`` if the labeling is a valid coloring, else the reason why it is not.
    """
    n = labeling.shape.n
    return _first_failure(
        labeling,
        [
            (has_scalar_values, "A coloring should have 1-dimensional values."),
            (
                has_colors_in_range,
                f"A coloring of a {n}-dimensional grid should only use colors 1 to {n}.",
            ),
        ],
    )


def is_valid_lattice_labeling(labeling: CellLabeling) -> str | None:
    """Check that ``labeling`` maps the cells of ``K_k^n`` to ``Z^{n-1}``."""
    n = labeling.shape.n
    return _first_failure(
        labeling,
        [
            (
                has_codimension_one_values,
                f"The labeling of a {n}-dimensional grid should have values of dimension "
                f"{n - 1}, got {labeling.d}.",
            ),
        ],
    )
