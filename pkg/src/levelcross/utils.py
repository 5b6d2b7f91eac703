from __future__ import annotations

import itertools
import typing as ty


def nonnegative_mod(a: int, b: int) -> int:
    """Return the remainder of ``a`` divided by ``b`` in ``[0, |b|)``."""
    if b == 0:
        raise ZeroDivisionError("Modulus by zero.")
    return a % abs(b)


def exact_div(a: int, b: int) -> int:
    """Divide ``a`` by ``b``, asserting the division leaves no remainder."""
    quotient, remainder = divmod(a, b)
    assert remainder == 0, f"Inexact division {a} / {b}."
    return quotient


def neighbour_offsets(dimension: int, radius: int = 1) -> list[tuple[int, ...]]:
    """All non-zero integer offsets of l∞ norm at most ``radius``."""
    return [
        offset
        for offset in itertools.product(range(-radius, radius + 1), repeat=dimension)
        if any(offset)
    ]


def forward_offsets(dimension: int) -> list[tuple[int, ...]]:
    """Offsets in ``{-1, 0, 1}^dimension`` that are lexicographically positive.

    Each unordered pair of l∞-adjacent points is reached exactly once by adding
    one of these offsets to the lexicographically smaller point.
    """
    return [
        offset
        for offset in itertools.product((-1, 0, 1), repeat=dimension)
        if any(offset) and next(c for c in offset if c != 0) > 0
    ]


def iter_indices(k: int, n: int) -> ty.Iterator[tuple[int, ...]]:
    """Iterate over ``[k]^n`` (1-based) in lexicographic order."""
    return itertools.product(range(1, k + 1), repeat=n)


def shifted_slices(
    shape: tuple[int, ...], offset: tuple[int, ...]
) -> tuple[tuple[slice, ...], tuple[slice, ...]]:
    """Slices selecting the pairs ``(x, x + offset)`` lying inside a dense array.

    ``array[source]`` and ``array[target]`` have the same shape and element ``j``
    of the second is at ``offset`` from element ``j`` of the first.
    """
    source = tuple(slice(max(0, -o), s - max(0, o)) for s, o in zip(shape, offset))
    target = tuple(slice(max(0, o), s - max(0, -o)) for s, o in zip(shape, offset))
    return source, target
