"""JSON documents for labelings and witnesses.

Documents are written in a canonical form: keys sorted, no whitespace, a
trailing newline. Reading then writing a canonical document gives back the
same bytes.
"""

from __future__ import annotations

import json
import math
import typing as ty

import numpy

from levelcross.continuous import ContinuousWitness
from levelcross.discrete import DiscreteWitness
from levelcross.exceptions import SchemaError
from levelcross.grid import CellLabeling, GridShape
from levelcross.steinhaus import ChessboardWitness

Witness = ty.Union[ChessboardWitness, DiscreteWitness, ContinuousWitness]


def _real(value: float) -> str:
    if not math.isfinite(value):
        return json.dumps(value)
    text = format(value, ".17g")
    return text if any(c in text for c in ".e") else text + ".0"


def _encode(value: ty.Any) -> str:
    if isinstance(value, float):
        return _real(value)
    if isinstance(value, dict):
        items = sorted((str(key), item) for key, item in value.items())
        return "{" + ",".join(f"{json.dumps(key)}:{_encode(item)}" for key, item in items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_encode(item) for item in value) + "]"
    return json.dumps(value)


def dumps(document: ty.Any) -> str:
    """Canonical JSON text of ``document``.

    Reals are written with 17 significant digits, enough to read back the
    same double. Integral reals keep a fractional part.
    """
    return _encode(document) + "\n"


INT64 = numpy.iinfo(numpy.int64)


def _is_int(value: ty.Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _read_int(document: dict[str, ty.Any], key: str, minimum: int) -> int:
    if key not in document:
        raise SchemaError(f"Missing field {key!r}.", key)
    value = document[key]
    if not _is_int(value) or value < minimum:
        raise SchemaError(f"Expected an integer at least {minimum}, got {value!r}.", key)
    return int(value)


def parse_labeling(text: str) -> CellLabeling:
    """Read a labeling from its JSON document.

    The document has the fields ``n``, ``k``, ``d`` and ``values``, the list of
    the ``k^n`` values, each a list of ``d`` integers, cells in row-major order.

    Raises:
        SchemaError: on the first offending position of a malformed document.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise SchemaError(f"Invalid JSON: {error.msg}.", f"line {error.lineno}") from error
    if not isinstance(document, dict):
        raise SchemaError("Expected a JSON object.", "document")
    n = _read_int(document, "n", 1)
    k = _read_int(document, "k", 1)
    d = _read_int(document, "d", 0)
    if "values" not in document:
        raise SchemaError("Missing field 'values'.", "values")
    values = document["values"]
    if not isinstance(values, list):
        raise SchemaError("Expected a list of values.", "values")
    shape = GridShape(n, k)
    if len(values) != shape.num_cells:
        raise SchemaError(f"Expected {shape.num_cells} values, got {len(values)}.", "values")
    for i, value in enumerate(values):
        if not isinstance(value, list) or len(value) != d or not all(_is_int(x) for x in value):
            raise SchemaError(f"Expected a list of {d} integers.", f"values[{i}]")
        if not all(INT64.min <= x <= INT64.max for x in value):
            raise SchemaError(
                f"Expected integers in [{INT64.min}, {INT64.max}], got {value!r}.", f"values[{i}]"
            )
    array = numpy.array(values, dtype=numpy.int64).reshape(shape.dense_shape + (d,))
    return CellLabeling(shape, array)


def labeling_document(labeling: CellLabeling) -> dict[str, ty.Any]:
    shape = labeling.shape
    return {
        "n": shape.n,
        "k": shape.k,
        "d": labeling.d,
        "values": labeling.flat_values().tolist(),
    }


def serialize_labeling(labeling: CellLabeling) -> str:
    return dumps(labeling_document(labeling))


def _sorted_cells(cells: ty.Iterable[tuple[int, ...]]) -> list[list[int]]:
    return [list(c) for c in sorted(cells)]


def witness_document(witness: Witness) -> dict[str, ty.Any]:
    """JSON-ready description of a witness.

    ``p`` is the color of a chessboard witness, the sorted value set of a
    discrete witness and the real point of a continuous witness.
    """
    if isinstance(witness, ChessboardWitness):
        return {
            "kind": "chessboard",
            "p": witness.color,
            "axis": witness.axis,
            "cells": _sorted_cells(witness.cells),
        }
    if isinstance(witness, DiscreteWitness):
        return {
            "kind": "discrete",
            "p": _sorted_cells(witness.value_set),
            "axis": witness.axis,
            "cells": _sorted_cells(witness.cells),
            "bound": witness.bound,
        }
    return {
        "kind": "continuous",
        "p": [float(x) for x in witness.p],
        "axis": witness.axis,
        "cells": _sorted_cells(witness.cells),
        "epsilon": float(witness.epsilon),
        "grid": {"n": witness.shape.n, "k": witness.shape.k},
        "resolution": witness.resolution,
    }


def emit_witness(witness: Witness) -> str:
    return dumps(witness_document(witness))
