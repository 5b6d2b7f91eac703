import json

import numpy
import pytest

from levelcross.continuous import ContinuousWitness
from levelcross.discrete import DiscreteWitness
from levelcross.exceptions import SchemaError
from levelcross.generators import random_polynomial_labeling
from levelcross.grid import CellLabeling, GridShape
from levelcross.serialization import (
    emit_witness,
    parse_labeling,
    serialize_labeling,
    witness_document,
)
from levelcross.steinhaus import ChessboardWitness


def test_parse_labeling() -> None:
    labeling = parse_labeling('{"n":1,"k":2,"d":1,"values":[[1],[2]]}')
    assert labeling.shape == GridShape(1, 2)
    assert labeling.value((1,)) == (1,)
    assert labeling.value((2,)) == (2,)


def test_parse_labeling_row_major() -> None:
    labeling = parse_labeling('{"n":2,"k":2,"d":1,"values":[[1],[2],[3],[4]]}')
    assert [labeling.value(c) for c in [(1, 1), (1, 2), (2, 1), (2, 2)]] == [
        (1,),
        (2,),
        (3,),
        (4,),
    ]


@pytest.mark.parametrize(
    "text,position",
    [
        ("{", "line 1"),
        ("[1]", "document"),
        ('{"k":2,"d":1,"values":[]}', "n"),
        ('{"n":0,"k":2,"d":1,"values":[]}', "n"),
        ('{"n":1,"k":true,"d":1,"values":[]}', "k"),
        ('{"n":1,"k":2,"d":-1,"values":[]}', "d"),
        ('{"n":1,"k":2,"d":1}', "values"),
        ('{"n":1,"k":2,"d":1,"values":{}}', "values"),
        ('{"n":1,"k":2,"d":1,"values":[[1]]}', "values"),
        ('{"n":1,"k":2,"d":1,"values":[[1],[2,3]]}', "values[1]"),
        ('{"n":1,"k":2,"d":1,"values":[[1],[1.5]]}', "values[1]"),
        ('{"n":1,"k":2,"d":1,"values":[[1],2]}', "values[1]"),
        ('{"n":1,"k":1,"d":1,"values":[[' + str(10**30) + ']]}', "values[0]"),
        ('{"n":1,"k":2,"d":1,"values":[[0],[' + str(-(2**63) - 1) + ']]}', "values[1]"),
    ],
)
def test_parse_labeling_schema_errors(text: str, position: str) -> None:
    with pytest.raises(SchemaError) as info:
        parse_labeling(text)
    assert info.value.position == position
    assert f"(at {position})" in str(info.value)


def test_parse_labeling_int64_extremes() -> None:
    labeling = parse_labeling(f'{{"n":1,"k":2,"d":1,"values":[[{2**63 - 1}],[{-(2**63)}]]}}')
    assert labeling.value((1,)) == (2**63 - 1,)
    assert labeling.value((2,)) == (-(2**63),)


@pytest.mark.parametrize("n,k", [(1, 4), (2, 3), (3, 2)])
def test_serialize_round_trip(n: int, k: int) -> None:
    labeling = random_polynomial_labeling(GridShape(n, k), numpy.random.default_rng(n * k))
    text = serialize_labeling(labeling)
    assert text.endswith("\n")
    assert parse_labeling(text) == labeling
    assert serialize_labeling(parse_labeling(text)) == text


def test_serialize_canonical_form() -> None:
    labeling = CellLabeling.from_colors(GridShape(1, 2), [2, 1])
    assert serialize_labeling(labeling) == '{"d":1,"k":2,"n":1,"values":[[2],[1]]}\n'


def test_emit_chessboard_witness() -> None:
    witness = ChessboardWitness(1, frozenset({(2, 2), (1, 1)}), 1)
    text = emit_witness(witness)
    assert text == '{"axis":1,"cells":[[1,1],[2,2]],"kind":"chessboard","p":1}\n'
    assert emit_witness(ChessboardWitness(1, frozenset({(1, 1), (2, 2)}), 1)) == text


def test_emit_discrete_witness() -> None:
    witness = DiscreteWitness(frozenset({(1,), (0,)}), frozenset({(1, 2), (1, 1)}), 2, 2)
    document = json.loads(emit_witness(witness))
    assert document == {
        "kind": "discrete",
        "p": [[0], [1]],
        "axis": 2,
        "cells": [[1, 1], [1, 2]],
        "bound": 2,
    }


def test_emit_continuous_witness() -> None:
    witness = ContinuousWitness(
        (0.1 + 0.2,), frozenset({(1, 1), (1, 2)}), 2, 0.05, GridShape(2, 2), 7
    )
    document = witness_document(witness)
    assert document["epsilon"] == 0.05
    assert document["grid"] == {"n": 2, "k": 2}
    text = emit_witness(witness)
    assert '"p":[0.30000000000000004]' in text
    assert json.loads(text)["p"] == [0.1 + 0.2]


def test_reals_have_seventeen_significant_digits() -> None:
    witness = ContinuousWitness((0.1, 1.0), frozenset({(1, 1, 1)}), 1, 0.25, GridShape(3, 2), 5)
    text = emit_witness(witness)
    assert '"p":[0.10000000000000001,1.0]' in text
    assert '"epsilon":0.25' in text
    assert json.loads(text)["p"] == [0.1, 1.0]
    assert emit_witness(witness) == text
