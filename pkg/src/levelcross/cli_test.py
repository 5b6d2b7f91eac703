import json
import pathlib

import pytest

from levelcross.cli import EXIT_FAILURE, EXIT_INVALID_INPUT, EXIT_OK, main


def _run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_color(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(capsys, "color", "--n", "2", "--m", "1", "--box", "0:2,0:1")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["box"] == [[0, 2], [0, 1]]
    assert len(document["rows"]) == 2
    assert all(len(row) == 3 for row in document["rows"])
    assert len(document["colors"]) == 3


def test_color_invalid_parameters(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(capsys, "color", "--n", "2", "--m", "0")
    assert code == EXIT_INVALID_INPUT
    assert out == ""


def test_chessboard_from_file(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    path = tmp_path / "coloring.json"
    path.write_text('{"n":2,"k":2,"d":1,"values":[[1],[2],[2],[1]]}')
    svg = tmp_path / "witness.svg"
    code, out = _run(capsys, "chessboard", "--input", str(path), "--svg", str(svg))
    assert code == EXIT_OK
    assert out == '{"axis":1,"cells":[[1,1],[2,2]],"kind":"chessboard","p":1}\n'
    assert svg.read_text().startswith("<svg")


def test_chessboard_random_is_deterministic(capsys: pytest.CaptureFixture[str]) -> None:
    first = _run(capsys, "chessboard", "--random", "4", "--n", "3", "--k", "5")
    second = _run(capsys, "chessboard", "--random", "4", "--n", "3", "--k", "5")
    assert first == second
    assert json.loads(first[1])["kind"] == "chessboard"


def test_chessboard_distance_fields(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(capsys, "chessboard", "--random", "1", "--k", "3", "--distance-fields")
    assert code == EXIT_OK
    assert json.loads(out)["p"] in (1, 2)


def test_chessboard_ppm(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    code, _ = _run(
        capsys, "chessboard", "--random", "0", "--n", "3", "--k", "3", "--ppm-dir", str(tmp_path)
    )
    assert code == EXIT_OK
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "layer_001.ppm",
        "layer_002.ppm",
        "layer_003.ppm",
    ]


def test_chessboard_invalid_input(
    capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path
) -> None:
    path = tmp_path / "coloring.json"
    path.write_text('{"n":2,"k":2,"d":1,"values":[[1],[2]]}')
    assert _run(capsys, "chessboard", "--input", str(path)) == (EXIT_INVALID_INPUT, "")
    path.write_text('{"n":2,"k":2,"d":1,"values":[[1],[2],[3],[1]]}')
    assert _run(capsys, "chessboard", "--input", str(path)) == (EXIT_INVALID_INPUT, "")
    missing = tmp_path / "missing.json"
    assert _run(capsys, "chessboard", "--input", str(missing)) == (EXIT_INVALID_INPUT, "")


def test_svg_needs_two_dimensions(
    capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path
) -> None:
    code, _ = _run(
        capsys, "chessboard", "--random", "0", "--n", "3", "--k", "2", "--svg", str(tmp_path / "a")
    )
    assert code == EXIT_INVALID_INPUT


def test_solve_discrete(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    path = tmp_path / "labeling.json"
    path.write_text('{"n":2,"k":2,"d":1,"values":[[0],[0],[1],[1]]}')
    code, out = _run(capsys, "solve-discrete", "--input", str(path), "--m", "1")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["kind"] == "discrete"
    assert document["bound"] == 2
    code, out = _run(capsys, "solve-discrete", "--input", str(path), "--m", "1", "--shrink")
    assert code == EXIT_OK
    assert len(json.loads(out)["p"]) <= 2


def test_solve_discrete_broken_hypothesis(
    capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path
) -> None:
    path = tmp_path / "labeling.json"
    path.write_text('{"n":2,"k":2,"d":1,"values":[[0],[0],[0],[5]]}')
    assert _run(capsys, "solve-discrete", "--input", str(path), "--m", "0") == (
        EXIT_INVALID_INPUT,
        "",
    )


def test_levelset(capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path) -> None:
    svg = tmp_path / "levelset.svg"
    code, out = _run(capsys, "levelset", "--fn", "linear", "--epsilon", "0.2", "--svg", str(svg))
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["kind"] == "continuous"
    assert document["bound"] < 0.2
    assert svg.exists()


def test_levelset_refinement(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(capsys, "levelset", "--fn", "projection", "--epsilon", "0.2", "--steps", "2")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["kind"] == "refinement"
    assert len(document["witnesses"]) == 2
    assert len(document["hausdorff"]) == 1


def test_levelset_polynomial_file(
    capsys: pytest.CaptureFixture[str], tmp_path: pathlib.Path
) -> None:
    path = tmp_path / "poly.json"
    path.write_text('{"n":2,"components":[[{"coefficient":1.0,"exponents":[0,1]}]]}')
    code, out = _run(capsys, "levelset", "--fn", str(path), "--epsilon", "0.3")
    assert code == EXIT_OK
    assert json.loads(out)["axis"] == 1


def test_levelset_unknown_function(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(capsys, "levelset", "--fn", "cubic", "--epsilon", "0.1") == (
        EXIT_INVALID_INPUT,
        "",
    )


def test_constants(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(
        capsys, "constants", "--k", "2", "--m", "1", "--radius", "1", "--workers", "1"
    )
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["verified"] == document["enumerated"]
    assert document["counterexamples"] == []


def test_constants_budget(capsys: pytest.CaptureFixture[str]) -> None:
    code, _ = _run(capsys, "constants", "--k", "4", "--budget", "10", "--workers", "1")
    assert code == EXIT_INVALID_INPUT


def test_constants_obstruction(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(capsys, "constants", "--obstruction")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["singleton_crossing"] is False
    assert document["value_set_size"] == 2
    assert document["grid"] == {"n": 3, "k": 7}


def test_verify(capsys: pytest.CaptureFixture[str]) -> None:
    code, out = _run(capsys, "verify", "--quick", "--check", "grid-geometry")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["passed"] is True
    assert [c["name"] for c in document["checks"]] == ["grid-geometry"]


def test_verify_failure_exit_code(
    capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch
) -> None:
    from levelcross import suite

    def failing(result: suite.CheckResult, quick: bool) -> None:
        result.fail("Broken.")

    monkeypatch.setitem(suite.CHECKS, "grid-geometry", failing)
    code, out = _run(capsys, "verify", "--check", "grid-geometry")
    assert code == EXIT_FAILURE
    assert json.loads(out)["passed"] is False


def test_invalid_log_level(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(capsys, "--log-level", "LOUD", "color") == (EXIT_INVALID_INPUT, "")


@pytest.mark.parametrize(
    "argv",
    [
        ["color", "--n", "2", "--box", "a:b"],
        ["levelset", "--fn", "projection"],
        ["chessboard", "--k", "3"],
        ["--n", "2"],
        [],
    ],
)
def test_malformed_arguments_exit_code(
    capsys: pytest.CaptureFixture[str], argv: list[str]
) -> None:
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_INVALID_INPUT
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error:" in captured.err
