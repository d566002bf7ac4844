import json

import pytest

from src.domain.tiling_model import RectRegion, RectTile, RectTiling
from src.infrastructure.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from src.infrastructure.generators import dehn_sharpness_tiling
from src.infrastructure.serialization import dumps_tiling, loads_tiling


@pytest.fixture
def write_tiling(tmp_path):
    def write(tiling, name="tiling.json"):
        path = tmp_path / name
        path.write_text(dumps_tiling(tiling), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def run(settings):
    def invoke(*argv):
        return main(list(argv), settings=settings)

    return invoke


class TestValidate:
    def test_pass(self, run, write_tiling, fibonacci_2x3, capsys):
        assert run("validate", write_tiling(fibonacci_2x3)) == EXIT_OK
        assert "rect tiling, 3 tiles: PASS" in capsys.readouterr().out

    def test_overlap_fails(self, run, write_tiling, capsys):
        tiling = RectTiling(RectRegion(0, 1, 0, 1), (RectTile(0, 1, 0, 1), RectTile(0, 1, 0, 1)))
        assert run("--json", "validate", write_tiling(tiling)) == EXIT_FAILURE
        payload = json.loads(capsys.readouterr().out)
        assert payload["overlapping_pairs"] == [[0, 1]]

    def test_malformed_tile_is_reported(self, run, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text(
            json.dumps({"kind": "rect", "region": {"x0": "0", "x1": "1", "y0": "0", "y1": "1"}, "tiles": [{"x0": "1", "x1": "0", "y0": "0", "y1": "1"}]}),
            encoding="utf-8",
        )
        assert run("validate", str(path)) == EXIT_FAILURE
        assert "structural" in capsys.readouterr().out

    def test_unparseable_document(self, run, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        assert run("validate", str(path)) == EXIT_USAGE
        assert "error_parse" in capsys.readouterr().err

    def test_missing_file(self, run, tmp_path, capsys):
        assert run("validate", str(tmp_path / "absent.json")) == EXIT_USAGE
        assert "error_usage" in capsys.readouterr().err


def test_analyze(run, write_tiling, fibonacci_2x3, capsys):
    assert run("--json", "analyze", write_tiling(fibonacci_2x3)) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["coordinates"]["total"] == 6
    assert payload["cover"]["count"] == 2


class TestScale:
    def test_dirichlet(self, run, write_tiling, fibonacci_2x3, capsys):
        assert run("scale", write_tiling(fibonacci_2x3)) == EXIT_OK
        out = capsys.readouterr().out
        assert "pipeline: square" in out
        assert "q: 3" in out

    def test_oracle(self, run, write_tiling, capsys):
        assert run("--json", "scale", write_tiling(dehn_sharpness_tiling()), "--method", "oracle") == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert (payload["factor"], payload["q"], payload["bound"]) == ("4", "8", None)

    def test_hypercube_strategy(self, run, write_tiling, half_cubes, capsys):
        assert run("scale", write_tiling(half_cubes), "--strategy", "longest") == EXIT_OK
        assert "strategy=longest" in capsys.readouterr().out

    def test_invalid_input(self, run, write_tiling, capsys):
        tiling = RectTiling(RectRegion(0, 2, 0, 1), (RectTile(0, 1, 0, 1),))
        assert run("--json", "scale", write_tiling(tiling)) == EXIT_FAILURE
        assert json.loads(capsys.readouterr().out)["error"] == "error_invalid_tiling"


class TestGenerate:
    def test_to_file(self, run, tmp_path):
        out = tmp_path / "fib.json"
        assert run("generate", "fibonacci", "--n", "5", "-o", str(out)) == EXIT_OK
        assert len(loads_tiling(out.read_text(encoding="utf-8")).tiles) == 5

    def test_to_stdout(self, run, capsys):
        assert run("generate", "dyadic_cube", "--d", "3", "--k", "2") == EXIT_OK
        assert json.loads(capsys.readouterr().out)["dim"] == 3

    def test_bad_parameter(self, run, capsys):
        assert run("generate", "dyadic_triangle", "--k", "0") == EXIT_FAILURE
        assert "error_generator_parameter" in capsys.readouterr().err


class TestSearch:
    def test_min_squares(self, run, tmp_path, capsys):
        witness = tmp_path / "quilt.json"
        assert run("search", "min-squares", "--width", "5", "--height", "6", "--emit-witness", str(witness)) == EXIT_OK
        out = capsys.readouterr().out
        assert "5x6: 5 squares" in out
        assert "PASS" in out
        assert len(loads_tiling(witness.read_text(encoding="utf-8")).tiles) == 5

    def test_cap_too_low(self, run, capsys):
        assert run("search", "min-squares", "--width", "5", "--height", "6", "--max-tiles", "4") == EXIT_FAILURE
        assert "exceeds_max_tiles" in capsys.readouterr().out

    def test_horizon(self, run, capsys):
        assert run("search", "horizon", "--width", "1", "--height", "1", "--tiles", "1") == EXIT_OK
        assert capsys.readouterr().out.strip() == "1 2 3 4"


class TestRender:
    def test_svg_written(self, run, write_tiling, tmp_path):
        out = tmp_path / "dehn.svg"
        assert run("render", write_tiling(dehn_sharpness_tiling()), "-o", str(out)) == EXIT_OK
        assert out.read_text(encoding="utf-8").count("<polygon ") == 17

    def test_section(self, run, write_tiling, half_cubes, tmp_path):
        out = tmp_path / "cut.svg"
        assert run("render", write_tiling(half_cubes), "-o", str(out), "--section", "0", "1", "1/4") == EXIT_OK
        assert out.read_text(encoding="utf-8").count("<polygon ") == 4

    def test_boxes_without_section(self, run, write_tiling, half_cubes, tmp_path, capsys):
        assert run("render", write_tiling(half_cubes), "-o", str(tmp_path / "x.svg")) == EXIT_FAILURE
        assert "error_render_section_required" in capsys.readouterr().err

    def test_short_section(self, run, write_tiling, half_cubes, tmp_path):
        assert run("render", write_tiling(half_cubes), "-o", str(tmp_path / "x.svg"), "--section", "0") == EXIT_USAGE


def test_unknown_command_exits_with_usage(run):
    with pytest.raises(SystemExit) as exc:
        run("tile")
    assert exc.value.code == 2
