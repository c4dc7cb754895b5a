import numpy as np
import pytest

from regioncolors import read_palette, Space
from regioncolors.cli import main

from conftest import FIXTURES

GRID = str(FIXTURES / "demo_grid.csv")
GRAPH = str(FIXTURES / "triangulation18.graph")


def run(argv, capsys=None):
    code = main(argv)
    if capsys is None:
        return code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestOptimizeCommand:
    def test_grid_happy_path(self, tmp_path):
        out = str(tmp_path / "p.txt")
        svg = str(tmp_path / "p.svg")
        code = main(["optimize", "--grid", GRID, "--space", "lab", "--seed", "7",
                     "--out", out, "--svg", svg])
        assert code == 0
        doc = read_palette(out)
        assert doc.space is Space.LAB
        assert doc.n == 12
        text = open(svg, encoding="utf-8").read()
        assert text.count("<rect") == 400
        for e in doc.entries:
            assert f'fill="{e.srgb_hex}"' in text

    def test_graph_input(self, tmp_path):
        out = str(tmp_path / "p.txt")
        code = main(["optimize", "--graph", GRAPH, "--space", "srgb",
                     "--seed", "3", "--max-iters", "400", "--out", out])
        assert code == 0
        assert read_palette(out).n == 18

    def test_svg_requires_grid(self, tmp_path):
        code = main(["optimize", "--graph", GRAPH, "--out", str(tmp_path / "p.txt"),
                     "--svg", str(tmp_path / "x.svg")])
        assert code == 2

    def test_reproducible_output_bytes(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        args = ["optimize", "--grid", GRID, "--seed", "5", "--max-iters", "300"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_restarts(self, tmp_path):
        out = str(tmp_path / "p.txt")
        code = main(["optimize", "--grid", GRID, "--seed", "2", "--restarts", "3",
                     "--max-iters", "200", "--out", out])
        assert code == 0
        doc = read_palette(out)
        assert 2 <= doc.seed <= 4  # winning restart seed is recorded

    def test_both_inputs_rejected(self, tmp_path):
        code = main(["optimize", "--grid", GRID, "--graph", GRAPH,
                     "--out", str(tmp_path / "p.txt")])
        assert code == 2

    def test_missing_input_file(self, tmp_path):
        code = main(["optimize", "--grid", str(tmp_path / "nope.csv"),
                     "--out", str(tmp_path / "p.txt")])
        assert code == 2


class TestRandomCommand:
    def test_srgb_integer_palette(self, tmp_path):
        out = str(tmp_path / "r.txt")
        assert main(["random", "--grid", GRID, "--space", "srgb", "--seed", "1",
                     "--out", out]) == 0
        doc = read_palette(out)
        coords = np.array([e.coords for e in doc.entries])
        assert np.array_equal(coords, np.round(coords))

    def test_lab_baseline_and_determinism(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        for p in (a, b):
            assert main(["random", "--graph", GRAPH, "--space", "lab",
                         "--seed", "1", "--out", str(p)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestConvertCommand:
    def test_white(self, capsys):
        assert main(["convert", "--from", "srgb", "--to", "lab",
                     "255", "255", "255"]) == 0
        assert capsys.readouterr().out.strip() == "100.0000 0.0000 0.0000"

    def test_red(self, capsys):
        assert main(["convert", "--from", "srgb", "--to", "lab", "255", "0", "0"]) == 0
        vals = [float(v) for v in capsys.readouterr().out.split()]
        assert vals == pytest.approx([53.24, 80.09, 67.20], abs=0.01)

    def test_neutral_gray(self, capsys):
        assert main(["convert", "--from", "lab", "--to", "srgb", "50", "0", "0"]) == 0
        vals = [float(v) for v in capsys.readouterr().out.split()]
        assert max(vals) - min(vals) < 0.5  # mid gray: all channels equal

    def test_out_of_domain(self, capsys):
        assert main(["convert", "--from", "srgb", "--to", "lab", "300", "0", "0"]) == 2
        assert main(["convert", "--from", "lab", "--to", "srgb", "200", "0", "0"]) == 2


class TestReportCommand:
    def test_report_and_mismatch(self, tmp_path, capsys):
        out = str(tmp_path / "p.txt")
        assert main(["optimize", "--grid", GRID, "--seed", "4",
                     "--max-iters", "300", "--out", out]) == 0
        capsys.readouterr()
        assert main(["report", "--palette", out, "--grid", GRID]) == 0
        text = capsys.readouterr().out
        stats = dict(line.split(": ") for line in text.strip().splitlines())
        assert stats["regions"] == "12"
        assert float(stats["min_adjacent_distance"]) > 0
        assert (float(stats["min_pairwise_distance"])
                <= float(stats["min_adjacent_distance"]))
        assert float(stats["quality"]) > 0
        # size mismatch: palette of the 12-region grid vs the 18-region graph
        assert main(["report", "--palette", out, "--graph", GRAPH]) == 2

    def test_optimized_beats_random_min_adjacent(self, tmp_path, capsys):
        opt = str(tmp_path / "o.txt")
        rnd = str(tmp_path / "r.txt")
        assert main(["optimize", "--grid", GRID, "--seed", "0", "--out", opt]) == 0
        assert main(["random", "--grid", GRID, "--seed", "0", "--out", rnd]) == 0

        def min_adj(path):
            capsys.readouterr()
            assert main(["report", "--palette", path, "--grid", GRID]) == 0
            text = capsys.readouterr().out
            return float(dict(line.split(": ")
                              for line in text.strip().splitlines())["min_adjacent_distance"])

        assert min_adj(opt) > min_adj(rnd)


class TestExitCodes:
    def test_usage_error_from_argparse(self):
        with pytest.raises(SystemExit) as exc:
            main(["optimize", "--space", "cmyk", "--out", "x"])
        assert exc.value.code == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            main(["paint"])
        assert exc.value.code == 2
