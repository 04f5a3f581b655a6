"""
tests/test_cli_commands.py
==========================
End-to-end tests of the ``pphx`` command line: every sub-command, exit
codes, output formats and determinism.  Runs in-process through
``pphx.cli.main``; all files live under pytest's tmp_path.
"""

from __future__ import annotations

import json

import numpy as np
import pytest

from pphx import store_field
from pphx.cli import RunConfig, main
from pphx.models import GridField
from tests.helpers import make_boundary_square_field, make_spec, make_spiral, make_translation_field

GEN = ["gen", "--alpha", "1.0472", "--rho", "1", "--a", "1", "--grid", "10x10", "--eps", "0.25"]


def run_cli(argv: list[str], capsys) -> tuple[int, str, str]:
    with pytest.raises(SystemExit) as exc:
        main(argv)
    out, err = capsys.readouterr()
    return exc.value.code, out, err


@pytest.fixture(autouse=True)
def default_precision(monkeypatch):
    monkeypatch.delenv("PPHX_PRECISION", raising=False)


@pytest.fixture
def spiral_csv(tmp_path, capsys):
    path = tmp_path / "spiral.csv"
    code, _, _ = run_cli([*GEN, "-o", str(path)], capsys)
    assert code == 0
    return path


# ─── gen ──────────────────────────────────────────────────────────────────────

class TestGen:

    def test_writes_centred_grid(self, tmp_path, capsys):
        code, out, _ = run_cli(GEN, capsys)
        assert code == 0
        assert out.splitlines()[0] == "m=10,n=10,eps=0.25,x0=-1.125,y0=-1.125"
        assert len(out.splitlines()) == 101

    def test_json_output(self, tmp_path, capsys):
        path = tmp_path / "spiral.json"
        code, _, _ = run_cli([*GEN, "-o", str(path)], capsys)
        assert code == 0
        data = json.loads(path.read_text())
        assert data["spec"]["m"] == 10
        assert len(data["vectors"]) == 100

    def test_centre_on_grid_point(self, capsys):
        code, _, err = run_cli(["gen", "--alpha", "1", "--grid", "3x3", "--eps", "1"], capsys)
        assert code == 1
        assert "coincides" in err

    @pytest.mark.parametrize("argv", [
        ["gen", "--alpha", "4", "--grid", "4x4", "--eps", "1"],
        ["gen", "--alpha", "1", "--grid", "4by4", "--eps", "1"],
        ["gen", "--alpha", "1", "--grid", "4x4", "--eps", "0"],
    ])
    def test_bad_arguments(self, argv, capsys):
        code, _, _ = run_cli(argv, capsys)
        assert code == 2


# ─── validate ─────────────────────────────────────────────────────────────────

class TestValidate:

    def test_clean_field(self, spiral_csv, capsys):
        code, out, _ = run_cli(["validate", str(spiral_csv)], capsys)
        assert code == 0
        assert out == ""

    def test_parallel_field(self, tmp_path, capsys):
        path = store_field(GridField(make_spec(3, 2), np.tile([1.0, 0.5], (6, 1))), tmp_path / "flat.csv")
        code, out, _ = run_cli(["validate", str(path)], capsys)
        assert code == 1
        assert len(out.splitlines()) == 7
        assert all(line.startswith("A1 ") for line in out.splitlines())


# ─── persistence / dump-digraph ───────────────────────────────────────────────

class TestPersistence:

    def test_boundary_square_header_only(self, tmp_path, capsys):
        path = store_field(make_boundary_square_field(), tmp_path / "square.csv")
        code, out, _ = run_cli(["persistence", str(path)], capsys)
        assert code == 0
        assert out == "birth,death\n"

    def test_spiral_essential_rows(self, spiral_csv, capsys):
        code, out, _ = run_cli(["persistence", str(spiral_csv)], capsys)
        assert code == 0
        rows = out.splitlines()[1:]
        assert sum(row.endswith(",inf") for row in rows) == 10 + 10 - 3

    def test_json_format(self, spiral_csv, capsys):
        code, out, _ = run_cli(["persistence", str(spiral_csv), "--format", "json"], capsys)
        assert code == 0
        pairs = json.loads(out)["pairs"]
        assert sum(p["death"] == "inf" for p in pairs) == 17

    def test_digraph_roundtrip(self, spiral_csv, tmp_path, capsys):
        dg_path = tmp_path / "spiral.digraph.json"
        assert run_cli(["dump-digraph", str(spiral_csv), "-o", str(dg_path)], capsys)[0] == 0
        _, direct, _ = run_cli(["persistence", str(spiral_csv)], capsys)
        code, offline, _ = run_cli(["persistence", "--digraph", str(dg_path)], capsys)
        assert code == 0
        assert offline == direct

    def test_needs_an_input(self, capsys):
        code, _, _ = run_cli(["persistence"], capsys)
        assert code == 2


# ─── locate / polygon ─────────────────────────────────────────────────────────

class TestLocate:

    def test_one_row(self, spiral_csv, capsys):
        code, out, _ = run_cli(["locate", str(spiral_csv)], capsys)
        assert code == 0
        header, row = out.splitlines()
        assert header == "square_i,square_j,index,center_x,center_y,trigger_weight"
        i, j, index, x, y, _ = row.split(",")
        assert (i, j, index) == ("4", "4", "1")
        assert abs(float(x)) < 0.125
        assert abs(float(y)) < 0.125

    def test_deterministic(self, spiral_csv, capsys):
        first = run_cli(["locate", str(spiral_csv)], capsys)[1]
        second = run_cli(["locate", str(spiral_csv)], capsys)[1]
        assert first == second

    def test_precision_env(self, spiral_csv, capsys, monkeypatch):
        monkeypatch.setenv("PPHX_PRECISION", "3")
        _, out, _ = run_cli(["locate", str(spiral_csv)], capsys)
        weight = out.splitlines()[1].split(",")[-1]
        assert len(weight.replace(".", "").lstrip("0")) <= 3

    def test_svg(self, spiral_csv, tmp_path, capsys):
        svg = tmp_path / "located.svg"
        code, _, _ = run_cli(["locate", str(spiral_csv), "--svg", str(svg)], capsys)
        assert code == 0
        first = svg.read_bytes()
        assert b"<svg" in first
        run_cli(["locate", str(spiral_csv), "--svg", str(svg)], capsys)
        assert svg.read_bytes() == first


class TestPolygon:

    def test_spiral(self, spiral_csv, tmp_path, capsys):
        out_path = tmp_path / "polygon.json"
        svg = tmp_path / "polygon.svg"
        code, _, _ = run_cli(["polygon", str(spiral_csv), "-o", str(out_path), "--svg", str(svg)], capsys)
        assert code == 0
        data = json.loads(out_path.read_text())
        assert set(data) == {"loop", "birth_weight", "enclosed_square"}
        assert data["enclosed_square"] == [4, 4]
        assert len(data["loop"]) >= 4
        assert svg.exists()

    def test_no_singularity(self, tmp_path, capsys):
        path = store_field(make_translation_field(), tmp_path / "flow.csv")
        code, out, err = run_cli(["polygon", str(path)], capsys)
        assert code == 1
        assert out == ""
        assert "no singular square" in err


# ─── compare / series ─────────────────────────────────────────────────────────

class TestCompare:

    def test_self_distance(self, spiral_csv, capsys):
        code, out, _ = run_cli(["compare", str(spiral_csv), str(spiral_csv)], capsys)
        assert code == 0
        assert out == "0\n"

    def test_wasserstein_self_distance(self, spiral_csv, capsys):
        code, out, _ = run_cli(["compare", str(spiral_csv), str(spiral_csv), "--wasserstein", "2"], capsys)
        assert code == 0
        assert float(out) == pytest.approx(0.0)

    def test_wasserstein_order_below_one(self, spiral_csv, capsys):
        code, _, _ = run_cli(["compare", str(spiral_csv), str(spiral_csv), "--wasserstein", "0.5"], capsys)
        assert code == 2

    def test_different_essential_counts_is_inf(self, spiral_csv, tmp_path, capsys):
        other = store_field(make_spiral(center=(3.3, 4.6)), tmp_path / "other.csv")
        code, out, _ = run_cli(["compare", str(spiral_csv), str(other)], capsys)
        assert code == 0
        assert out.strip() == "inf"


class TestSeries:

    def test_manifest(self, tmp_path, capsys):
        for k, cx in enumerate([3.3, 3.35, 3.4]):
            store_field(make_spiral(center=(cx, 4.6)), tmp_path / f"t{k}.csv")
        manifest = tmp_path / "runs.txt"
        manifest.write_text("t0.csv\nt1.csv\nt2.csv\n")
        code, out, _ = run_cli(["series", str(manifest)], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "step,bottleneck"
        assert [line.split(",")[0] for line in lines[1:]] == ["1", "2"]

    def test_missing_field_in_manifest(self, tmp_path, capsys):
        manifest = tmp_path / "runs.txt"
        manifest.write_text("absent.csv\n")
        code, _, _ = run_cli(["series", str(manifest)], capsys)
        assert code == 2


# ─── Errors ───────────────────────────────────────────────────────────────────

class TestErrors:

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run_cli(["locate", str(tmp_path / "absent.csv")], capsys)
        assert code == 2
        assert "absent.csv" in err

    def test_malformed_csv(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("m=2,n=2,eps=1,x0=0,y0=0\n0,0,1\n")
        code, _, err = run_cli(["locate", str(path)], capsys)
        assert code == 2
        assert "line 2" in err

    def test_non_utf8_field(self, tmp_path, capsys):
        path = tmp_path / "binary.csv"
        path.write_bytes(b"\xff\xfe" + b"m=2,n=2,eps=1,x0=0,y0=0\n")
        code, out, err = run_cli(["locate", str(path)], capsys)
        assert code == 2
        assert out == ""
        assert "UTF-8" in err

    @pytest.mark.parametrize("data", [
        {"spec": 3, "horiz_edges": [], "vert_edges": []},
        {"spec": {"m": 2, "n": 2, "eps": 1, "x0": 0, "y0": 0}, "horiz_edges": 5, "vert_edges": []},
        {"spec": {"m": 2, "n": 2, "eps": 1, "x0": 0, "y0": 0}, "horiz_edges": [], "vert_edges": "FB"},
    ])
    def test_malformed_digraph(self, data, tmp_path, capsys):
        path = tmp_path / "dg.json"
        path.write_text(json.dumps(data))
        code, _, err = run_cli(["persistence", "--digraph", str(path)], capsys)
        assert code == 2
        assert "must be" in err

    def test_unknown_suffix(self, tmp_path, capsys):
        path = tmp_path / "field.xml"
        path.write_text("")
        code, _, _ = run_cli(["locate", str(path)], capsys)
        assert code == 2

    def test_degenerate_field(self, tmp_path, capsys):
        path = store_field(GridField(make_spec(3, 3), np.tile([0.0, 1.0], (9, 1))), tmp_path / "flat.csv")
        code, _, _ = run_cli(["locate", str(path)], capsys)
        assert code == 1

    def test_run_config_rejects_unknown_command(self):
        with pytest.raises(ValueError):
            RunConfig(command="explode")
