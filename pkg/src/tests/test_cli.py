"""
CLI 인자 해석과 종료 코드
"""

import csv
import json
import math
from pathlib import Path
from typing import List

import pytest

from fractrace.cli.commands.capacity import parse_grid
from fractrace.cli.main import build_parser, main
from fractrace.geometry.measure import DiscreteMeasure, save_measure

EVAL = ["kernel", "eval", "--alpha", "0.5", "--t", "1", "--x", "0"]


def _exit_code(argv: List[str]) -> int:
    with pytest.raises(SystemExit) as info:
        main(argv)
    return int(info.value.code)


class TestParser:
    def test_global_seed_survives_subcommand(self) -> None:
        args = build_parser().parse_args(["--seed", "7", *EVAL])
        assert args.seed == 7

    def test_seed_after_subcommand(self) -> None:
        args = build_parser().parse_args([*EVAL, "--seed", "3"])
        assert args.seed == 3

    def test_defaults(self) -> None:
        args = build_parser().parse_args(EVAL)
        assert args.seed == 0
        assert args.out is None
        assert args.dim == 1

    def test_point_source_required(self) -> None:
        with pytest.raises(SystemExit):
            build_parser().parse_args(["wolff", "--measure", "mu.csv"])

    def test_grid_spec(self) -> None:
        grid = parse_grid("2,0.25,1,8", "S")
        assert grid.variant == "S"
        assert grid.time_cells == 8


class TestCommands:
    def test_kernel_eval(self, tmp_path: Path) -> None:
        assert _exit_code(["--out", str(tmp_path), *EVAL]) == 0
        summary = json.loads((tmp_path / "summary.json").read_text(encoding="utf-8"))
        assert summary["value"] == pytest.approx(1.0 / math.pi, rel=1e-12)
        assert summary["method"] == "closed_form"

    def test_dimension_mismatch(self, tmp_path: Path) -> None:
        assert _exit_code(["--out", str(tmp_path), *EVAL, "--dim", "2"]) == 1

    def test_no_command(self) -> None:
        assert _exit_code([]) == 1

    def test_wolff_at_points(self, tmp_path: Path) -> None:
        save_measure(DiscreteMeasure.from_atoms([(2.0, 0.0, 1.0)]), tmp_path / "mu.csv")
        (tmp_path / "points.csv").write_text("t,x1\n1.0,0.0\n", encoding="utf-8")
        code = _exit_code([
            "wolff", "--measure", str(tmp_path / "mu.csv"), "--points", str(tmp_path / "points.csv"),
            "--p", "2", "--out", str(tmp_path / "out"),
        ])
        assert code == 0
        with open(tmp_path / "out" / "wolff.csv", encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        assert float(rows[0]["value"]) == pytest.approx(1.0, abs=1e-12)

    def test_missing_measure_file(self, tmp_path: Path) -> None:
        code = _exit_code([
            "wolff", "--measure", str(tmp_path / "absent.csv"), "--at-atoms", "--out", str(tmp_path),
        ])
        assert code == 1

    def test_unknown_stage(self, tmp_path: Path) -> None:
        assert _exit_code(["suite", "--stages", "nope", "--out", str(tmp_path)]) == 1
