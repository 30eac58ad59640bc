"""
결과 파일 출력
"""

import json
from pathlib import Path

import numpy as np
import pytest

from fractrace.core.errors import ReportError
from fractrace.experiments.report import ReportTable, emit_report, format_cell, write_json


def _tables() -> list[ReportTable]:
    table = ReportTable("values", ["name", "value", "ok"])
    table.add("a", 0.1, True)
    table.add("b", np.float64(1.0) / 3.0, np.bool_(False))
    return [table, ReportTable("empty", ["x", "y"])]


class TestFormatCell:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (True, "true"),
            (0.1, "0.1"),
            (float("inf"), "inf"),
            (float("-inf"), "-inf"),
            (float("nan"), "nan"),
            (np.float64(0.5), "0.5"),
            (np.int64(3), "3"),
            ("R", "R"),
        ],
    )
    def test_cells(self, value: object, expected: str) -> None:
        assert format_cell(value) == expected


class TestEmitReport:
    def test_byte_identical(self, tmp_path: Path) -> None:
        summary = {"b": 1.0, "a": [1, 2], "c": float("inf")}
        first = emit_report(_tables(), tmp_path / "one", summary)
        second = emit_report(_tables(), tmp_path / "two", summary)
        for a, b in zip(first, second):
            assert a.name == b.name
            assert a.read_bytes() == b.read_bytes()

    def test_header_only_table(self, tmp_path: Path) -> None:
        emit_report(_tables(), tmp_path)
        assert (tmp_path / "empty.csv").read_text(encoding="utf-8") == "x,y\n"
        lines = (tmp_path / "values.csv").read_text(encoding="utf-8").splitlines()
        assert lines[1] == "a,0.1,true"
        assert lines[2].endswith(",false")

    def test_file_as_output_dir(self, tmp_path: Path) -> None:
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")
        with pytest.raises(ReportError, match="blocker"):
            emit_report(_tables(), blocker)

    def test_non_finite_json(self, tmp_path: Path) -> None:
        path = write_json({"gap": float("nan"), "values": np.array([1.0, 2.0])}, tmp_path / "s.json")
        payload = json.loads(path.read_text(encoding="utf-8"))
        assert payload == {"gap": "nan", "values": [1.0, 2.0]}


def test_add_checks_width() -> None:
    table = ReportTable("t", ["a", "b"])
    with pytest.raises(ValueError):
        table.add(1.0)
