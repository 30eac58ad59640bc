"""
결과 파일 출력

CSV 는 선언된 열 순서와 repr 실수 표기로, JSON 은 sort_keys 로 기록해 같은 시드에서
바이트 단위로 같은 파일을 만듭니다.
"""

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from fractrace.core.errors import ReportError


@dataclass
class ReportTable:
    """이름, 열, 행"""

    name: str
    columns: Sequence[str]
    rows: List[Sequence[Any]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name}: 열 {len(self.columns)}개에 값 {len(values)}개")
        self.rows.append(values)


def format_cell(value: Any) -> str:
    """실수는 repr, 불리언은 true/false"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(float(value))
    if hasattr(value, "item"):
        return format_cell(value.item())
    return str(value)


def _prepare_dir(out_dir: Path) -> Path:
    out_dir = Path(out_dir)
    if out_dir.exists() and not out_dir.is_dir():
        raise ReportError(f"출력 경로가 디렉토리가 아닙니다: {out_dir}")
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ReportError(f"출력 디렉토리를 만들 수 없습니다: {out_dir} ({e})") from e
    return out_dir


def write_csv(table: ReportTable, out_dir: Path) -> Path:
    """<out_dir>/<name>.csv"""
    path = _prepare_dir(out_dir) / f"{table.name}.csv"
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow([format_cell(v) for v in row])
    except OSError as e:
        raise ReportError(f"CSV 를 쓸 수 없습니다: {path} ({e})") from e
    return path


def to_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return to_jsonable(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return format_cell(value)
    return value


def write_json(payload: Dict[str, Any], path: Path) -> Path:
    """sort_keys JSON (비유한 실수는 문자열)"""
    path = Path(path)
    _prepare_dir(path.parent)
    try:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(to_jsonable(payload), f, indent=2, ensure_ascii=False, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise ReportError(f"JSON 을 쓸 수 없습니다: {path} ({e})") from e
    return path


def emit_report(
    tables: Sequence[ReportTable],
    out_dir: Path,
    summary: Optional[Dict[str, Any]] = None,
    summary_name: str = "summary.json",
) -> List[Path]:
    """
    표와 요약을 기록합니다. 행이 없는 표는 헤더만 씁니다.

    Raises:
        ReportError: 출력 경로 오류 (경로 포함)
    """
    out_dir = _prepare_dir(out_dir)
    paths = [write_csv(table, out_dir) for table in tables]
    if summary is not None:
        paths.append(write_json(summary, out_dir / summary_name))
    return paths
