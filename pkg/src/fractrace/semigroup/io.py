"""
필드 파일 입출력

SpatialField 는 CSV `x1[,x2],value`, SpaceTimeField 는 CSV `t,x1[,x2],value` 로 저장하고
격자 메타데이터는 JSON 사이드카 `<파일>.json` {L, h, T, M, n} 에 둡니다.
"""

import csv
import json
from pathlib import Path
from typing import Union

import numpy as np

from fractrace.semigroup.fields import SpaceTimeField, SpatialField, SpatialGrid, TimeAxis


def _sidecar(path: Path) -> Path:
    return path.with_suffix(path.suffix + ".json")


def save_field(field: Union[SpatialField, SpaceTimeField], path: Path) -> Path:
    """필드를 CSV + 사이드카로 저장하고 CSV 경로를 반환"""
    path = Path(path)
    grid = field.grid
    meta = {"L": grid.half_width, "h": grid.spacing, "n": grid.dim}
    coords = [f"x{i + 1}" for i in range(grid.dim)]
    points = grid.points()

    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        if isinstance(field, SpaceTimeField):
            meta.update({"T": field.time.horizon, "M": field.time.steps})
            writer.writerow(["t"] + coords + ["value"])
            for t, values in zip(field.time.nodes(), field.values):
                for x, v in zip(points, values.reshape(-1)):
                    writer.writerow([repr(float(t))] + [repr(float(c)) for c in x] + [repr(float(v))])
        else:
            writer.writerow(coords + ["value"])
            for x, v in zip(points, field.values.reshape(-1)):
                writer.writerow([repr(float(c)) for c in x] + [repr(float(v))])

    with open(_sidecar(path), "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
    return path


def load_field(path: Path) -> Union[SpatialField, SpaceTimeField]:
    """
    save_field 로 저장한 필드를 읽습니다.

    Raises:
        FileNotFoundError: CSV 또는 사이드카 없음
        ValueError: 행 수가 격자와 맞지 않음
    """
    path = Path(path)
    sidecar = _sidecar(path)
    for p in (path, sidecar):
        if not p.exists():
            raise FileNotFoundError(f"필드 파일을 찾을 수 없습니다: {p}")

    with open(sidecar, "r", encoding="utf-8") as f:
        meta = json.load(f)
    grid = SpatialGrid(float(meta["L"]), float(meta["h"]), int(meta["n"]))
    with open(path, "r", encoding="utf-8") as f:
        reader = csv.reader(f)
        next(reader, None)
        values = np.array([float(row[-1]) for row in reader if row])

    if "M" in meta:
        time = TimeAxis(float(meta["T"]), int(meta["M"]))
        shape = (time.steps + 1,) + grid.shape
        if values.size != int(np.prod(shape)):
            raise ValueError(f"행 수 {values.size} 가 격자 {shape} 와 맞지 않습니다: {path}")
        return SpaceTimeField(grid, time, values.reshape(shape))

    if values.size != int(np.prod(grid.shape)):
        raise ValueError(f"행 수 {values.size} 가 격자 {grid.shape} 와 맞지 않습니다: {path}")
    return SpatialField(grid, values.reshape(grid.shape))
