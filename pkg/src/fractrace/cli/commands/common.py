"""
명령어 공용 도우미

설정 로드, 실험 실행, 종료 코드, 질의점 파일
"""

import csv
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type

import numpy as np

from fractrace.core.config import Config
from fractrace.core.context import ExperimentContext, new_context
from fractrace.experiments.base import BaseExperiment, ExperimentConfig
from fractrace.experiments.report import write_json

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PROPERTY_FAILURE = 2


def load_config(args: Any) -> Config:
    """--config 가 없으면 기본값"""
    return Config(Path(args.config) if getattr(args, "config", None) else None)


def output_dir(args: Any, config: Config) -> Path:
    """--out 이 설정 파일의 output.dir 보다 우선"""
    return Path(args.out or config.get("output.dir", "fractrace-out"))


def make_context(args: Any, config: Config) -> ExperimentContext:
    return new_context(int(args.seed), str(output_dir(args, config)), args.config)


def write_summary(out: Path, payload: Dict[str, Any]) -> Path:
    """<out>/summary.json"""
    return write_json(payload, Path(out) / "summary.json")


def run_experiment(
    args: Any,
    experiment_cls: Type[BaseExperiment],
    overrides: Optional[ExperimentConfig] = None,
) -> int:
    """
    실험 하나를 실행하고 요약을 쓴 뒤 종료 코드를 반환합니다.

    Returns:
        0 (모든 성질 성립) 또는 2 (성질 실패). 실행 오류는 예외로 전파
    """
    config = load_config(args)
    context = make_context(args, config)
    output = experiment_cls(context, config, overrides).run()

    for check in output["data"].get("checks", []):
        mark = "✓" if check["passed"] else "❌"
        print(f"{mark} {check['name']} {check['detail']}".rstrip())
    for name, path in output["data"].get("tables", {}).items():
        print(f"  {name}: {path}")

    write_summary(Path(context["output_dir"]), {
        "run_id": context["run_id"],
        "seed": context["seed"],
        "experiments": {output["experiment"]: output},
        "passed": output["passed"],
    })
    return EXIT_OK if output["passed"] else EXIT_PROPERTY_FAILURE


def experiment_config(args: Any, **params: Any) -> ExperimentConfig:
    """공통 인자 (variant, alpha, p, q, dim, measure, trials) 에서 실험 구성"""
    return ExperimentConfig(
        variant=getattr(args, "variant", "R"),
        alpha=float(args.alpha),
        p=float(getattr(args, "p", 2.0)),
        q=getattr(args, "q", None),
        dim=int(getattr(args, "dim", 1)),
        measure=getattr(args, "measure", "dirac"),
        trials=int(getattr(args, "trials", 24)),
        seed=int(args.seed),
        params={k: v for k, v in params.items() if v is not None},
    )


def parse_point(text: str) -> Tuple[float, ...]:
    """'x1,..,xn' → 튜플"""
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as e:
        raise ValueError(f"좌표 형식이 올바르지 않습니다: {text!r} (예: \"0.5,1\")") from e


def load_points(path: Path) -> Tuple[np.ndarray, np.ndarray]:
    """
    질의점 CSV `t,x1[,x2]` 를 (시간, 좌표) 로 읽습니다.

    Raises:
        FileNotFoundError: 파일 없음
        ValueError: 헤더 오류
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"질의점 파일을 찾을 수 없습니다: {path}")
    with open(path, "r", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if not header or header[0].strip() != "t" or len(header) < 2:
            raise ValueError(f"질의점 CSV 헤더는 t,x1[,x2] 형식이어야 합니다: {path}")
        rows: List[List[float]] = [[float(v) for v in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, len(header))
    return data[:, 0], data[:, 1:]