"""
설정 관리 모듈

config.yaml (또는 JSON) 파일을 로드하고 기본값 위에 병합합니다.
"""

import copy
import os
import re
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

# 설정 파일이 없을 때 사용하는 기본값 (config.yaml 과 동일한 구조)
DEFAULT_CONFIG: Dict[str, Any] = {
    "output": {
        "dir": "fractrace-out",
    },
    "logging": {
        "console": True,
    },
    "kernel": {
        "freq_nodes": 128,
        "tol": None,
        "mass_dims": [1, 2],
        "mass_alphas": [0.25, 0.5, 0.75, 1.0],
        "mass_times": [0.1, 1.0, 10.0],
        "closed_form_pairs": 200,
        "stable_samples": 1000000,
    },
    "geometry": {
        "scale_min": -20,
        "scale_max": 20,
    },
    "potentials": {
        "measures": 50,
        "exponents": [1.5, 2.0, 3.0],
        "duality_resolution": 16,
        "duality_margin": 12.0,
        "duality_time_cells": 64,
        "coverage_tol": 0.05,
        "exactness_measures": 100,
    },
    "capacity": {
        "time_samples": 16,
        "space_samples": 32,
        "grid_cells": 96,
        "time_cells": 24,
        "extent": 6.0,
        "subnodes": 2,
        "max_iter": 500,
        "tol": 1.0e-10,
        "feas_tol": 1.0e-6,
        "grid_mode": "scaled",
    },
    "scaling": {
        "radii": [0.125, 0.25, 0.5, 1.0, 2.0, 4.0],
        "r_alphas": [0.25, 0.5, 0.75],
        "r_p": 2.0,
        "s_alpha": 0.5,
        "s_exponents": [1.25, 1.5],
    },
    "trace": {
        "alpha": 0.5,
        "trials": 24,
        "cells": 128,
        "time_cells": 48,
        "extent": 4.0,
        "dilations": [0.5, 0.75, 1.0, 1.5, 2.0],
        "thicknesses": [0.5, 0.25, 0.125, 0.0625],
        "fine_scales": [0.4, 0.2, 0.1, 0.05],
        "threshold_levels": 4,
        "regimes": [[2.0, 3.0], [2.0, 2.0], [3.0, 2.0]],
        "s_regimes": [[1.5, 2.0], [1.5, 1.5], [1.5, 1.25]],
        "variants": ["R", "S"],
        "measure": "slab",
        "measure_params": {"time_cells": 8, "space_cells": 16},
    },
    "strichartz": {
        "alpha": 0.5,
        "p": 1.5,
        "dim": 1,
        "trials": 12,
        "half_width": 16.0,
        "spacing": 0.125,
        "horizon": 8.0,
        "time_steps": 128,
        "rescale": 2.0,
    },
    "capacitary": {
        "alpha": 0.5,
        "p": 1.5,
        "seeds": 20,
        "levels": 6,
        "coarsening": 2,
    },
    "suite": {
        "report": True,
    },
}

_ENV_PATTERN = re.compile(r"\$\{([^}]+)\}")


class Config:
    """
    Fractrace 설정 관리 클래스

    YAML/JSON 설정 파일을 읽어 DEFAULT_CONFIG 위에 병합합니다.
    환경 변수 ${VAR_NAME} 형식을 자동으로 치환합니다.
    """

    def __init__(self, config_path: Optional[Path] = None) -> None:
        """
        Args:
            config_path: 설정 파일 경로. None이면 기본값만 사용
        """
        self.config_path = Path(config_path) if config_path is not None else None
        self._config: Dict[str, Any] = {}

        if self.config_path is not None and not self.config_path.exists():
            raise FileNotFoundError(
                f"설정 파일을 찾을 수 없습니다: {self.config_path}\n"
                "--config 경로를 확인하거나 옵션 없이 기본값으로 실행하세요."
            )

        self._load()

    def _load(self) -> None:
        """설정 파일을 로드하고 환경 변수를 치환한 뒤 기본값과 병합합니다."""
        raw_config: Dict[str, Any] = {}
        if self.config_path is not None:
            # JSON은 YAML의 부분집합이므로 safe_load 하나로 둘 다 읽는다
            with open(self.config_path, "r", encoding="utf-8") as f:
                raw_config = yaml.safe_load(f) or {}
            if not isinstance(raw_config, dict):
                raise ValueError(f"설정 파일 최상위는 매핑이어야 합니다: {self.config_path}")

        self._config = _deep_merge(
            copy.deepcopy(DEFAULT_CONFIG),
            self._substitute_env_vars(raw_config),
        )

    def _substitute_env_vars(self, obj: Any) -> Any:
        """
        재귀적으로 환경 변수를 치환합니다.

        Args:
            obj: 치환할 객체 (dict, list, str 등)

        Returns:
            환경 변수가 치환된 객체
        """
        if isinstance(obj, dict):
            return {k: self._substitute_env_vars(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [self._substitute_env_vars(item) for item in obj]
        if isinstance(obj, str):
            # 환경 변수가 없으면 원본 그대로 둔다
            return _ENV_PATTERN.sub(lambda m: os.getenv(m.group(1), m.group(0)), obj)
        return obj

    def get(self, key: str, default: Any = None) -> Any:
        """
        설정 값을 가져옵니다.

        점 표기법(예: "capacity.max_iter")을 지원합니다.

        Args:
            key: 설정 키 (점 표기법 가능)
            default: 기본값

        Returns:
            설정 값

        Examples:
            >>> Config().get("capacity.grid_mode")
            'scaled'
        """
        value: Any = self._config
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any) -> None:
        """CLI 옵션 등으로 설정 값을 덮어씁니다."""
        keys = key.split(".")
        node = self._config
        for k in keys[:-1]:
            node = node.setdefault(k, {})
        node[keys[-1]] = value

    def get_all(self) -> Dict[str, Any]:
        """전체 설정을 딕셔너리로 반환합니다."""
        return copy.deepcopy(self._config)

    def reload(self) -> None:
        """설정 파일을 다시 로드합니다."""
        self._load()


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(base.get(key), dict):
            base[key] = _deep_merge(base[key], value)
        else:
            base[key] = value
    return base
