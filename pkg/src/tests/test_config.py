"""
Config 로드, 병합, 환경 변수 치환
"""

import json
from pathlib import Path

import pytest

from fractrace.core.config import Config


class TestDefaults:
    def test_dot_notation(self) -> None:
        config = Config()
        assert config.get("capacity.grid_mode") == "scaled"
        assert config.get("capacity.max_iter") == 500

    def test_missing_key_returns_default(self) -> None:
        assert Config().get("capacity.nope", 7) == 7
        assert Config().get("nope.deeper") is None

    def test_set_overrides(self) -> None:
        config = Config()
        config.set("trace.trials", 3)
        assert config.get("trace.trials") == 3
        assert config.get_all()["trace"]["trials"] == 3


class TestFileLoading:
    def test_yaml_is_merged_over_defaults(self, tmp_path: Path) -> None:
        path = tmp_path / "config.yaml"
        path.write_text("capacity:\n  max_iter: 7\n", encoding="utf-8")
        config = Config(path)
        assert config.get("capacity.max_iter") == 7
        assert config.get("capacity.tol") == 1e-10

    def test_json_is_accepted(self, tmp_path: Path) -> None:
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"seed": 5, "kernel": {"freq_nodes": 256}}), encoding="utf-8")
        config = Config(path)
        assert config.get("seed") == 5
        assert config.get("kernel.freq_nodes") == 256

    def test_env_substitution(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("FRACTRACE_TEST_OUT", "/tmp/fractrace-env")
        monkeypatch.delenv("FRACTRACE_UNSET_VAR", raising=False)
        path = tmp_path / "config.yaml"
        path.write_text(
            'output:\n  dir: "${FRACTRACE_TEST_OUT}"\nsuite:\n  label: "${FRACTRACE_UNSET_VAR}"\n',
            encoding="utf-8",
        )
        config = Config(path)
        assert config.get("output.dir") == "/tmp/fractrace-env"
        assert config.get("suite.label") == "${FRACTRACE_UNSET_VAR}"

    def test_reload_picks_up_changes(self, tmp_path: Path) -> None:
        path = tmp_path / "config.yaml"
        path.write_text("seed: 1\n", encoding="utf-8")
        config = Config(path)
        path.write_text("seed: 2\n", encoding="utf-8")
        config.reload()
        assert config.get("seed") == 2

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            Config(tmp_path / "absent.yaml")

    def test_top_level_must_be_mapping(self, tmp_path: Path) -> None:
        path = tmp_path / "config.yaml"
        path.write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(ValueError):
            Config(path)
