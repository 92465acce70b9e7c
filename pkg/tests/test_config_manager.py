from __future__ import annotations

import logging
from pathlib import Path

import pytest
from pydantic import BaseModel

from ecs.config.manager import ConfigManager
from ecs.config.settings import load_config, log_config_summary
from ecs.utils.paths import get_config_root, resolve_path


class PointSweep(BaseModel):
    label: str = "sweep"
    out: str
    values: list[float] = []


def _out_next_to_file(raw_config: dict[str, object], config_path: Path) -> dict[str, object]:
    processed = dict(raw_config)
    out = processed.get("out")
    if isinstance(out, str) and not Path(out).is_absolute():
        processed["out"] = str((config_path.parent / out).resolve())
    return processed


def test_yaml_sweep_is_preprocessed_and_cached(tmp_path) -> None:
    config_path = tmp_path / "sweeps" / "points.yaml"
    config_path.parent.mkdir()
    config_path.write_text("label: coarse\nout: out/points.csv\nvalues: [0.1, 0.5]\n", encoding="utf-8")

    manager = ConfigManager(config_path, PointSweep, preprocessors=(_out_next_to_file,))
    config = manager.load()

    assert config.label == "coarse"
    assert config.values == [0.1, 0.5]
    assert config.out == str((config_path.parent / "out" / "points.csv").resolve())
    assert manager.config is config


def test_json_overrides_skip_none_values(tmp_path, caplog) -> None:
    config_path = tmp_path / "points.json"
    config_path.write_text('{"label": "from-file", "out": "a.csv", "values": [0.2]}', encoding="utf-8")

    manager = ConfigManager(config_path, PointSweep, overrides={"label": "from-cli", "values": None})
    with caplog.at_level(logging.DEBUG, logger="ecs.config.manager"):
        config = manager.load()

    assert config.label == "from-cli"
    assert config.values == [0.2]
    assert "命令列覆寫 ['label']" in caplog.text


def test_preprocessors_see_overrides(tmp_path) -> None:
    config_path = tmp_path / "points.yaml"
    config_path.write_text("out: file.csv\n", encoding="utf-8")

    manager = ConfigManager(config_path, PointSweep, preprocessors=(_out_next_to_file,), overrides={"out": "cli.csv"})

    assert manager.load().out == str((tmp_path / "cli.csv").resolve())


def test_empty_file_reads_as_empty_mapping(tmp_path) -> None:
    config_path = tmp_path / "empty.yaml"
    config_path.write_text("", encoding="utf-8")

    manager = ConfigManager(config_path, PointSweep, overrides={"out": "x.csv"})

    assert manager.read() == {}
    assert manager.load().label == "sweep"


def test_missing_file(tmp_path) -> None:
    with pytest.raises(FileNotFoundError, match="設定檔不存在"):
        ConfigManager(tmp_path / "missing.yaml", PointSweep).load()


def test_unknown_suffix(tmp_path) -> None:
    config_path = tmp_path / "points.toml"
    config_path.write_text("out = 'x'", encoding="utf-8")

    with pytest.raises(ValueError, match="不支援的設定檔格式"):
        ConfigManager(config_path, PointSweep).load()


def test_non_mapping_content(tmp_path) -> None:
    config_path = tmp_path / "points.yaml"
    config_path.write_text("- just\n- a list\n", encoding="utf-8")

    with pytest.raises(ValueError, match="設定內容必須是物件型別"):
        ConfigManager(config_path, PointSweep).load()


def test_bad_preprocessor_result(tmp_path) -> None:
    config_path = tmp_path / "points.yaml"
    config_path.write_text("out: x.csv\n", encoding="utf-8")

    with pytest.raises(TypeError, match="前處理器必須回傳 dict"):
        ConfigManager(config_path, PointSweep, preprocessors=(lambda raw, path: None,)).load()  # noqa: ARG005


def test_resolve_path_anchors_relative_paths(config_root) -> None:
    assert get_config_root() == config_root.resolve()
    assert resolve_path("out/fig.csv") == (config_root / "out" / "fig.csv").resolve()
    assert resolve_path(config_root / "abs.csv") == config_root / "abs.csv"



def test_load_config_reads_environment(monkeypatch) -> None:
    monkeypatch.setenv("LOG_LEVEL", " debug ")
    monkeypatch.setenv("ECS_WORKERS", "4")
    monkeypatch.setenv("FIGURE_ENGINE_CLASS", "custom.engines:MyEngine")
    monkeypatch.setenv("CONFIG_SUMMARY", "1")
    monkeypatch.delenv("OUTPUT_ENGINE_CLASS", raising=False)

    config = load_config()

    assert config.log_level == "DEBUG"
    assert config.workers == 4
    assert config.evaluation.engine_class == "custom.engines:MyEngine"
    assert config.output.engine_class is None
    assert config.config_summary is True


def test_load_config_rejects_bad_workers(monkeypatch) -> None:
    monkeypatch.setenv("ECS_WORKERS", "many")

    with pytest.raises(RuntimeError, match="ECS_WORKERS"):
        load_config()


def test_load_config_rejects_zero_workers(monkeypatch) -> None:
    monkeypatch.setenv("ECS_WORKERS", "0")

    with pytest.raises(RuntimeError, match="ECS_WORKERS 必須至少為 1"):
        load_config()


def test_load_config_rejects_unknown_log_level(monkeypatch) -> None:
    monkeypatch.setenv("LOG_LEVEL", "chatty")

    with pytest.raises(RuntimeError, match="LOG_LEVEL"):
        load_config()


def test_log_config_summary_lists_engines(monkeypatch, caplog) -> None:
    monkeypatch.delenv("FIGURE_ENGINE_CLASS", raising=False)
    monkeypatch.setenv("OUTPUT_ENGINE_CLASS", "custom.writers:Parquet")
    logger = logging.getLogger("config-summary-test")

    with caplog.at_level(logging.INFO, logger="config-summary-test"):
        log_config_summary(load_config(), logger)

    assert "- figure_engine: default" in caplog.text
    assert "- output_engine: custom.writers:Parquet" in caplog.text
