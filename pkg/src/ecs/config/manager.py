"""YAML/JSON file loading for sweep definitions and other file-backed settings."""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, Generic, TextIO, TypeVar

import yaml

LOGGER = logging.getLogger(__name__)

TConfig = TypeVar("TConfig")
ConfigPreprocessor = Callable[[Dict[str, Any], Path], Dict[str, Any]]

_READERS: Dict[str, Callable[[TextIO], Any]] = {
    ".yaml": yaml.safe_load,
    ".yml": yaml.safe_load,
    ".json": json.load,
}


class ConfigManager(Generic[TConfig]):
    """File values, then non-None ``overrides``, then ``preprocessors``, then validation into ``config_cls``."""

    def __init__(
        self,
        config_path: str | Path,
        config_cls: type[TConfig],
        *,
        preprocessors: tuple[ConfigPreprocessor, ...] = (),
        overrides: Dict[str, Any] | None = None,
    ) -> None:
        self.config_path = Path(config_path).expanduser().resolve()
        self.config_cls = config_cls
        self.preprocessors = preprocessors
        self.overrides = {key: value for key, value in (overrides or {}).items() if value is not None}
        self._config: TConfig | None = None

    @property
    def config(self) -> TConfig:
        if self._config is None:
            return self.load()
        return self._config

    def load(self) -> TConfig:
        merged = {**self.read(), **self.overrides}
        if self.overrides:
            LOGGER.debug("%s: 命令列覆寫 %s", self.config_path.name, sorted(self.overrides))
        for preprocessor in self.preprocessors:
            merged = preprocessor(dict(merged), self.config_path)
            if not isinstance(merged, dict):
                raise TypeError("設定前處理器必須回傳 dict")
        self._config = self._validate(merged)
        return self._config

    def read(self) -> Dict[str, Any]:
        """Raw mapping stored in the file; an empty file is an empty mapping."""
        if not self.config_path.is_file():
            raise FileNotFoundError(f"設定檔不存在：{self.config_path}")
        reader = _READERS.get(self.config_path.suffix.lower())
        if reader is None:
            raise ValueError(f"不支援的設定檔格式：{self.config_path.suffix}")
        with self.config_path.open("r", encoding="utf-8") as file_obj:
            raw = reader(file_obj)
        if raw is None:
            return {}
        if not isinstance(raw, dict):
            raise ValueError(f"設定內容必須是物件型別：{self.config_path}")
        return raw

    def _validate(self, values: Dict[str, Any]) -> TConfig:
        model_validate = getattr(self.config_cls, "model_validate", None)
        if callable(model_validate):
            return model_validate(values)
        return self.config_cls(**values)


__all__ = ["ConfigManager", "ConfigPreprocessor"]
