"""Resolve ``FIGURE_ENGINE_CLASS`` / ``OUTPUT_ENGINE_CLASS`` style paths to engine classes."""
from __future__ import annotations

import inspect
from importlib import import_module
from typing import Type, TypeVar

from smart_workflow import TaskError

T = TypeVar("T")


def split_class_path(path: str) -> tuple[str, str] | None:
    """``pkg.mod:Class`` or ``pkg.mod.Class`` -> (module, class)."""
    separator = ":" if ":" in path else "."
    module_name, _, name = path.strip().rpartition(separator)
    if not module_name or not name:
        return None
    return module_name, name


def class_name(path: str | None, default: str) -> str:
    if not path:
        return default
    parts = split_class_path(path)
    return parts[1] if parts else path


def load_plugin_class(path: str, base_class: Type[T], plugin_name: str) -> Type[T]:
    """Import a concrete subclass of ``base_class``; import errors propagate to the caller."""
    parts = split_class_path(path)
    if parts is None:
        raise TaskError(f"{plugin_name} 載入失敗：路徑格式錯誤：{path}")
    module_name, name = parts

    attr = getattr(import_module(module_name), name, None)
    if not inspect.isclass(attr):
        raise TaskError(f"{plugin_name} 載入失敗：類別不存在：{module_name}.{name}")
    if not issubclass(attr, base_class):
        raise TaskError(f"{plugin_name} 載入失敗：類別不相容：{name} 需繼承 {base_class.__name__}")
    if inspect.isabstract(attr):
        raise TaskError(f"{plugin_name} 載入失敗：{name} 是抽象類別")
    return attr


__all__ = ["class_name", "load_plugin_class", "split_class_path"]
