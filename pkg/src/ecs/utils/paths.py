"""Project and config roots used to resolve relative sweep and output paths.

The core root is where ``main.py`` lives. The config root defaults to it and
anchors every relative path found in sweep files or on the command line.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Dict, Tuple

# root kind -> env keys (first one is written back by the setters)
_ROOT_ENV: Dict[str, Tuple[str, ...]] = {
    "core": ("ECS_CORE_ROOT",),
    "config": ("ECS_CONFIG_ROOT", "CONFIG_ROOT"),
}
_ROOTS: Dict[str, Path] = {}


def _set_root(kind: str, path: str | Path) -> Path:
    resolved = Path(path).expanduser().resolve()
    _ROOTS[kind] = resolved
    os.environ[_ROOT_ENV[kind][0]] = str(resolved)
    return resolved


def _env_root(kind: str) -> Path | None:
    for key in _ROOT_ENV[kind]:
        value = os.getenv(key, "").strip()
        if value:
            return Path(value).expanduser().resolve()
    return None


def set_core_root(path: str | Path) -> None:
    _set_root("core", path)


def set_config_root(path: str | Path) -> None:
    _set_root("config", path)


def get_core_root() -> Path:
    if "core" not in _ROOTS:
        # src/ecs/utils/paths.py -> repo root
        _ROOTS["core"] = _env_root("core") or Path(__file__).resolve().parents[3]
    return _ROOTS["core"]


def get_config_root() -> Path:
    if "config" not in _ROOTS:
        _ROOTS["config"] = _env_root("config") or get_core_root()
    return _ROOTS["config"]


def resolve_path(raw_path: str | Path) -> Path:
    """Absolute paths pass through; relative ones are anchored at the config root."""
    path = Path(raw_path).expanduser()
    if path.is_absolute():
        return path
    return (get_config_root() / path).resolve()


__all__ = ["get_config_root", "get_core_root", "resolve_path", "set_config_root", "set_core_root"]
