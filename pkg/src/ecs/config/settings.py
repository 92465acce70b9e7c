"""Application configuration loaded from environment variables."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field

_LOG_LEVELS = {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"}


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() not in {"0", "false", "no", "off"}


def _env_path(name: str) -> str | None:
    raw = os.getenv(name)
    return raw.strip() if raw and raw.strip() else None


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.strip())
    except ValueError as exc:
        raise RuntimeError(f"{name} 必須是整數：{raw!r}") from exc


@dataclass
class EvaluationConfig:
    engine_class: str | None = field(default_factory=lambda: _env_path("FIGURE_ENGINE_CLASS"))


@dataclass
class OutputConfig:
    engine_class: str | None = field(default_factory=lambda: _env_path("OUTPUT_ENGINE_CLASS"))


@dataclass
class AppConfig:
    """Centralized configuration for sweep runs and the CLI."""

    log_level: str = field(default_factory=lambda: os.getenv("LOG_LEVEL", "INFO"))
    workers: int = field(default_factory=lambda: _env_int("ECS_WORKERS", 1))
    sweep_config_path: str | None = field(default_factory=lambda: _env_path("SWEEP_CONFIG_PATH"))
    config_summary: bool = field(default_factory=lambda: _env_bool("CONFIG_SUMMARY", False))
    monitor_endpoint: str | None = field(default_factory=lambda: _env_path("MONITOR_ENDPOINT"))
    monitor_service_name: str = field(
        default_factory=lambda: (
            os.getenv("ECS_MONITOR_SERVICE_NAME")
            or os.getenv("MONITOR_SERVICE_NAME")
            or "ecs-sim"
        ).strip()
    )
    evaluation: EvaluationConfig = field(default_factory=EvaluationConfig)
    output: OutputConfig = field(default_factory=OutputConfig)


def load_config() -> AppConfig:
    """Build :class:`AppConfig` from the current environment."""
    config = AppConfig()
    config.log_level = config.log_level.strip().upper()
    if config.log_level not in _LOG_LEVELS:
        raise RuntimeError(f"LOG_LEVEL 無效：{config.log_level}")
    if config.workers < 1:
        raise RuntimeError(f"ECS_WORKERS 必須至少為 1：{config.workers}")
    return config


def setup_logging(level: str = "INFO") -> None:
    level_value = getattr(logging, level.upper(), logging.INFO)
    logging.basicConfig(
        level=level_value,
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
    )


def log_config_summary(config: AppConfig, logger: logging.Logger) -> None:
    logger.info(
        (
            "config summary:\n"
            "- log_level: %s\n"
            "- workers: %s\n"
            "- sweep_config: %s\n"
            "- figure_engine: %s\n"
            "- output_engine: %s"
        ),
        config.log_level,
        config.workers,
        config.sweep_config_path or "-",
        config.evaluation.engine_class or "default",
        config.output.engine_class or "default",
    )


__all__ = [
    "AppConfig",
    "EvaluationConfig",
    "OutputConfig",
    "load_config",
    "log_config_summary",
    "setup_logging",
]
