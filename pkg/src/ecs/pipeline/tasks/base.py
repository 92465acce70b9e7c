"""Task helpers shared by the sweep nodes."""
from __future__ import annotations

import time
from typing import Any, Callable, Mapping, Type, TypeVar

from smart_workflow import BaseTask, TaskContext, TaskError, TaskResult

T = TypeVar("T")


class QuietTaskBase(BaseTask):
    """Base task that reports success/failure on the context without a start log.

    Subclasses may set ``stats_resource``; the wall time of each run is then
    merged into that stage's stats as ``elapsed_ms``.
    """

    stats_resource: str | None = None

    def execute(self, context: TaskContext) -> TaskResult:
        started_at = time.perf_counter()
        try:
            result = self.run(context)
        except Exception as exc:  # noqa: BLE001
            context.report_failure(self.name, detail=str(exc))
            raise
        finally:
            self._record_elapsed(context, started_at)

        result = result or TaskResult()
        context.report_success(self.name)
        return result

    def _record_elapsed(self, context: TaskContext, started_at: float) -> None:
        if not self.stats_resource:
            return
        stats = context.get_resource(self.stats_resource)
        stats = dict(stats) if isinstance(stats, dict) else {}
        stats["elapsed_ms"] = (time.perf_counter() - started_at) * 1000.0
        context.set_resource(self.stats_resource, stats)

    def _init_plugin(
        self,
        *,
        plugin_name: str,
        loader: Callable[[str], Type[T]] | None = None,
        plugin_path: str | None = None,
        plugin_cls: Type[T] | None = None,
        default_factory: Callable[[], T] | None = None,
        init_kwargs: Mapping[str, Any] | None = None,
    ) -> T:
        """Build a plugin from a class, a ``module:Class`` path or a default factory."""
        if plugin_cls is None:
            if not plugin_path:
                if default_factory is None:
                    raise TaskError(f"{plugin_name} 初始化失敗：未提供路徑")
                try:
                    return default_factory()
                except TaskError:
                    raise
                except Exception as exc:  # pylint: disable=broad-except
                    raise TaskError(f"{plugin_name} 初始化失敗：預設實作失敗（{exc}）") from exc
            if loader is None:
                raise TaskError(f"{plugin_name} 初始化失敗：未提供載入器")
            try:
                plugin_cls = loader(plugin_path)
            except TaskError:
                raise
            except Exception as exc:  # pylint: disable=broad-except
                raise TaskError(f"{plugin_name} 載入失敗：{plugin_path}（{exc}）") from exc
            plugin_label = plugin_path
        else:
            plugin_label = getattr(plugin_cls, "__name__", plugin_name)

        try:
            try:
                return plugin_cls(**dict(init_kwargs or {}))
            except TypeError:
                return plugin_cls()
        except Exception as exc:  # pylint: disable=broad-except
            raise TaskError(f"{plugin_name} 初始化失敗：{plugin_label}（{exc}）") from exc
