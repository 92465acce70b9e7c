"""Evaluate every grid point of a figure sweep."""
from __future__ import annotations

from smart_workflow import TaskContext, TaskError, TaskResult

from ecs.config.sweep import SweepSpec
from ecs.pipeline.tasks.base import QuietTaskBase
from ecs.pipeline.tasks.nodes.grid.task import GRID_POINTS_RESOURCE, SWEEP_SPEC_RESOURCE
from ecs.pipeline.tasks.summary import EVALUATION_STATS_RESOURCE, store_stage_stats
from .engine import FIGURE_ENGINES, BaseFigureEngine, load_figure_engine

FIGURE_ROWS_RESOURCE = "figure_rows"
FIGURE_COLUMNS_RESOURCE = "figure_columns"


class FigureEvaluationTask(QuietTaskBase):
    name = "figure_evaluation"
    stats_resource = EVALUATION_STATS_RESOURCE

    def __init__(self, context: TaskContext | None = None) -> None:
        _ = context
        self._engine: BaseFigureEngine | None = None

    def run(self, context: TaskContext) -> TaskResult:
        spec = context.get_resource(SWEEP_SPEC_RESOURCE)
        points = context.get_resource(GRID_POINTS_RESOURCE)
        if not isinstance(spec, SweepSpec) or points is None:
            raise TaskError("figure_evaluation 節點缺少 sweep_spec 或 grid_points 資源")
        if self._engine is None:
            self._engine = self._init_engine(spec, context)

        result = self._engine.evaluate_grid(points, context, workers=spec.workers)
        store_stage_stats(
            context,
            EVALUATION_STATS_RESOURCE,
            {
                "points": len(points),
                "rows": len(result.rows),
                "skipped": result.skipped,
                "failed": result.failed,
                "workers": spec.workers,
            },
        )
        if result.failed:
            raise TaskError(f"圖 {spec.figure} 有 {result.failed} 個網格點計算失敗：{result.errors[0]}")

        context.set_resource(FIGURE_ROWS_RESOURCE, result.rows)
        context.set_resource(FIGURE_COLUMNS_RESOURCE, tuple(self._engine.columns))
        context.logger.debug(
            "完成節點：圖 %s 計算 %d 列，略過 %d 點",
            spec.figure,
            len(result.rows),
            result.skipped,
        )
        return TaskResult(status="evaluation_done", payload={"rows": len(result.rows), "skipped": result.skipped})

    def _init_engine(self, spec: SweepSpec, context: TaskContext) -> BaseFigureEngine:
        cfg = getattr(context.config, "evaluation", None)
        engine_path = getattr(cfg, "engine_class", None) if cfg else None
        default_cls = FIGURE_ENGINES[spec.figure]
        return self._init_plugin(
            plugin_name="Figure Engine",
            loader=load_figure_engine,
            plugin_path=engine_path,
            default_factory=lambda: default_cls(context=context),
            init_kwargs={"context": context},
        )
