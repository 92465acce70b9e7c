"""Write the evaluated rows of a sweep to its output file."""
from __future__ import annotations

from smart_workflow import TaskContext, TaskError, TaskResult

from ecs.config.sweep import SweepSpec
from ecs.pipeline.tasks.base import QuietTaskBase
from ecs.pipeline.tasks.nodes.evaluation.task import FIGURE_COLUMNS_RESOURCE, FIGURE_ROWS_RESOURCE
from ecs.pipeline.tasks.nodes.grid.task import SWEEP_SPEC_RESOURCE
from ecs.pipeline.tasks.summary import OUTPUT_STATS_RESOURCE, store_stage_stats
from .engine import OUTPUT_ENGINES, BaseOutputEngine, load_output_engine


class FigureOutputTask(QuietTaskBase):
    name = "figure_output"
    stats_resource = OUTPUT_STATS_RESOURCE

    def __init__(self, context: TaskContext | None = None) -> None:
        _ = context
        self._engine: BaseOutputEngine | None = None

    def run(self, context: TaskContext) -> TaskResult:
        spec = context.get_resource(SWEEP_SPEC_RESOURCE)
        rows = context.get_resource(FIGURE_ROWS_RESOURCE)
        columns = context.get_resource(FIGURE_COLUMNS_RESOURCE)
        if not isinstance(spec, SweepSpec) or rows is None or columns is None:
            raise TaskError("figure_output 節點缺少計算結果")
        if self._engine is None:
            self._engine = self._init_engine(spec, context)

        result = self._engine.write(spec.output_path, spec.figure, columns, rows)
        store_stage_stats(context, OUTPUT_STATS_RESOURCE, {"rows": result.rows})
        context.logger.debug("完成節點：輸出 %d 列至 %s", result.rows, result.path)
        return TaskResult(status="output_done", payload={"path": str(result.path), "rows": result.rows})

    def _init_engine(self, spec: SweepSpec, context: TaskContext) -> BaseOutputEngine:
        cfg = getattr(context.config, "output", None)
        engine_path = getattr(cfg, "engine_class", None) if cfg else None
        default_cls = OUTPUT_ENGINES[spec.format]
        return self._init_plugin(
            plugin_name="Output Engine",
            loader=load_output_engine,
            plugin_path=engine_path,
            default_factory=lambda: default_cls(context=context),
            init_kwargs={"context": context},
        )
