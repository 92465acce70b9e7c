"""Figure sweep pipeline: grid -> evaluation -> output."""
from __future__ import annotations

from typing import List

from smart_workflow import BaseTask, TaskContext, TaskResult

from ecs.config.sweep import SweepSpec
from ecs.pipeline.tasks.base import QuietTaskBase
from ecs.pipeline.tasks.nodes.evaluation.engine import FIGURE_ENGINES
from ecs.pipeline.tasks.nodes.evaluation.task import FigureEvaluationTask
from ecs.pipeline.tasks.nodes.grid.task import SWEEP_SPEC_RESOURCE, GridTask
from ecs.pipeline.tasks.nodes.output.engine import OUTPUT_ENGINES
from ecs.pipeline.tasks.nodes.output.task import FigureOutputTask
from ecs.pipeline.tasks.plugin_loader import class_name
from ecs.pipeline.tasks.summary import render_sweep_summary, reset_sweep_summary


class FigurePipelineTask(QuietTaskBase):
    name = "figure_pipeline"

    def __init__(self, context: TaskContext | None = None, nodes: List[BaseTask] | None = None) -> None:
        self.pipeline_nodes: List[BaseTask] = nodes if nodes is not None else self._build_nodes(context)

    def run(self, context: TaskContext) -> TaskResult:
        reset_sweep_summary(context)
        spec = context.get_resource(SWEEP_SPEC_RESOURCE)
        figure = spec.figure if isinstance(spec, SweepSpec) else "-"
        payload: dict[str, object] = {}
        try:
            for node in self.pipeline_nodes:
                node_payload = getattr(node.execute(context), "payload", None)
                if isinstance(node_payload, dict):
                    payload.update(node_payload)
        except Exception:
            context.logger.info(render_sweep_summary(context, figure, status="error"))
            raise
        context.logger.info(render_sweep_summary(context, figure, status="ok"))
        return TaskResult(status="figure_pipeline_done", payload=payload)

    def _build_nodes(self, context: TaskContext | None) -> List[BaseTask]:
        return [
            GridTask(context),
            FigureEvaluationTask(context),
            FigureOutputTask(context),
        ]

    @classmethod
    def describe_flow(cls, config, spec: SweepSpec | None = None) -> str:
        default_engine = FIGURE_ENGINES[spec.figure].__name__ if spec else "Figure<N>Engine"
        default_writer = OUTPUT_ENGINES[spec.format].__name__ if spec else "CsvOutputEngine"
        figure_engine = class_name(
            getattr(getattr(config, "evaluation", None), "engine_class", None),
            default_engine,
        )
        output_engine = class_name(
            getattr(getattr(config, "output", None), "engine_class", None),
            default_writer,
        )
        workers = spec.workers if spec else getattr(config, "workers", 1)
        return (
            "GridTask -> "
            f"FigureEvaluationTask(engine={figure_engine}, workers={workers}) -> "
            f"FigureOutputTask(engine={output_engine})"
        )
