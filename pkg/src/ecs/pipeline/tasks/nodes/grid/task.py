"""Expand the sweep definition into ordered grid points."""
from __future__ import annotations

from smart_workflow import TaskContext, TaskError, TaskResult

from ecs.config.sweep import EmptyGrid, SweepSpec
from ecs.pipeline.tasks.base import QuietTaskBase
from ecs.pipeline.tasks.summary import GRID_STATS_RESOURCE, store_stage_stats

SWEEP_SPEC_RESOURCE = "sweep_spec"
GRID_POINTS_RESOURCE = "grid_points"


class GridTask(QuietTaskBase):
    name = "grid"
    stats_resource = GRID_STATS_RESOURCE

    def __init__(self, context: TaskContext | None = None) -> None:
        _ = context

    def run(self, context: TaskContext) -> TaskResult:
        spec = context.get_resource(SWEEP_SPEC_RESOURCE)
        if not isinstance(spec, SweepSpec):
            raise TaskError("grid 節點缺少 sweep_spec 資源")
        try:
            points = spec.grid()
        except EmptyGrid as exc:
            raise TaskError(str(exc)) from exc
        context.set_resource(GRID_POINTS_RESOURCE, points)
        store_stage_stats(context, GRID_STATS_RESOURCE, {"points": len(points)})
        context.logger.debug("完成節點：網格展開，圖 %s 共 %d 個點", spec.figure, len(points))
        return TaskResult(status="grid_done", payload={"points": len(points)})
