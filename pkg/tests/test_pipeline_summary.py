from __future__ import annotations

import logging
from types import SimpleNamespace

import pytest
from smart_workflow import TaskError, TaskResult

from ecs.config.sweep import SweepSpec
from ecs.pipeline.tasks.base import QuietTaskBase
from ecs.pipeline.tasks.nodes.grid.task import SWEEP_SPEC_RESOURCE
from ecs.pipeline.tasks.pipelines import FigurePipelineTask
from ecs.pipeline.tasks.summary import (
    EVALUATION_STATS_RESOURCE,
    GRID_STATS_RESOURCE,
    OUTPUT_STATS_RESOURCE,
    render_sweep_summary,
    reset_sweep_summary,
    store_stage_stats,
)


class DummyContext:
    def __init__(self, resources: dict[str, object] | None = None) -> None:
        self._resources = dict(resources or {})
        self.logger = logging.getLogger("sweep-summary-test")
        self.config = SimpleNamespace(workers=1)
        self.reported_success: list[str] = []
        self.reported_failure: list[tuple[str, str | None]] = []

    def get_resource(self, key: str):
        return self._resources.get(key)

    def set_resource(self, key: str, value) -> None:  # noqa: ANN001
        self._resources[key] = value

    def report_success(self, name: str) -> None:
        self.reported_success.append(name)

    def report_failure(self, name: str, detail: str | None = None) -> None:
        self.reported_failure.append((name, detail))


class DummyTask(QuietTaskBase):
    name = "dummy_task"
    stats_resource = GRID_STATS_RESOURCE

    def run(self, context: DummyContext) -> TaskResult:
        store_stage_stats(context, GRID_STATS_RESOURCE, {"points": 3})
        return TaskResult(status="done")


class FailingTask(QuietTaskBase):
    name = "failing_task"

    def run(self, context: DummyContext) -> TaskResult:
        raise TaskError("boom")


class DummyNode:
    def __init__(
        self,
        resource_key: str,
        values: dict[str, int],
        payload: dict[str, object] | None = None,
    ) -> None:
        self._resource_key = resource_key
        self._values = values
        self._payload = payload

    def execute(self, context: DummyContext) -> TaskResult | None:
        store_stage_stats(context, self._resource_key, self._values)
        if self._payload is None:
            return None
        return TaskResult(status="node_done", payload=self._payload)


def build_context(tmp_path) -> DummyContext:
    spec = SweepSpec(figure=7, eta_values=[1.0], step=0.25, out=str(tmp_path / "fig7.csv"))
    return DummyContext({SWEEP_SPEC_RESOURCE: spec})


def test_render_sweep_summary_outputs_table(tmp_path) -> None:
    context = build_context(tmp_path)
    reset_sweep_summary(context)
    store_stage_stats(context, GRID_STATS_RESOURCE, {"points": 300})
    store_stage_stats(
        context,
        EVALUATION_STATS_RESOURCE,
        {"points": 300, "rows": 298, "skipped": 2, "failed": 0, "workers": 4},
    )
    store_stage_stats(context, OUTPUT_STATS_RESOURCE, {"rows": 298, "elapsed_ms": 1.5})

    summary = render_sweep_summary(context, 3)
    summary_lines = summary.splitlines()

    assert summary_lines[0] == "sweep_summary figure=3 status=ok"
    assert summary_lines[1].startswith("stage") and "| points" in summary_lines[1]
    evaluation_line = next(line for line in summary_lines if line.startswith("evaluation"))
    cells = [cell.strip() for cell in evaluation_line.split("|")]
    assert cells[:6] == ["evaluation", "300", "298", "2", "0", "4"]
    output_line = next(line for line in summary_lines if line.startswith("output"))
    assert "1.50" in output_line


def test_store_stage_stats_merges_values(tmp_path) -> None:
    context = build_context(tmp_path)
    store_stage_stats(context, GRID_STATS_RESOURCE, {"points": 5})
    store_stage_stats(context, GRID_STATS_RESOURCE, {"elapsed_ms": 2.0})

    assert context.get_resource(GRID_STATS_RESOURCE) == {"points": 5, "elapsed_ms": 2.0}


def test_quiet_task_base_records_elapsed_and_success(tmp_path, caplog) -> None:
    context = build_context(tmp_path)
    context.logger.setLevel(logging.DEBUG)
    task = DummyTask()

    with caplog.at_level(logging.INFO, logger="sweep-summary-test"):
        result = task.execute(context)

    assert result.status == "done"
    assert "開始任務：dummy_task" not in caplog.text
    assert context.reported_success == ["dummy_task"]
    stats = context.get_resource(GRID_STATS_RESOURCE)
    assert stats["points"] == 3
    assert stats["elapsed_ms"] >= 0.0


def test_quiet_task_base_reports_failure(tmp_path) -> None:
    context = build_context(tmp_path)

    with pytest.raises(TaskError, match="boom"):
        FailingTask().execute(context)

    assert context.reported_failure == [("failing_task", "boom")]


def test_figure_pipeline_logs_one_summary_and_merges_payloads(tmp_path, caplog) -> None:
    context = build_context(tmp_path)
    context.logger.setLevel(logging.INFO)
    pipeline = FigurePipelineTask(
        context,
        nodes=[
            DummyNode(GRID_STATS_RESOURCE, {"points": 4}, payload={"points": 4}),
            DummyNode(
                EVALUATION_STATS_RESOURCE,
                {"points": 4, "rows": 2, "skipped": 2, "failed": 0, "workers": 1},
                payload={"rows": 2, "skipped": 2},
            ),
            DummyNode(OUTPUT_STATS_RESOURCE, {"rows": 2}),
        ],
    )

    with caplog.at_level(logging.INFO, logger="sweep-summary-test"):
        result = pipeline.execute(context)

    assert result.status == "figure_pipeline_done"
    assert result.payload == {"points": 4, "rows": 2, "skipped": 2}
    assert caplog.text.count("sweep_summary figure=7 status=ok") == 1


def test_figure_pipeline_logs_error_summary_and_reraises(tmp_path, caplog) -> None:
    context = build_context(tmp_path)
    context.logger.setLevel(logging.INFO)
    pipeline = FigurePipelineTask(
        context,
        nodes=[DummyNode(GRID_STATS_RESOURCE, {"points": 4}), FailingTask()],
    )

    with caplog.at_level(logging.INFO, logger="sweep-summary-test"):
        with pytest.raises(TaskError, match="boom"):
            pipeline.execute(context)

    assert "sweep_summary figure=7 status=error" in caplog.text
    assert ("figure_pipeline", "boom") in context.reported_failure


def test_describe_flow_names_default_engines(tmp_path) -> None:
    spec = SweepSpec(figure=4, p_values=[0.3], eta_step=0.5, out=str(tmp_path / "fig4.json"), format="json")
    config = SimpleNamespace(evaluation=SimpleNamespace(engine_class=None), output=SimpleNamespace(engine_class=None))

    flow = FigurePipelineTask.describe_flow(config, spec)

    assert flow == (
        "GridTask -> FigureEvaluationTask(engine=Figure4Engine, workers=1) -> "
        "FigureOutputTask(engine=JsonOutputEngine)"
    )
