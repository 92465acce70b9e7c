"""Figure evaluation engines: one grid point in, one output row out."""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple, Type

from smart_workflow import TaskContext

from ecs.config.sweep import GridPoint
from ecs.core.coherent_algebra import Superposition, coefficient_matrix, mode_bases
from ecs.core.entanglement_measures import c3_polynomial, negativity, pure_concurrence, wootters_concurrence
from ecs.core.errors import DomainError, EcsError, GramIllConditioned, NegativeRadicand
from ecs.core.monogamy import monogamy_closed_forms
from ecs.core.optics_channels import DEFAULT_WEIGHTS, DensityMatrix, decohered_ecs, make_ecs
from ecs.pipeline.tasks.plugin_loader import load_plugin_class

Row = Tuple[float, ...]

SKIPPABLE_ERRORS = (GramIllConditioned, DomainError, NegativeRadicand)


@dataclass
class EvaluationResult:
    rows: List[Row] = field(default_factory=list)
    skipped: int = 0
    failed: int = 0
    errors: List[str] = field(default_factory=list)


class BaseFigureEngine(ABC):
    """Evaluate the rows of one figure; subclasses define ``figure`` and ``columns``."""

    figure: int = 0
    columns: Tuple[str, ...] = ()

    def __init__(self, context: TaskContext | None = None) -> None:
        self._context = context

    @abstractmethod
    def evaluate(self, point: GridPoint) -> Row:
        """Compute the row for ``point`` (raises on domain problems)."""

    def evaluate_grid(self, points: Sequence[GridPoint], context: TaskContext, workers: int = 1) -> EvaluationResult:
        """Evaluate ``points`` in order; skippable domain errors drop the row with a warning."""
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(self._safe_evaluate, points))
        else:
            outcomes = [self._safe_evaluate(point) for point in points]

        result = EvaluationResult()
        for point, (row, error, skippable) in zip(points, outcomes):
            if row is not None:
                result.rows.append(row)
            elif skippable:
                result.skipped += 1
                context.logger.warning("略過網格點 %s：%s", _describe_point(point), error)
            else:
                result.failed += 1
                result.errors.append(f"{_describe_point(point)}: {error}")
        return result

    def _safe_evaluate(self, point: GridPoint) -> Tuple[Row | None, str | None, bool]:
        try:
            return self.evaluate(point), None, False
        except SKIPPABLE_ERRORS as exc:
            return None, f"{type(exc).__name__}: {exc}", True
        except EcsError as exc:
            return None, f"{type(exc).__name__}: {exc}", False


def _describe_point(point: GridPoint) -> str:
    return " ".join(f"{key}={value:g}" for key, value in point.items())


def _pure_concurrence_of(state: Superposition) -> float:
    basis1, basis2 = mode_bases(state)
    return pure_concurrence(coefficient_matrix(state, basis1, basis2))


class Figure2Engine(BaseFigureEngine):
    """Lossless qutrit and qufit ECS concurrence versus alpha."""

    figure = 2
    columns = ("alpha", "C3", "C3_poly", "C4")

    def evaluate(self, point: GridPoint) -> Row:
        alpha = point["alpha"]
        p = math.exp(-alpha * alpha)
        return (
            alpha,
            self._family_concurrence("qutrit", alpha),
            c3_polynomial(p),
            self._family_concurrence("qufit", alpha),
        )

    def _family_concurrence(self, kind: str, alpha: float) -> float:
        # an ill-conditioned family only blanks its own column
        try:
            return _pure_concurrence_of(make_ecs(kind, alpha, 0.0, DEFAULT_WEIGHTS[kind]))
        except GramIllConditioned as exc:
            if self._context is not None:
                self._context.logger.warning("alpha=%g 的 %s 欄位記為 nan：%s", alpha, kind, exc)
            return math.nan


class DecoherenceFigureEngine(BaseFigureEngine):
    """Both modes of an ECS pass the loss channel; alpha is fixed by ``p = exp(-alpha^2)``."""

    columns = ("p", "eta", "measure")
    kind = "qubit"

    def evaluate(self, point: GridPoint) -> Row:
        p, eta = point["p"], point["eta"]
        return (p, eta, self.measure(decohered_ecs(self.kind, p, eta)))

    def measure(self, rho: DensityMatrix) -> float:
        return negativity(rho, [1])


class Figure3Engine(DecoherenceFigureEngine):
    figure = 3

    def measure(self, rho: DensityMatrix) -> float:
        return wootters_concurrence(rho)


class Figure4Engine(DecoherenceFigureEngine):
    figure = 4


class Figure5Engine(DecoherenceFigureEngine):
    figure = 5
    kind = "qutrit"


class Figure6Engine(DecoherenceFigureEngine):
    figure = 6
    kind = "qufit"


class Figure7Engine(BaseFigureEngine):
    """Monogamy residual of the lossy three-mode ECS from the closed forms."""

    figure = 7
    columns = ("pprime", "eta", "tau")

    def evaluate(self, point: GridPoint) -> Row:
        pprime, eta = point["pprime"], point["eta"]
        return (pprime, eta, monogamy_closed_forms(pprime, eta).tau)


FIGURE_ENGINES: Dict[int, Type[BaseFigureEngine]] = {
    engine.figure: engine
    for engine in (Figure2Engine, Figure3Engine, Figure4Engine, Figure5Engine, Figure6Engine, Figure7Engine)
}


def load_figure_engine(path: str) -> Type[BaseFigureEngine]:
    return load_plugin_class(path, BaseFigureEngine, "Figure Engine")


__all__ = [
    "BaseFigureEngine",
    "EvaluationResult",
    "FIGURE_ENGINES",
    "Figure2Engine",
    "Figure3Engine",
    "Figure4Engine",
    "Figure5Engine",
    "Figure6Engine",
    "Figure7Engine",
    "load_figure_engine",
]
