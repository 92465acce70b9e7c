"""Figure evaluation task package."""
from .task import FigureEvaluationTask

__all__ = ["FigureEvaluationTask"]
