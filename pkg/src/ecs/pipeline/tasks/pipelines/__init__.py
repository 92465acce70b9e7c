"""Pipeline task implementations."""
from .figure_pipeline import FigurePipelineTask

__all__ = ["FigurePipelineTask"]
