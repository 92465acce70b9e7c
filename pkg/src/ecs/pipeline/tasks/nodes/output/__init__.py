"""Sweep output task package."""
from .task import FigureOutputTask

__all__ = ["FigureOutputTask"]
