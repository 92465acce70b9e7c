"""Grid expansion task package."""
from .task import GridTask

__all__ = ["GridTask"]
