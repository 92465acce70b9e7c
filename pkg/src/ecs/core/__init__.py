"""Numerical core: coherent-state algebra, generation protocol, channels and measures."""
from .coherent_algebra import OrthoBasis, Superposition, inner, normalize, orthonormalize, overlap
from .entanglement_measures import negativity, pure_concurrence, wootters_concurrence
from .errors import EcsError
from .monogamy import MonogamyReport, monogamy_closed_forms, monogamy_pipeline, qutrit_violation_example
from .optics_channels import DensityMatrix, lossy_channel, make_ecs, trace_out
from .protocol_sim import Recipe, canonical_recipe, run_recipe

__all__ = [
    "DensityMatrix",
    "EcsError",
    "MonogamyReport",
    "OrthoBasis",
    "Recipe",
    "Superposition",
    "canonical_recipe",
    "inner",
    "lossy_channel",
    "make_ecs",
    "monogamy_closed_forms",
    "monogamy_pipeline",
    "negativity",
    "normalize",
    "orthonormalize",
    "overlap",
    "pure_concurrence",
    "qutrit_violation_example",
    "run_recipe",
    "trace_out",
    "wootters_concurrence",
]
