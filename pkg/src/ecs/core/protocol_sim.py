"""Cavity-QED generation protocol as a pipeline of effective maps.

A two-level atom prepared in ``|g>`` crosses the cavity repeatedly. Each
crossing is reduced to three effective maps: a resonant classical pulse on the
atom, a dispersive atom-cavity phase of pi/2 (labels rotate by +i for ``g`` and
-i for ``e``), and a final post-selection on ``|g>``. Cavity-only phase shifts
and displacements complete the recipes.
"""
from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .coherent_algebra import ZERO_NORM_THRESHOLD, Superposition, as_label, inner, normalize
from .errors import BadRecipe, NeverGround

LOGGER = logging.getLogger(__name__)

GROUND = 0
EXCITED = 1
_LEVEL_NAMES = {GROUND: "g", EXCITED: "e"}


def phase_factor(phi: float) -> complex:
    """``exp(i*phi)`` with exact values on quarter turns."""
    quarters = phi / (math.pi / 2)
    nearest = round(quarters)
    if abs(quarters - nearest) < 1e-12:
        return (1 + 0j, 1j, -1 + 0j, -1j)[nearest % 4]
    return cmath.exp(1j * phi)


@dataclass(frozen=True, eq=False)
class AtomFieldState:
    """Joint atom-cavity state ``sum_t coeff_t |level_t>|label_t>``."""

    levels: np.ndarray
    coeffs: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        levels = np.asarray(self.levels, dtype=int).reshape(-1)
        coeffs = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        labels = np.asarray(self.labels, dtype=complex).reshape(-1)
        if not levels.shape == coeffs.shape == labels.shape:
            raise ValueError("levels, coefficients and labels must have the same length")
        if np.any((levels != GROUND) & (levels != EXCITED)):
            raise ValueError("atom levels must be 0 (g) or 1 (e)")

        merged: dict[tuple[int, complex], complex] = {}
        for level, coeff, label in zip(levels, coeffs, labels):
            key = (int(level), complex(label))
            merged[key] = merged.get(key, 0j) + complex(coeff)
        kept = [(key, coeff) for key, coeff in merged.items() if coeff != 0]
        object.__setattr__(self, "levels", np.array([key[0] for key, _ in kept], dtype=int))
        object.__setattr__(self, "coeffs", np.array([coeff for _, coeff in kept], dtype=complex))
        object.__setattr__(self, "labels", np.array([key[1] for key, _ in kept], dtype=complex))

    @classmethod
    def ground(cls, label: complex) -> "AtomFieldState":
        return cls([GROUND], [1.0], [as_label(label)])

    @classmethod
    def excited(cls, label: complex) -> "AtomFieldState":
        return cls([EXCITED], [1.0], [as_label(label)])

    @property
    def terms(self) -> list[tuple[str, complex, complex]]:
        return [
            (_LEVEL_NAMES[int(level)], complex(coeff), complex(label))
            for level, coeff, label in zip(self.levels, self.coeffs, self.labels)
        ]

    def component(self, level: int) -> Superposition:
        """Unnormalized cavity state attached to one atomic level."""
        mask = self.levels == level
        return Superposition(self.coeffs[mask], self.labels[mask].reshape(-1, 1))

    def norm_squared(self) -> float:
        # g and e are orthogonal, so only same-level pairs contribute
        total = 0.0
        for level in (GROUND, EXCITED):
            total += float(inner(self.component(level), self.component(level)).real)
        return total


# recipe primitives


@dataclass(frozen=True)
class Pulse:
    eps: complex


@dataclass(frozen=True)
class Dispersive:
    pass


@dataclass(frozen=True)
class PhaseShift:
    phi: float = math.pi / 2


@dataclass(frozen=True)
class Displace:
    beta: complex
    exact_phase: bool = False


@dataclass(frozen=True)
class MeasureGround:
    pass


Step = Union[Pulse, Dispersive, PhaseShift, Displace, MeasureGround]
_CAVITY_STEPS = (PhaseShift, Displace)


@dataclass(frozen=True)
class Recipe:
    """Ordered protocol steps; the atom segment ends at ``MeasureGround``."""

    steps: tuple[Step, ...] = field(default_factory=tuple)

    def validate(self) -> None:
        measures = [index for index, step in enumerate(self.steps) if isinstance(step, MeasureGround)]
        if len(measures) != 1:
            raise BadRecipe(f"recipe needs exactly one MeasureGround, found {len(measures)}")
        cut = measures[0]
        atom_steps = self.steps[:cut]
        for step in self.steps[cut + 1:]:
            if not isinstance(step, _CAVITY_STEPS):
                raise BadRecipe(f"{type(step).__name__} cannot follow MeasureGround")
        for index, step in enumerate(atom_steps):
            if not isinstance(step, Dispersive):
                continue
            before = any(isinstance(s, Pulse) for s in atom_steps[:index])
            after = any(isinstance(s, Pulse) for s in atom_steps[index + 1:])
            if not (before and after):
                raise BadRecipe(f"Dispersive at position {index} is not enclosed by Pulse steps")

    @property
    def order(self) -> int:
        """Number of dispersive passes (the N of the generated state)."""
        return sum(1 for step in self.steps if isinstance(step, Dispersive))


@dataclass(frozen=True)
class RecipeOutcome:
    state: Superposition
    success_probability: float


def apply_pulse(s: AtomFieldState, eps: complex) -> AtomFieldState:
    eps = complex(eps)
    scale = 1.0 / math.sqrt(1.0 + abs(eps) ** 2)
    levels: list[int] = []
    coeffs: list[complex] = []
    labels: list[complex] = []
    for level, coeff, label in zip(s.levels, s.coeffs, s.labels):
        if level == GROUND:
            levels += [GROUND, EXCITED]
            coeffs += [coeff * scale, coeff * eps * scale]
        else:
            levels += [GROUND, EXCITED]
            coeffs += [-coeff * eps.conjugate() * scale, coeff * scale]
        labels += [label, label]
    return AtomFieldState(levels, coeffs, labels)


def apply_dispersive(s: AtomFieldState) -> AtomFieldState:
    rotation = np.where(s.levels == GROUND, 1j, -1j)
    return AtomFieldState(s.levels, s.coeffs, s.labels * rotation)


def apply_phase_shift(x, phi: float):
    """Rotate every cavity label by ``exp(i*phi)``."""
    factor = phase_factor(phi)
    if isinstance(x, AtomFieldState):
        return AtomFieldState(x.levels, x.coeffs, x.labels * factor)
    if isinstance(x, Superposition):
        return Superposition(x.coeffs, x.labels * factor)
    raise TypeError(f"cannot phase-shift {type(x).__name__}")


def apply_displacement(x, beta: complex, exact_phase: bool = False):
    """Shift labels by ``beta``; ``exact_phase`` keeps the Weyl phase."""
    beta = complex(beta)
    if isinstance(x, AtomFieldState):
        coeffs = x.coeffs
        if exact_phase:
            coeffs = coeffs * np.exp(1j * np.imag(beta * np.conj(x.labels)))
        return AtomFieldState(x.levels, coeffs, x.labels + beta)
    if isinstance(x, Superposition):
        labels = np.array(x.labels)
        coeffs = np.array(x.coeffs)
        for m in range(x.n_modes):
            if exact_phase:
                coeffs = coeffs * np.exp(1j * np.imag(beta * np.conj(labels[:, m])))
            labels[:, m] = labels[:, m] + beta
        return Superposition(coeffs, labels)
    raise TypeError(f"cannot displace {type(x).__name__}")


def measure_ground(s: AtomFieldState) -> tuple[Superposition, float]:
    cavity = s.component(GROUND)
    weight = float(inner(cavity, cavity).real)
    if weight < ZERO_NORM_THRESHOLD:
        raise NeverGround(f"ground-state component has norm^2 {weight:.3e}")
    total = s.norm_squared()
    probability = min(1.0, weight / total)
    LOGGER.debug("post-selected |g> with probability %.6f over %d terms", probability, cavity.n_terms)
    return normalize(cavity), probability


def run_recipe_outcome(r: Recipe, start: complex) -> RecipeOutcome:
    r.validate()
    state: AtomFieldState | Superposition = AtomFieldState.ground(start)
    probability = 1.0
    for step in r.steps:
        if isinstance(step, Pulse):
            state = apply_pulse(state, step.eps)
        elif isinstance(step, Dispersive):
            state = apply_dispersive(state)
        elif isinstance(step, PhaseShift):
            state = apply_phase_shift(state, step.phi)
        elif isinstance(step, Displace):
            state = apply_displacement(state, step.beta, exact_phase=step.exact_phase)
        elif isinstance(step, MeasureGround):
            state, probability = measure_ground(state)
        else:  # pragma: no cover - Step union is closed
            raise BadRecipe(f"unknown recipe step {step!r}")
    return RecipeOutcome(state=normalize(state), success_probability=probability)


def run_recipe(r: Recipe, start: complex) -> Superposition:
    return run_recipe_outcome(r, start).state


def canonical_recipe(
    eps: Sequence[complex],
    alpha: complex,
    final_displacement: complex | None = None,
    exact_phase: bool = False,
) -> Recipe:
    """Fixed recipes for N = len(eps) - 1 in {1, 2, 3}.

    The displacements between dispersive passes recentre the label grid so
    that N=2 yields labels (2a, 0, -2a) and N=3 yields (3a, a, -a, -3a).
    """
    eps = [complex(value) for value in eps]
    order = len(eps) - 1
    alpha = as_label(alpha)
    if order not in (1, 2, 3):
        raise BadRecipe(f"canonical recipes exist for 2..4 pulse amplitudes, got {len(eps)}")

    steps: list[Step] = [Pulse(eps[0]), Dispersive(), Pulse(eps[1])]
    if order >= 2:
        steps += [Displace(1j * alpha, exact_phase), Dispersive(), Pulse(eps[2])]
    if order == 3:
        steps += [Displace(alpha, exact_phase), Dispersive(), Pulse(eps[3])]
    steps.append(MeasureGround())
    steps.append(PhaseShift({1: math.pi / 2, 2: math.pi, 3: -math.pi / 2}[order]))
    if final_displacement is not None:
        steps.append(Displace(complex(final_displacement), exact_phase))
    return Recipe(tuple(steps))


def closed_form_coefficients(eps: Sequence[complex]) -> list[tuple[int, complex]]:
    """Closed-form (label multiple, A_k) pairs for N = 1 and N = 2."""
    eps = [complex(value) for value in eps]
    if len(eps) == 2:
        e0, e1 = eps
        return [(1, -e0 * e1.conjugate()), (-1, 1 + 0j)]
    if len(eps) == 3:
        e0, e1, e2 = eps
        return [
            (2, 1 + 0j),
            (0, -(e0 * e2.conjugate() + e0 * e1.conjugate())),
            (-2, -e1 * e2.conjugate()),
        ]
    raise BadRecipe("closed-form coefficients are only known for N = 1 and N = 2")


def expected_state(eps: Sequence[complex], alpha: complex) -> Superposition:
    """Normalized state built directly from :func:`closed_form_coefficients`."""
    alpha = as_label(alpha)
    terms = [(coeff, (multiple * alpha,)) for multiple, coeff in closed_form_coefficients(eps)]
    return normalize(Superposition.from_terms(terms))


__all__ = [
    "AtomFieldState",
    "Dispersive",
    "Displace",
    "MeasureGround",
    "PhaseShift",
    "Pulse",
    "Recipe",
    "RecipeOutcome",
    "apply_dispersive",
    "apply_displacement",
    "apply_phase_shift",
    "apply_pulse",
    "canonical_recipe",
    "expected_state",
    "measure_ground",
    "closed_form_coefficients",
    "phase_factor",
    "run_recipe",
    "run_recipe_outcome",
]
