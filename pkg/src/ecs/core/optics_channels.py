"""Beam splitters, ECS families, photon loss and partial traces."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Literal, Sequence

import numpy as np

from .coherent_algebra import OrthoBasis, Superposition, as_label, normalize, orthonormalize, overlap
from .errors import BadMode, DomainError

LOGGER = logging.getLogger(__name__)

EcsKind = Literal["qubit", "qutrit", "qufit"]
ECS_SIZES = {"qubit": 2, "qutrit": 3, "qufit": 4}
# Bell-type qubit, optimal qutrit and the qufit sign pattern
DEFAULT_WEIGHTS: dict[str, tuple[float, ...]] = {
    "qubit": (-1.0, 1.0),
    "qutrit": (1.0, 1.35, 1.0),
    "qufit": (-1.0, 1.0, -1.0, -1.0),
}

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


def noise_param(eta: float) -> float:
    """Validated surviving photon fraction."""
    value = float(eta)
    if not 0.0 <= value <= 1.0 or math.isnan(value):
        raise DomainError(f"noise parameter eta must lie in [0, 1], got {eta!r}")
    return value


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian matrix over the tensor product of per-mode orthonormal bases."""

    dims: tuple[int, ...]
    matrix: np.ndarray
    bases: tuple[OrthoBasis, ...] = ()

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        matrix = np.asarray(self.matrix, dtype=complex)
        size = int(np.prod(dims)) if dims else 0
        if matrix.shape != (size, size):
            raise ValueError(f"matrix shape {matrix.shape} does not match dims {dims}")
        if np.max(np.abs(matrix - matrix.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ValueError("density matrix must be Hermitian")
        matrix = 0.5 * (matrix + matrix.conj().T)
        matrix.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "bases", tuple(self.bases))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def is_valid(self) -> bool:
        if abs(self.trace - 1.0) > TRACE_TOL:
            return False
        return bool(np.linalg.eigvalsh(self.matrix).min() >= -PSD_TOL)


def _check_modes(n_modes: int, modes: Sequence[int]) -> list[int]:
    result = [int(m) for m in modes]
    if len(set(result)) != len(result):
        raise BadMode(f"repeated mode in {result}")
    for mode in result:
        if not 0 <= mode < n_modes:
            raise BadMode(f"mode {mode} out of range for a {n_modes}-mode state")
    return result


def beamsplitter(x: Superposition, i: int, j: int, theta: float) -> Superposition:
    if i == j:
        raise BadMode("beam splitter needs two distinct modes")
    _check_modes(x.n_modes, [i, j])
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    labels = np.array(x.labels)
    a_i, a_j = x.labels[:, i], x.labels[:, j]
    labels[:, i] = a_i * cos_t - a_j * sin_t
    labels[:, j] = a_i * sin_t + a_j * cos_t
    return Superposition(x.coeffs, labels)


def add_vacuum_modes(x: Superposition, count: int = 1) -> Superposition:
    """Append ``count`` modes in the vacuum (label 0)."""
    padding = np.zeros((x.n_terms, count), dtype=complex)
    return Superposition(x.coeffs, np.hstack([x.labels, padding]))


def ecs_labels(kind: EcsKind, alpha: complex, beta: complex = 0.0) -> list[complex]:
    alpha, beta = as_label(alpha), as_label(beta)
    root2 = math.sqrt(2.0)
    if kind == "qubit":
        return [alpha / root2, -alpha / root2]
    if kind == "qutrit":
        return [(2 * alpha + beta) / root2, beta / root2, (-2 * alpha + beta) / root2]
    if kind == "qufit":
        return [3 * alpha / root2, alpha / root2, -alpha / root2, -3 * alpha / root2]
    raise ValueError(f"unknown ECS kind {kind!r}")


def make_ecs(kind: EcsKind, alpha: complex, beta: complex, coeffs: Sequence[complex]) -> Superposition:
    """Normalized two-mode ECS with both modes carrying the same label per term."""
    if kind not in ECS_SIZES:
        raise ValueError(f"unknown ECS kind {kind!r}")
    weights = [complex(c) for c in coeffs]
    if len(weights) != ECS_SIZES[kind]:
        raise ValueError(f"{kind} ECS needs {ECS_SIZES[kind]} coefficients, got {len(weights)}")
    labels = ecs_labels(kind, alpha, beta)
    return normalize(Superposition.from_terms([(w, (label, label)) for w, label in zip(weights, labels)]))


def make_ghz_ecs(alpha: complex, signs: Sequence[complex] = (1.0, -1.0)) -> Superposition:
    """Three-mode ECS from ``s0|-alpha> + s1|alpha>`` through two beam splitters."""
    alpha = as_label(alpha)
    source = Superposition.from_terms([(signs[0], (-alpha,)), (signs[1], (alpha,))])
    state = add_vacuum_modes(source, 2)
    state = beamsplitter(state, 0, 1, math.acos(1.0 / math.sqrt(3.0)))
    state = beamsplitter(state, 1, 2, math.pi / 4)
    return normalize(state)


def lossy_channel(x: Superposition, modes: Sequence[int], eta: float) -> Superposition:
    """Photon loss on ``modes``; one environment mode is appended per lossy mode."""
    eta = noise_param(eta)
    selected = _check_modes(x.n_modes, modes)
    keep, lose = math.sqrt(eta), math.sqrt(1.0 - eta)
    labels = np.array(x.labels)
    environment = np.zeros((x.n_terms, len(selected)), dtype=complex)
    for column, mode in enumerate(selected):
        environment[:, column] = x.labels[:, mode] * lose
        labels[:, mode] = x.labels[:, mode] * keep
    return Superposition(x.coeffs, np.hstack([labels, environment]))


def trace_out(x: Superposition, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state of ``keep`` in the orthonormal basis of each kept mode.

    Per-mode bases are built from the distinct labels of that mode in
    first-appearance order; traced modes enter through exact overlaps.
    """
    kept = _check_modes(x.n_modes, keep)
    if not kept:
        raise BadMode("trace_out needs at least one kept mode")
    traced = [mode for mode in range(x.n_modes) if mode not in kept]
    bases = tuple(orthonormalize(x.mode_labels(mode)) for mode in kept)
    dims = tuple(basis.dim for basis in bases)

    # columns: expansion of each term's kept product state
    vectors = np.stack(
        [
            reduce(np.kron, [basis.column(row[mode]) for basis, mode in zip(bases, kept)])
            for row in x.labels
        ],
        axis=1,
    )
    weights = np.outer(x.coeffs, np.conj(x.coeffs))
    for mode in traced:
        column = x.labels[:, mode]
        # weight[s, t] picks up <env_t|env_s>
        weights = weights * overlap(column[None, :], column[:, None])
    matrix = vectors @ weights @ vectors.conj().T
    LOGGER.debug("trace_out kept=%s traced=%s dims=%s", kept, traced, dims)
    return DensityMatrix(dims=dims, matrix=matrix, bases=bases)


def pure_density(x: Superposition) -> DensityMatrix:
    return trace_out(x, range(x.n_modes))


def alpha_for_overlap(p: float) -> float:
    """Amplitude whose two-mode ECS labels give per-mode overlap ``p = exp(-alpha^2)``."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"overlap p must lie in (0, 1), got {p}")
    return math.sqrt(-math.log(p))


def decohered_ecs(
    kind: EcsKind,
    p: float,
    eta: float,
    coeffs: Sequence[complex] | None = None,
) -> DensityMatrix:
    """Two-mode ECS with both modes through the loss channel, environment traced out."""
    weights = DEFAULT_WEIGHTS.get(kind, ()) if coeffs is None else coeffs
    state = make_ecs(kind, alpha_for_overlap(p), 0.0, weights)
    return trace_out(lossy_channel(state, [0, 1], eta), [0, 1])


__all__ = [
    "DEFAULT_WEIGHTS",
    "DensityMatrix",
    "ECS_SIZES",
    "add_vacuum_modes",
    "alpha_for_overlap",
    "beamsplitter",
    "decohered_ecs",
    "ecs_labels",
    "lossy_channel",
    "make_ecs",
    "make_ghz_ecs",
    "noise_param",
    "pure_density",
    "trace_out",
]
