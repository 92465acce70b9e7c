"""Concurrence, negativity and the closed-form entanglement curves."""
from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from .errors import BadDims, BadSplit, DomainError, NegativeRadicand, NotNormalized
from .linalg import hermitian_eigenvalues, hermitian_eigh, sqrtm_psd
from .optics_channels import DensityMatrix

LOGGER = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-10
NEGATIVE_EIGENVALUE_TOL = 1e-12
CROSS_CHECK_TOL = 1e-10
RADICAND_CLAMP = -1e-9
ENSEMBLE_WEIGHT_TOL = 1e-14

_SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))

# rounded literals of the C(3) polynomial fit, highest power first
C3_RADICAND = {14: 14.098, 12: -17.6206, 10: -6.05322, 8: 24.965, 6: -22.5563, 4: 2.59035, 2: -0.0677901, 0: 4.64461}
C3_DENOMINATOR = {8: 1.99954, 2: 7.28968, 0: 3.8224}


def clamped_sqrt(value: float) -> float:
    """Square root that clamps radicands in (-1e-9, 0) to zero."""
    if value < 0.0:
        if value > RADICAND_CLAMP:
            return 0.0
        raise NegativeRadicand(f"radicand {value:.3e} is negative")
    return math.sqrt(value)


def pure_concurrence(a) -> float:
    """Concurrence of the pure state ``sum_ij a_ij |i>|j>``.

    Uses ``sum_{i<j,k<l} |a_ik a_jl - a_il a_jk|^2 = (1 - Tr rho_A^2) / 2``.
    """
    matrix = np.asarray(a, dtype=complex)
    if matrix.ndim != 2:
        raise ValueError(f"coefficient matrix must be 2-D, got shape {matrix.shape}")
    weight = float(np.sum(np.abs(matrix) ** 2))
    if abs(weight - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"sum |a_ij|^2 = {weight:.12g}")
    reduced = matrix @ matrix.conj().T
    purity = float(np.sum(np.abs(reduced) ** 2))
    return clamped_sqrt(2.0 * (1.0 - purity))


def _pad_to_qubits(rho: DensityMatrix) -> np.ndarray:
    if len(rho.dims) != 2 or any(d not in (1, 2) for d in rho.dims):
        raise BadDims(f"Wootters concurrence needs qubit factors, got dims {rho.dims}")
    d1, d2 = rho.dims
    index = [2 * i + j for i in range(d1) for j in range(d2)]
    padded = np.zeros((4, 4), dtype=complex)
    padded[np.ix_(index, index)] = rho.matrix
    return padded


def wootters_concurrence(rho: DensityMatrix) -> float:
    matrix = _pad_to_qubits(rho)
    flipped = _SIGMA_YY @ matrix.conj() @ _SIGMA_YY
    root = sqrtm_psd(matrix)
    product = root @ flipped @ root
    product = 0.5 * (product + product.conj().T)
    lambdas = np.sqrt(np.clip(hermitian_eigenvalues(product).eigenvalues, 0.0, None))
    return max(0.0, float(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]))


def partial_transpose(rho: DensityMatrix, transposed_modes: Sequence[int]) -> np.ndarray:
    dims = rho.dims
    n = len(dims)
    tensor = rho.matrix.reshape(dims + dims)
    axes = list(range(2 * n))
    for mode in transposed_modes:
        axes[mode], axes[n + mode] = axes[n + mode], axes[mode]
    size = int(np.prod(dims))
    return tensor.transpose(axes).reshape(size, size)


def check_split(dims: tuple[int, ...], split: Sequence[int]) -> list[int]:
    modes = [int(m) for m in split]
    if not modes:
        raise BadSplit("subsystem B is empty")
    if len(set(modes)) != len(modes) or any(not 0 <= m < len(dims) for m in modes):
        raise BadSplit(f"invalid mode indices {modes} for {len(dims)} modes")
    if len(modes) == len(dims):
        raise BadSplit("subsystem B covers every mode")
    return modes


def negativity(rho: DensityMatrix, split: Sequence[int]) -> float:
    """Sum of the negative eigenvalues of the partial transpose over ``split`` (the modes of B)."""
    modes = check_split(rho.dims, split)
    transposed = partial_transpose(rho, modes)
    eigenvalues = hermitian_eigenvalues(transposed).eigenvalues
    value = float(-np.sum(eigenvalues[eigenvalues < -NEGATIVE_EIGENVALUE_TOL]))

    trace_norm = float(np.sum(np.abs(eigenvalues)))
    check = (trace_norm - rho.trace) / 2.0
    if abs(check - value) > CROSS_CHECK_TOL:
        LOGGER.warning("negativity cross-check mismatch: eigen=%.3e trace-norm=%.3e", value, check)
    return value


def bipartite_matrix(tensor, row_modes: Sequence[int]) -> np.ndarray:
    """Reshape a pure coefficient tensor into (row modes) x (remaining modes)."""
    arr = np.asarray(tensor, dtype=complex)
    rows = [int(m) for m in row_modes]
    cols = [m for m in range(arr.ndim) if m not in rows]
    if not rows or not cols:
        raise BadSplit("a bipartite cut needs modes on both sides")
    moved = arr.transpose(rows + cols)
    n_rows = int(np.prod([arr.shape[m] for m in rows]))
    return moved.reshape(n_rows, -1)


def ensemble_concurrence(rho: DensityMatrix) -> float:
    """Average pure concurrence over the eigen-ensemble of a two-party state."""
    if len(rho.dims) != 2:
        raise BadDims(f"ensemble concurrence needs two parties, got dims {rho.dims}")
    d1, d2 = rho.dims
    spectrum = hermitian_eigh(rho.matrix)
    total = 0.0
    for weight, vector in zip(spectrum.eigenvalues, spectrum.eigenvectors.T):
        if weight <= ENSEMBLE_WEIGHT_TOL:
            continue
        matrix = vector.reshape(d1, d2)
        matrix = matrix / np.linalg.norm(matrix)
        total += float(weight) * pure_concurrence(matrix)
    return total


def c2_closed_form(ratio: complex, p: float) -> float:
    """Qubit ECS concurrence for the product ``eps0 * conj(eps1)`` and overlap ``p``."""
    p = float(p)
    if not 0.0 <= p < 1.0:
        raise DomainError(f"p must lie in [0, 1), got {p}")
    r = complex(ratio)
    denominator = 1.0 + abs(r) ** 2 - 2.0 * r.real * p * p
    return 2.0 * abs(r) * (1.0 - p * p) / denominator


def c3_polynomial(p: float) -> float:
    """Polynomial fit of the optimal qutrit ECS concurrence in ``p = exp(-alpha^2)``."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    radicand = sum(coeff * p**power for power, coeff in C3_RADICAND.items())
    denominator = sum(coeff * p**power for power, coeff in C3_DENOMINATOR.items())
    return 2.0 * clamped_sqrt(radicand) / denominator


__all__ = [
    "bipartite_matrix",
    "c2_closed_form",
    "c3_polynomial",
    "check_split",
    "clamped_sqrt",
    "ensemble_concurrence",
    "negativity",
    "partial_transpose",
    "pure_concurrence",
    "wootters_concurrence",
]
