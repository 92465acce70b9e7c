"""Small dense Hermitian eigensolver (cyclic complex Jacobi)."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian

LOGGER = logging.getLogger(__name__)

MAX_DIM = 64
HERMITIAN_TOL = 1e-10
OFF_DIAGONAL_TOL = 1e-13
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in descending order, optionally with matching eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None

    def __len__(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def total(self) -> float:
        return float(np.sum(self.eigenvalues))


def _check_matrix(m) -> np.ndarray:
    matrix = np.array(m, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    dim = matrix.shape[0]
    if not 1 <= dim <= MAX_DIM:
        raise ValueError(f"matrix dimension must be within 1..{MAX_DIM}, got {dim}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix entries must be finite")
    asymmetry = float(np.linalg.norm(matrix - matrix.conj().T))
    if asymmetry > HERMITIAN_TOL:
        raise NotHermitian(f"||m - m^H|| = {asymmetry:.3e} exceeds {HERMITIAN_TOL:g}")
    return 0.5 * (matrix + matrix.conj().T)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def hermitian_eigh(m) -> Spectrum:
    """Eigen-decomposition ``m = V diag(w) V^H`` by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a_pq`` with a
    diagonal unitary and then applies the real symmetric Jacobi rotation.
    """
    a = _check_matrix(m)
    dim = a.shape[0]
    vectors = np.eye(dim, dtype=complex)
    threshold = OFF_DIAGONAL_TOL * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    skipped = 0
    while _off_norm(a) >= threshold:
        if sweeps >= MAX_SWEEPS:
            LOGGER.warning("Jacobi stopped after %d sweeps, off-diagonal norm %.3e", sweeps, _off_norm(a))
            break
        sweeps += 1
        for p in range(dim - 1):
            for q in range(p + 1, dim):
                pivot = a[p, q]
                r = float(abs(pivot))
                if r < 1e-300:
                    skipped += 1
                    continue
                phase = pivot / r
                zeta = float(a[q, q].real - a[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rotation = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]], dtype=complex)
                index = [p, q]
                a[:, index] = a[:, index] @ rotation
                a[index, :] = rotation.conj().T @ a[index, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vectors[:, index] = vectors[:, index] @ rotation

    LOGGER.debug("Jacobi dim=%d sweeps=%d skipped_rotations=%d", dim, sweeps, skipped)
    values = np.diag(a).real
    order = np.argsort(-values, kind="stable")
    return Spectrum(eigenvalues=values[order], eigenvectors=vectors[:, order])


def hermitian_eigenvalues(m) -> Spectrum:
    spectrum = hermitian_eigh(m)
    return Spectrum(eigenvalues=spectrum.eigenvalues)


def sqrtm_psd(m) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix; tiny negative eigenvalues clip to 0."""
    spectrum = hermitian_eigh(m)
    roots = np.sqrt(np.clip(spectrum.eigenvalues, 0.0, None))
    vectors = spectrum.eigenvectors
    return (vectors * roots) @ vectors.conj().T


__all__ = ["MAX_DIM", "Spectrum", "hermitian_eigenvalues", "hermitian_eigh", "sqrtm_psd"]
