"""Truncated Fock-space oracle used to cross-check the Gram-basis numerics."""
from __future__ import annotations

import logging
import math
from functools import reduce
from typing import Sequence

import numpy as np

from .coherent_algebra import Superposition
from .entanglement_measures import NEGATIVE_EIGENVALUE_TOL, check_split
from .errors import BadMode, CutoffTooSmall, ModeMismatch

LOGGER = logging.getLogger(__name__)

ORACLE_TAIL_TOL = 1e-12
# below this index n! is exact in float; above it a log-space running product is used
DIRECT_FACTORIAL_LIMIT = 30
MAX_CUTOFF = 2000


def cutoff_for(max_amp: float, tol: float = ORACLE_TAIL_TOL) -> int:
    """Smallest K with Poisson(|max_amp|^2) tail beyond K below ``tol``."""
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    mean = float(max_amp) ** 2
    if mean == 0.0:
        return 0
    log_pmf = -mean
    cumulative = math.exp(log_pmf)
    k = 0
    while 1.0 - cumulative >= tol:
        k += 1
        if k > MAX_CUTOFF:
            raise CutoffTooSmall(f"no cutoff below {MAX_CUTOFF} reaches tail {tol:g} for |alpha|={max_amp}")
        log_pmf += math.log(mean) - math.log(k)
        cumulative += math.exp(log_pmf)
    return k


def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """Number-state amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)`` for n = 0..cutoff."""
    alpha = complex(alpha)
    n = np.arange(cutoff + 1)
    amps = np.zeros(cutoff + 1, dtype=complex)
    head = n[n <= DIRECT_FACTORIAL_LIMIT]
    amps[head] = [alpha**k / math.sqrt(math.factorial(int(k))) for k in head]
    if cutoff > DIRECT_FACTORIAL_LIMIT and alpha != 0:
        tail = n[n > DIRECT_FACTORIAL_LIMIT]
        log_factorial = math.lgamma(DIRECT_FACTORIAL_LIMIT + 2) + np.concatenate(
            [[0.0], np.cumsum(np.log(tail[1:]))]
        )
        log_mag = tail * math.log(abs(alpha)) - 0.5 * log_factorial
        amps[tail] = np.exp(log_mag + 1j * tail * np.angle(alpha))
    return amps * math.exp(-0.5 * abs(alpha) ** 2)


def to_fock(x: Superposition, cutoff: int) -> np.ndarray:
    """Dense state vector of shape ``(cutoff + 1,) * n_modes``."""
    required = cutoff_for(x.max_amplitude(), ORACLE_TAIL_TOL)
    if cutoff < required:
        raise CutoffTooSmall(f"cutoff {cutoff} below required {required} for |alpha|={x.max_amplitude():.3f}")
    shape = (cutoff + 1,) * x.n_modes
    vector = np.zeros(shape, dtype=complex)
    for coeff, row in zip(x.coeffs, x.labels):
        vector += coeff * reduce(np.multiply.outer, [coherent_amplitudes(label, cutoff) for label in row])
    return vector


def fock_inner(x: Superposition, y: Superposition, cutoff: int) -> complex:
    if x.n_modes != y.n_modes:
        raise ModeMismatch(f"inner product of {x.n_modes}-mode and {y.n_modes}-mode states")
    return complex(np.vdot(to_fock(x, cutoff), to_fock(y, cutoff)))


def fock_density(x: Superposition, keep: Sequence[int], cutoff: int) -> np.ndarray:
    """Reduced density matrix of ``keep`` over the truncated number basis."""
    kept = [int(m) for m in keep]
    if not kept or len(set(kept)) != len(kept) or any(not 0 <= m < x.n_modes for m in kept):
        raise BadMode(f"invalid kept modes {kept} for a {x.n_modes}-mode state")
    traced = [m for m in range(x.n_modes) if m not in kept]
    tensor = to_fock(x, cutoff).transpose(kept + traced)
    size = (cutoff + 1) ** len(kept)
    matrix = tensor.reshape(size, -1)
    return matrix @ matrix.conj().T


def oracle_negativity(x: Superposition, keep: Sequence[int], split: Sequence[int], cutoff: int) -> float:
    """Negativity of the kept modes with ``split`` (positions within ``keep``) transposed."""
    rho = fock_density(x, keep, cutoff)
    dims = (cutoff + 1,) * len(keep)
    modes = check_split(dims, split)
    n = len(dims)
    axes = list(range(2 * n))
    for mode in modes:
        axes[mode], axes[n + mode] = axes[n + mode], axes[mode]
    transposed = rho.reshape(dims + dims).transpose(axes).reshape(rho.shape)
    eigenvalues = np.linalg.eigvalsh(transposed)
    value = float(-np.sum(eigenvalues[eigenvalues < -NEGATIVE_EIGENVALUE_TOL]))
    LOGGER.debug("oracle negativity cutoff=%d dim=%d value=%.6e", cutoff, rho.shape[0], value)
    return value


__all__ = [
    "coherent_amplitudes",
    "cutoff_for",
    "fock_density",
    "fock_inner",
    "oracle_negativity",
    "to_fock",
]
