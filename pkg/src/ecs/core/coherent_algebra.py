"""Exact algebra on finite superpositions of multimode coherent states.

Every state is a finite list of terms ``coeff * |a_1> (x) ... (x) |a_n>``.
Inner products are evaluated with the closed-form coherent overlap, so no
Fock truncation is involved anywhere in this module.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import GramIllConditioned, LabelNotInBasis, ModeMismatch, ZeroNorm

LOGGER = logging.getLogger(__name__)

GRAM_DET_THRESHOLD = 1e-12
ZERO_NORM_THRESHOLD = 1e-15
MAX_BASIS_DIM = 8
LABEL_MATCH_TOL = 1e-12

CoherentLabel = complex


def as_label(value: complex | float) -> CoherentLabel:
    """Validate and coerce a field amplitude."""
    label = complex(value)
    if not (np.isfinite(label.real) and np.isfinite(label.imag)):
        raise ValueError(f"coherent label must be finite, got {value!r}")
    return label


def overlap(a, b):
    """Return ``<a|b>`` for coherent amplitudes; broadcasts over numpy arrays."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    value = np.exp(-0.5 * np.abs(a) ** 2 - 0.5 * np.abs(b) ** 2 + np.conj(a) * b)
    if value.ndim == 0:
        return complex(value)
    return value


@dataclass(frozen=True, eq=False)
class Superposition:
    """Immutable finite superposition of n-mode coherent product states.

    ``coeffs`` has shape (T,) and ``labels`` shape (T, n_modes). Terms with an
    identical label tuple are merged on construction (first appearance keeps
    its position) and exact zeros are dropped, so an empty term list is the
    zero vector.
    """

    coeffs: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        labels = np.asarray(self.labels, dtype=complex)
        if labels.ndim != 2:
            raise ValueError("labels must be a (terms, modes) array")
        if labels.shape[1] < 1:
            raise ValueError("a superposition needs at least one mode")
        if labels.shape[0] != coeffs.shape[0]:
            raise ValueError("coefficient and label counts differ")
        if not (np.all(np.isfinite(coeffs)) and np.all(np.isfinite(labels))):
            raise ValueError("coefficients and labels must be finite")

        merged: dict[tuple[complex, ...], complex] = {}
        for coeff, row in zip(coeffs, labels):
            key = tuple(complex(value) for value in row)
            merged[key] = merged.get(key, 0j) + complex(coeff)
        kept = [(key, coeff) for key, coeff in merged.items() if coeff != 0]

        n_modes = labels.shape[1]
        new_coeffs = np.array([coeff for _, coeff in kept], dtype=complex)
        new_labels = np.array([key for key, _ in kept], dtype=complex).reshape(len(kept), n_modes)
        new_coeffs.setflags(write=False)
        new_labels.setflags(write=False)
        object.__setattr__(self, "coeffs", new_coeffs)
        object.__setattr__(self, "labels", new_labels)

    @classmethod
    def from_terms(
        cls,
        terms: Iterable[tuple[complex, Sequence[complex]]],
        n_modes: int | None = None,
    ) -> "Superposition":
        items = [(complex(coeff), tuple(as_label(v) for v in labels)) for coeff, labels in terms]
        if n_modes is None:
            if not items:
                raise ValueError("n_modes is required for an empty term list")
            n_modes = len(items[0][1])
        for _, labels in items:
            if len(labels) != n_modes:
                raise ModeMismatch(f"term has {len(labels)} labels, expected {n_modes}")
        coeffs = np.array([coeff for coeff, _ in items], dtype=complex)
        label_rows = np.array([labels for _, labels in items], dtype=complex).reshape(len(items), n_modes)
        return cls(coeffs, label_rows)

    @classmethod
    def product(cls, *labels: complex) -> "Superposition":
        """Single coherent product state ``|labels[0]> (x) |labels[1]> ...``."""
        return cls.from_terms([(1.0, labels)])

    @property
    def n_modes(self) -> int:
        return int(self.labels.shape[1])

    @property
    def n_terms(self) -> int:
        return int(self.coeffs.shape[0])

    @property
    def terms(self) -> list[tuple[complex, tuple[complex, ...]]]:
        return [(complex(c), tuple(complex(v) for v in row)) for c, row in zip(self.coeffs, self.labels)]

    def coefficient_of(self, labels: Sequence[complex], tol: float = LABEL_MATCH_TOL) -> complex:
        """Coefficient of the term with the given label tuple (0 when absent)."""
        target = np.asarray(labels, dtype=complex).reshape(-1)
        if target.shape[0] != self.n_modes:
            raise ModeMismatch(f"expected {self.n_modes} labels, got {target.shape[0]}")
        for coeff, row in zip(self.coeffs, self.labels):
            if np.all(np.abs(row - target) <= tol):
                return complex(coeff)
        return 0j

    def mode_labels(self, mode: int) -> np.ndarray:
        """Distinct labels of one mode in first-appearance order."""
        seen: dict[complex, None] = {}
        for value in self.labels[:, mode]:
            seen.setdefault(complex(value), None)
        return np.array(list(seen), dtype=complex)

    def max_amplitude(self) -> float:
        if self.n_terms == 0:
            return 0.0
        return float(np.max(np.abs(self.labels)))

    def scaled(self, factor: complex) -> "Superposition":
        return Superposition(self.coeffs * complex(factor), self.labels)

    def __add__(self, other: "Superposition") -> "Superposition":
        if not isinstance(other, Superposition):
            return NotImplemented
        if other.n_modes != self.n_modes:
            raise ModeMismatch(f"cannot add {self.n_modes}-mode and {other.n_modes}-mode states")
        return Superposition(
            np.concatenate([self.coeffs, other.coeffs]),
            np.vstack([self.labels, other.labels]),
        )

    def __repr__(self) -> str:
        return f"Superposition(n_modes={self.n_modes}, terms={self.terms!r})"


@dataclass(frozen=True, eq=False)
class OrthoBasis:
    """Orthonormal qudit basis spanned by d coherent states of one mode.

    ``factor`` is upper triangular with ``gram = factor^H factor``; coherent
    state i is ``sum_j factor[j, i] |e_j>``.
    """

    labels: np.ndarray
    gram: np.ndarray
    factor: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.labels.shape[0])

    def index_of(self, label: complex, tol: float = LABEL_MATCH_TOL) -> int:
        distances = np.abs(self.labels - complex(label))
        index = int(np.argmin(distances))
        if distances[index] > tol:
            raise LabelNotInBasis(f"label {complex(label)!r} is not part of the basis")
        return index

    def column(self, label: complex) -> np.ndarray:
        return self.factor[:, self.index_of(label)]

    def residue_expansion(self) -> np.ndarray:
        """Matrix whose column k expands |e_k> over the coherent states."""
        return np.linalg.inv(self.factor)


def gram_matrix(labels: Sequence[complex]) -> np.ndarray:
    arr = np.asarray(labels, dtype=complex).reshape(-1)
    gram = overlap(arr[:, None], arr[None, :])
    np.fill_diagonal(gram, 1.0)
    return gram


def orthonormalize(labels: Sequence[complex]) -> OrthoBasis:
    """Cholesky-factor the Gram matrix of ``labels`` without pivoting."""
    arr = np.array([as_label(v) for v in np.asarray(labels, dtype=complex).reshape(-1)], dtype=complex)
    dim = arr.shape[0]
    if not 1 <= dim <= MAX_BASIS_DIM:
        raise ValueError(f"basis size must be within 1..{MAX_BASIS_DIM}, got {dim}")
    if len(set(arr.tolist())) != dim:
        raise ValueError("basis labels must be pairwise distinct")

    gram = gram_matrix(arr)
    det = float(np.linalg.det(gram).real)
    if det < GRAM_DET_THRESHOLD:
        raise GramIllConditioned(f"det(G)={det:.3e} below {GRAM_DET_THRESHOLD:g} for labels {arr.tolist()}")
    try:
        lower = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise GramIllConditioned(f"Gram matrix is not positive definite for labels {arr.tolist()}") from exc
    factor = np.triu(lower.conj().T)
    arr.setflags(write=False)
    gram.setflags(write=False)
    factor.setflags(write=False)
    LOGGER.debug("orthonormalized %d labels, det(G)=%.3e", dim, det)
    return OrthoBasis(labels=arr, gram=gram, factor=factor)


def inner(x: Superposition, y: Superposition) -> complex:
    if x.n_modes != y.n_modes:
        raise ModeMismatch(f"inner product of {x.n_modes}-mode and {y.n_modes}-mode states")
    if x.n_terms == 0 or y.n_terms == 0:
        return 0j
    weights = np.ones((x.n_terms, y.n_terms), dtype=complex)
    for mode in range(x.n_modes):
        weights *= overlap(x.labels[:, mode][:, None], y.labels[:, mode][None, :])
    return complex(np.conj(x.coeffs) @ weights @ y.coeffs)


def norm_squared(x: Superposition) -> float:
    return float(inner(x, x).real)


def normalize(x: Superposition) -> Superposition:
    value = norm_squared(x)
    if value <= ZERO_NORM_THRESHOLD:
        raise ZeroNorm(f"state norm^2 {value:.3e} is too small to normalize")
    return x.scaled(1.0 / math.sqrt(value))


def mode_bases(x: Superposition, modes: Iterable[int] | None = None) -> list[OrthoBasis]:
    selected = range(x.n_modes) if modes is None else modes
    return [orthonormalize(x.mode_labels(mode)) for mode in selected]


def coefficient_tensor(x: Superposition, bases: Sequence[OrthoBasis]) -> np.ndarray:
    """Coefficients of ``x`` over the tensor product of per-mode bases."""
    if len(bases) != x.n_modes:
        raise ModeMismatch(f"{len(bases)} bases for a {x.n_modes}-mode state")
    shape = tuple(basis.dim for basis in bases)
    tensor = np.zeros(shape, dtype=complex)
    for coeff, row in zip(x.coeffs, x.labels):
        columns = [basis.column(label) for basis, label in zip(bases, row)]
        tensor += coeff * reduce(np.multiply.outer, columns)
    return tensor


def coefficient_matrix(x: Superposition, basis1: OrthoBasis, basis2: OrthoBasis) -> np.ndarray:
    if x.n_modes != 2:
        raise ModeMismatch(f"coefficient_matrix needs a two-mode state, got {x.n_modes} modes")
    return coefficient_tensor(x, [basis1, basis2])


__all__ = [
    "CoherentLabel",
    "OrthoBasis",
    "Superposition",
    "as_label",
    "coefficient_matrix",
    "coefficient_tensor",
    "gram_matrix",
    "inner",
    "mode_bases",
    "norm_squared",
    "normalize",
    "orthonormalize",
    "overlap",
]
