from __future__ import annotations

import math

import numpy as np
import pytest

from ecs.core.coherent_algebra import (
    Superposition,
    as_label,
    coefficient_matrix,
    coefficient_tensor,
    gram_matrix,
    inner,
    mode_bases,
    normalize,
    orthonormalize,
    overlap,
)
from ecs.core.errors import GramIllConditioned, LabelNotInBasis, ModeMismatch, ZeroNorm
from ecs.core.fock_oracle import fock_inner


def _random_labels(rng: np.random.Generator, count: int, radius: float = 3.0) -> list[complex]:
    magnitudes = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    phases = rng.uniform(0.0, 2.0 * math.pi, count)
    return list(magnitudes * np.exp(1j * phases))


def test_overlap_examples() -> None:
    assert overlap(1, -1) == pytest.approx(math.exp(-2.0), abs=1e-15)
    expected = math.exp(-1.0) * complex(math.cos(1.0), math.sin(1.0))
    assert overlap(1, 1j) == pytest.approx(expected, abs=1e-15)


def test_overlap_hermitian_symmetry_and_modulus() -> None:
    rng = np.random.default_rng(7)
    a = np.array(_random_labels(rng, 50))
    b = np.array(_random_labels(rng, 50))

    np.testing.assert_allclose(overlap(a, b), np.conj(overlap(b, a)), atol=1e-14)
    np.testing.assert_allclose(np.abs(overlap(a, b)), np.exp(-np.abs(a - b) ** 2 / 2), atol=1e-14)


def test_as_label_rejects_non_finite() -> None:
    with pytest.raises(ValueError, match="finite"):
        as_label(complex(float("inf"), 0.0))


def test_superposition_merges_identical_labels_and_drops_zeros() -> None:
    state = Superposition.from_terms(
        [
            (1.0, (0.5, -0.5)),
            (2.0, (1.0, 1.0)),
            (0.5, (0.5, -0.5)),
            (-2.0, (1.0, 1.0)),
        ]
    )

    assert state.n_terms == 1
    assert state.coefficient_of((0.5, -0.5)) == 1.5
    assert state.coefficient_of((1.0, 1.0)) == 0


def test_superposition_keeps_first_appearance_order() -> None:
    state = Superposition.from_terms([(1.0, (2.0,)), (1.0, (-1.0,)), (1.0, (2.0,))])

    np.testing.assert_array_equal(state.mode_labels(0), [2.0, -1.0])


def test_inner_rejects_mode_mismatch() -> None:
    with pytest.raises(ModeMismatch):
        inner(Superposition.product(1.0), Superposition.product(1.0, 0.0))


def test_normalize_zero_state_raises() -> None:
    empty = Superposition(np.zeros(0, dtype=complex), np.zeros((0, 2), dtype=complex))

    with pytest.raises(ZeroNorm):
        normalize(empty)


def test_normalize_cancelled_terms_raise() -> None:
    state = Superposition.from_terms([(1.0, (0.3,)), (-1.0, (0.3,))], n_modes=1)

    with pytest.raises(ZeroNorm):
        normalize(state)


@pytest.mark.parametrize("count", [1, 2, 3, 4, 5])
def test_orthonormalize_factor_reproduces_gram(count: int) -> None:
    rng = np.random.default_rng(100 + count)
    for _ in range(20):
        labels = _random_labels(rng, count)
        try:
            basis = orthonormalize(labels)
        except GramIllConditioned:
            continue
        np.testing.assert_allclose(basis.factor.conj().T @ basis.factor, gram_matrix(labels), atol=1e-12)
        np.testing.assert_allclose(basis.factor, np.triu(basis.factor), atol=0.0)


def test_orthonormalize_first_vector_is_first_coherent_state() -> None:
    basis = orthonormalize([0.7, -0.7, 0.2j])

    column = basis.column(0.7)
    assert column[0] == pytest.approx(1.0, abs=1e-15)
    np.testing.assert_allclose(column[1:], 0.0, atol=1e-15)


def test_orthonormalize_rejects_repeated_labels() -> None:
    with pytest.raises(ValueError, match="distinct"):
        orthonormalize([0.5, 0.5])


def test_orthonormalize_rejects_oversized_basis() -> None:
    with pytest.raises(ValueError, match="1..8"):
        orthonormalize([float(k) for k in range(9)])


def test_orthonormalize_rejects_nearly_parallel_labels() -> None:
    with pytest.raises(GramIllConditioned):
        orthonormalize([0.0, 1e-7])


def test_basis_index_of_unknown_label() -> None:
    basis = orthonormalize([1.0, -1.0])

    with pytest.raises(LabelNotInBasis):
        basis.index_of(0.5)


def test_coefficient_matrix_satisfies_parseval() -> None:
    rng = np.random.default_rng(11)
    for _ in range(10):
        labels = _random_labels(rng, 3, radius=2.0)
        coeffs = rng.normal(size=3) + 1j * rng.normal(size=3)
        state = normalize(Superposition.from_terms([(c, (a, -a)) for c, a in zip(coeffs, labels)]))
        basis1, basis2 = mode_bases(state)

        matrix = coefficient_matrix(state, basis1, basis2)

        assert float(np.sum(np.abs(matrix) ** 2)) == pytest.approx(1.0, abs=1e-10)


def test_coefficient_tensor_rejects_wrong_basis_count() -> None:
    state = Superposition.product(1.0, 1.0)

    with pytest.raises(ModeMismatch):
        coefficient_tensor(state, [orthonormalize([1.0])])


def test_coefficient_matrix_rejects_foreign_label() -> None:
    state = Superposition.product(1.0, 2.0)

    with pytest.raises(LabelNotInBasis):
        coefficient_matrix(state, orthonormalize([1.0]), orthonormalize([3.0]))


def test_inner_agrees_with_fock_series() -> None:
    rng = np.random.default_rng(5)
    for _ in range(5):
        x = Superposition.from_terms(
            [(complex(*rng.normal(size=2)), tuple(_random_labels(rng, 2, radius=1.5))) for _ in range(3)]
        )
        y = Superposition.from_terms(
            [(complex(*rng.normal(size=2)), tuple(_random_labels(rng, 2, radius=1.5))) for _ in range(3)]
        )

        assert fock_inner(x, y, 40) == pytest.approx(inner(x, y), abs=1e-8)
