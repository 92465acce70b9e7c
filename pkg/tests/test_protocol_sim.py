from __future__ import annotations

import math

import numpy as np
import pytest

from ecs.core.coherent_algebra import Superposition, inner, norm_squared
from ecs.core.errors import BadRecipe, NeverGround
from ecs.core.protocol_sim import (
    AtomFieldState,
    Dispersive,
    Displace,
    MeasureGround,
    PhaseShift,
    Pulse,
    Recipe,
    apply_dispersive,
    apply_displacement,
    apply_phase_shift,
    apply_pulse,
    canonical_recipe,
    closed_form_coefficients,
    expected_state,
    measure_ground,
    phase_factor,
    run_recipe,
    run_recipe_outcome,
)

OPTIMAL_EPS = (-0.8200, 2.1184, -0.4720)


def _random_eps(rng: np.random.Generator, count: int) -> list[complex]:
    return list(rng.normal(size=count) + 1j * rng.normal(size=count))


def _assert_same_state(actual: Superposition, expected: Superposition, tol: float) -> None:
    assert actual.n_terms == expected.n_terms
    for coeff, labels in expected.terms:
        assert actual.coefficient_of(labels) == pytest.approx(coeff, abs=tol)


def test_phase_factor_is_exact_on_quarter_turns() -> None:
    assert phase_factor(math.pi / 2) == 1j
    assert phase_factor(math.pi) == -1
    assert phase_factor(-math.pi / 2) == -1j
    assert phase_factor(0.3) == pytest.approx(complex(math.cos(0.3), math.sin(0.3)))


def test_pulse_preserves_norm_and_inverts() -> None:
    state = AtomFieldState([0, 1], [0.6, 0.8j], [0.4, -1.1])
    eps = 0.7 - 0.2j

    pulsed = apply_pulse(state, eps)
    restored = apply_pulse(pulsed, -eps)

    assert pulsed.norm_squared() == pytest.approx(state.norm_squared(), abs=1e-14)
    for level, coeff, label in zip(state.levels, state.coeffs, state.labels):
        mask = (restored.levels == level) & (restored.labels == label)
        assert restored.coeffs[mask][0] == pytest.approx(coeff, abs=1e-14)


def test_dispersive_rotates_by_level_and_has_period_four() -> None:
    state = AtomFieldState([0, 1], [1.0, 1.0], [1.0, 1.0])

    once = apply_dispersive(state)
    four = apply_dispersive(apply_dispersive(apply_dispersive(once)))

    assert sorted(zip(once.levels.tolist(), once.labels.tolist())) == [(0, 1j), (1, -1j)]
    np.testing.assert_array_equal(four.labels, state.labels)


def test_phase_shift_and_displacement_on_superposition() -> None:
    state = Superposition.from_terms([(1.0, (1.0,)), (1.0, (-1.0,))])

    shifted = apply_phase_shift(state, math.pi / 2)
    displaced = apply_displacement(state, 0.5)

    np.testing.assert_array_equal(shifted.labels[:, 0], [1j, -1j])
    np.testing.assert_allclose(displaced.labels[:, 0], [1.5, -0.5])


def test_exact_displacement_keeps_inner_products() -> None:
    x = Superposition.from_terms([(1.0, (0.3 + 0.2j,)), (0.5j, (-0.7,))])
    y = Superposition.from_terms([(0.2, (1.1j,)), (1.0, (0.4,))])
    beta = 0.6 - 0.9j

    moved_x = apply_displacement(x, beta, exact_phase=True)
    moved_y = apply_displacement(y, beta, exact_phase=True)

    assert inner(moved_x, moved_y) == pytest.approx(inner(x, y), abs=1e-12)


def test_measure_ground_reports_probability() -> None:
    state = AtomFieldState([0, 1], [0.6, 0.8], [0.0, 0.0])

    cavity, probability = measure_ground(state)

    assert probability == pytest.approx(0.36)
    assert norm_squared(cavity) == pytest.approx(1.0)


def test_measure_ground_raises_without_ground_component() -> None:
    with pytest.raises(NeverGround):
        measure_ground(AtomFieldState.excited(0.5))


@pytest.mark.parametrize(
    "steps",
    [
        (Pulse(0.5), Dispersive(), Pulse(0.5)),
        (Pulse(0.5), Dispersive(), Pulse(0.5), MeasureGround(), MeasureGround()),
        (Dispersive(), Pulse(0.5), MeasureGround()),
        (Pulse(0.5), Dispersive(), MeasureGround()),
        (Pulse(0.5), Dispersive(), Pulse(0.5), MeasureGround(), Pulse(0.1)),
    ],
)
def test_recipe_validation_rejects_malformed_recipes(steps) -> None:
    with pytest.raises(BadRecipe):
        Recipe(tuple(steps)).validate()


def test_recipe_allows_cavity_steps_after_measurement() -> None:
    recipe = Recipe((Pulse(0.5), Dispersive(), Pulse(0.5), MeasureGround(), PhaseShift(), Displace(0.2)))

    recipe.validate()

    assert recipe.order == 1


@pytest.mark.parametrize("count", [2, 3])
def test_run_recipe_matches_closed_form_coefficients(count: int) -> None:
    rng = np.random.default_rng(2024 + count)
    for _ in range(100):
        eps = _random_eps(rng, count)
        alpha = complex(*rng.uniform(0.3, 1.5, size=2))

        state = run_recipe(canonical_recipe(eps, alpha), alpha)

        _assert_same_state(state, expected_state(eps, alpha), tol=1e-12)


def test_single_pass_coefficients_are_printed_forms() -> None:
    eps = (0.4 + 0.1j, -1.2 + 0.5j)

    assert closed_form_coefficients(eps) == [(1, -eps[0] * eps[1].conjugate()), (-1, 1 + 0j)]


def test_optimal_triple_gives_qutrit_weights() -> None:
    alpha = 1.0
    state = run_recipe(canonical_recipe(OPTIMAL_EPS, alpha), alpha)

    reference = state.coefficient_of((2 * alpha,))
    weights = [state.coefficient_of((k * alpha,)) / reference for k in (2, 0, -2)]

    np.testing.assert_allclose(weights, [1.0, 1.35, 1.0], atol=5e-4)


def test_three_pass_recipe_yields_four_equally_spaced_labels() -> None:
    alpha = 0.8
    state = run_recipe(canonical_recipe([0.7, -1.1, 0.9, 0.4], alpha), alpha)

    np.testing.assert_allclose(sorted(state.labels[:, 0].real), [-3 * alpha, -alpha, alpha, 3 * alpha], atol=1e-12)
    np.testing.assert_allclose(state.labels[:, 0].imag, 0.0, atol=1e-12)


def test_run_recipe_outcome_reports_success_probability() -> None:
    outcome = run_recipe_outcome(canonical_recipe([1.0, -1.0], 1.0), 1.0)

    assert 0.0 < outcome.success_probability <= 1.0
    assert norm_squared(outcome.state) == pytest.approx(1.0)


def test_final_displacement_is_appended() -> None:
    recipe = canonical_recipe([0.5, 0.5, 0.5], 1.0, final_displacement=0.25)

    assert recipe.steps[-1] == Displace(0.25)


def test_canonical_recipe_rejects_unsupported_order() -> None:
    with pytest.raises(BadRecipe):
        canonical_recipe([0.1], 1.0)
