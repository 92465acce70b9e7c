"""Three-mode monogamy quantities for GHZ-type and qutrit ECS."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .coherent_algebra import Superposition, coefficient_tensor, mode_bases, normalize
from .entanglement_measures import (
    bipartite_matrix,
    clamped_sqrt,
    ensemble_concurrence,
    pure_concurrence,
    wootters_concurrence,
)
from .errors import DomainError
from .optics_channels import lossy_channel, make_ghz_ecs, trace_out

LOGGER = logging.getLogger(__name__)

# well separated labels for the orthogonal-limit qutrit state
VIOLATION_LABELS = (0.0, 10.0, -10.0)


@dataclass(frozen=True)
class MonogamyReport:
    c_ab: float
    c_ad: float
    c_abd: float
    tau: float

    @classmethod
    def from_concurrences(cls, c_ab: float, c_ad: float, c_abd: float) -> "MonogamyReport":
        return cls(c_ab=c_ab, c_ad=c_ad, c_abd=c_abd, tau=c_abd**2 - c_ab**2 - c_ad**2)


def _check_domain(pprime: float, eta: float) -> tuple[float, float]:
    pprime, eta = float(pprime), float(eta)
    if not 0.0 < pprime < 1.0:
        raise DomainError(f"p' must lie in (0, 1), got {pprime}")
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")
    return pprime, eta


def alpha_for_pprime(pprime: float) -> float:
    """Source amplitude whose split labels ``+-alpha/sqrt(3)`` overlap by ``p'``."""
    return math.sqrt(-1.5 * math.log(pprime))


def monogamy_closed_forms(pprime: float, eta: float) -> MonogamyReport:
    p, eta = _check_domain(pprime, eta)
    c_ab = p ** (3 + eta) * (1 - p ** (2 * eta)) / (p ** (3 * eta) - p**6)
    c_abd = clamped_sqrt((1 - p ** (2 * eta)) * (1 - p ** (2 * (3 - eta)))) / (1 - p ** (6 - 3 * eta))
    return MonogamyReport.from_concurrences(c_ab, c_ab, c_abd)


def monogamy_pipeline(pprime: float, eta: float) -> MonogamyReport:
    """Pair concurrences from the simulated lossy three-mode state.

    ``C_A(BD)`` is the pure-state cut at eta = 1 and the closed form below it.
    """
    p, eta = _check_domain(pprime, eta)
    source = make_ghz_ecs(alpha_for_pprime(p))
    state = lossy_channel(source, [0, 1, 2], eta)

    c_ab = wootters_concurrence(trace_out(state, [0, 1]))
    c_ad = wootters_concurrence(trace_out(state, [0, 2]))
    if eta == 1.0:
        tensor = coefficient_tensor(source, mode_bases(source))
        c_abd = pure_concurrence(bipartite_matrix(tensor, [0]))
    else:
        c_abd = monogamy_closed_forms(p, eta).c_abd
    LOGGER.debug("monogamy p'=%.4f eta=%.3f C_AB=%.6f C_AD=%.6f C_A(BD)=%.6f", p, eta, c_ab, c_ad, c_abd)
    return MonogamyReport.from_concurrences(c_ab, c_ad, c_abd)


def antisymmetric_qutrit_state(labels: tuple[float, float, float] = VIOLATION_LABELS) -> Superposition:
    """Totally antisymmetric three-qutrit state with level k carried by ``labels[k]``."""
    signed = [
        (1, (0, 1, 2)),
        (-1, (0, 2, 1)),
        (1, (2, 0, 1)),
        (-1, (2, 1, 0)),
        (1, (1, 2, 0)),
        (-1, (1, 0, 2)),
    ]
    terms = [(sign, tuple(labels[level] for level in levels)) for sign, levels in signed]
    return normalize(Superposition.from_terms(terms))


def qutrit_violation_example() -> tuple[float, float]:
    """Return ``(C_AB^2 + C_AD^2, C_A(BD)^2)`` for the antisymmetric qutrit state."""
    state = antisymmetric_qutrit_state()
    tensor = coefficient_tensor(state, mode_bases(state))
    rhs = pure_concurrence(bipartite_matrix(tensor, [0])) ** 2
    c_ab = ensemble_concurrence(trace_out(state, [0, 1]))
    c_ad = ensemble_concurrence(trace_out(state, [0, 2]))
    return c_ab**2 + c_ad**2, rhs


__all__ = [
    "MonogamyReport",
    "alpha_for_pprime",
    "antisymmetric_qutrit_state",
    "monogamy_closed_forms",
    "monogamy_pipeline",
    "qutrit_violation_example",
]
