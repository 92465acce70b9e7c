"""Exception hierarchy shared by the numerical core."""
from __future__ import annotations


class EcsError(Exception):
    """Base class for every error raised by :mod:`ecs.core`."""


class ModeMismatch(EcsError, ValueError):
    """Two superpositions with different mode counts were combined."""


class ZeroNorm(EcsError, ValueError):
    """A state with (numerically) vanishing norm cannot be normalized."""


class GramIllConditioned(EcsError, ValueError):
    """Coherent labels are too close to linearly dependent for a qudit basis."""


class LabelNotInBasis(EcsError, ValueError):
    """A coherent label has no column in the given orthonormal basis."""


class NeverGround(EcsError, ValueError):
    """Post-selection on the atomic ground state has zero probability."""


class BadMode(EcsError, ValueError):
    """A mode index is out of range or repeated."""


class BadRecipe(EcsError, ValueError):
    """A generation recipe violates the step ordering rules."""


class NotHermitian(EcsError, ValueError):
    """Matrix handed to the Hermitian eigensolver is not Hermitian."""


class NotNormalized(EcsError, ValueError):
    """Coefficient matrix does not have unit Frobenius norm."""


class BadDims(EcsError, ValueError):
    """Density matrix dimensions do not fit the requested measure."""


class BadSplit(EcsError, ValueError):
    """Bipartition does not split the modes of a density matrix."""


class NegativeRadicand(EcsError, ArithmeticError):
    """Closed-form expression would take the square root of a negative number."""


class DomainError(EcsError, ValueError):
    """Parameter lies outside the domain of a closed form or channel."""


class CutoffTooSmall(EcsError, ValueError):
    """Fock cutoff is too small for the requested amplitudes."""


__all__ = [
    "BadDims",
    "BadMode",
    "BadRecipe",
    "BadSplit",
    "CutoffTooSmall",
    "DomainError",
    "EcsError",
    "GramIllConditioned",
    "LabelNotInBasis",
    "ModeMismatch",
    "NegativeRadicand",
    "NeverGround",
    "NotHermitian",
    "NotNormalized",
    "ZeroNorm",
]
