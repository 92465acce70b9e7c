"""Deterministic number formatting for sweep files and CLI output."""
from __future__ import annotations

import math

SIGNIFICANT_DIGITS = 12
_FIXED_RANGE = (1e-3, 1e3)


def format_float(value: float) -> str:
    """Twelve digits: fixed notation on [1e-3, 1e3), scientific elsewhere."""
    number = float(value)
    if math.isnan(number):
        return "nan"
    if math.isinf(number):
        return "inf" if number > 0 else "-inf"
    if number == 0.0:
        return f"{0.0:.{SIGNIFICANT_DIGITS}f}"
    low, high = _FIXED_RANGE
    if low <= abs(number) < high:
        return f"{number:.{SIGNIFICANT_DIGITS}f}"
    return f"{number:.{SIGNIFICANT_DIGITS - 1}e}"


def format_complex(value: complex) -> str:
    """Real part alone when the imaginary part is exactly zero, ``re,im`` otherwise."""
    number = complex(value)
    if number.imag == 0.0:
        return format_float(number.real)
    return f"{format_float(number.real)},{format_float(number.imag)}"


__all__ = ["SIGNIFICANT_DIGITS", "format_complex", "format_float"]
