"""Exact-rational helpers shared by the analytic and sweep layers.

Boundary classification (case thresholds, region edges) is done in
`fractions.Fraction` arithmetic.  Floats are converted through their decimal
repr, so `0.8` becomes 4/5 rather than the binary value
3602879701896397/4503599627370496 -- the user typed a decimal and the
boundaries live on decimal-friendly rationals.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Numeric = Union[int, float, Fraction]


def as_fraction(x: Numeric | str) -> Fraction:
    """Convert to Fraction; floats go via str() to recover the decimal literal."""
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise ValueError(f"cannot convert non-finite float {x!r} to a rational")
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def frac_str(x: Fraction) -> str:
    """Canonical 'num/den' (or plain integer) string for CSV/JSON emission."""
    x = Fraction(x)
    return str(x)


def float_str(x: Numeric) -> str:
    """Shortest round-trip float repr, used for the human-readable CSV columns."""
    return repr(float(x))
