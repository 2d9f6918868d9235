"""Scalar backends: exact rationals or IEEE doubles, never mixed in one computation.

The rational backend is bit-exact (arbitrary-precision integers underneath);
the float backend carries an absolute tolerance used by every equality check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

RATIONAL_MODE = "rational"
FLOAT_MODE = "float"
DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Backend:
    """Arithmetic mode plus the absolute tolerance used by float equality."""

    mode: str
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.mode not in (RATIONAL_MODE, FLOAT_MODE):
            raise ValueError(f"unknown scalar mode {self.mode!r}")

    def convert(self, value):
        if self.mode == RATIONAL_MODE:
            return value if isinstance(value, Fraction) else Fraction(value)
        return float(value)

    def convert_seq(self, values):
        return tuple(self.convert(v) for v in values)

    def eq(self, a, b):
        if self.mode == RATIONAL_MODE:
            return a == b
        return abs(a - b) <= self.tolerance

    def is_zero(self, value):
        return self.eq(value, 0)

    @property
    def zero(self):
        return Fraction(0) if self.mode == RATIONAL_MODE else 0.0

    @property
    def one(self):
        return Fraction(1) if self.mode == RATIONAL_MODE else 1.0


RATIONAL = Backend(RATIONAL_MODE)
FLOAT64 = Backend(FLOAT_MODE)


def backend_for(mode, tolerance=None):
    """Resolve a CLI-style mode name ("rational" or "f64") to a Backend."""
    name = {"rational": RATIONAL_MODE, "f64": FLOAT_MODE, "float": FLOAT_MODE}.get(mode)
    if name is None:
        raise ValueError(f"unknown scalar mode {mode!r}")
    return Backend(name, DEFAULT_TOLERANCE if tolerance is None else float(tolerance))


def zero_like(value):
    """A zero of the same backend type as ``value``."""
    return Fraction(0) if isinstance(value, (Fraction, int)) else 0.0
