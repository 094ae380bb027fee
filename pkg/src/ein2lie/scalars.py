"""Scalar arithmetic shared by all tensor computations.

Every tensor entry is either an exact rational (`fractions.Fraction`,
ints included) or a float.  Exact values survive arbitrary arithmetic
without rounding; a single float input contaminates a computation and
promotes it to float, which is the intended behavior for parameter
points that are irrational by construction (square-root branch points).

Equality is context dependent: exact values compare with ``==``, floats
compare against a tolerance.  `Mode` packages that decision so every
operation can accept an explicit mode or infer one from its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[Fraction, float]

DEFAULT_TOLERANCE = 1e-9

EXACT = "exact"
APPROX = "approx"


def as_scalar(value) -> Scalar:
    """Normalize a number: exact rational where possible, float otherwise.

    ints and other rationals become Fractions; strings parse exactly
    ("3", "-5/2", "0.25"); floats stay floats.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def parse_scalar(text: str) -> Scalar:
    """Parse "p/q", integer, or decimal text into an exact rational.

    Falls back to float only for text Fraction cannot represent
    (e.g. "inf" is rejected, "1.5e-3" is exact).
    """
    stripped = text.strip()
    try:
        return Fraction(stripped)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def is_exact(value) -> bool:
    return isinstance(value, Rational)


def format_scalar(value: Scalar) -> str:
    """Render exact values as "p" or "p/q", floats with 17 significant digits."""
    if is_exact(value):
        frac = Fraction(value)
        if frac.denominator == 1:
            return str(frac.numerator)
        return f"{frac.numerator}/{frac.denominator}"
    return format(float(value), ".17g")


@dataclass(frozen=True)
class Mode:
    """Equality context: exact rational tests, or |x| <= tolerance tests."""

    kind: str = EXACT
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in (EXACT, APPROX):
            raise ValueError(f"unknown mode {self.kind!r}")
        if self.kind == APPROX and not self.tolerance > 0:
            raise ValueError("approx mode requires tolerance > 0")
        if self.kind == EXACT and self.tolerance != 0:
            raise ValueError("exact mode admits no tolerance")

    @classmethod
    def exact(cls) -> "Mode":
        return cls(EXACT)

    @classmethod
    def approx(cls, tolerance: float = DEFAULT_TOLERANCE) -> "Mode":
        return cls(APPROX, float(tolerance))

    @classmethod
    def for_values(cls, values: Iterable, tolerance: float = DEFAULT_TOLERANCE) -> "Mode":
        """Exact when every value is rational, approx otherwise."""
        if all(is_exact(v) for v in values):
            return cls.exact()
        return cls.approx(tolerance)

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT

    def is_zero(self, value: Scalar) -> bool:
        if self.kind == EXACT:
            return value == 0
        return abs(value) <= self.tolerance

    def is_nonzero(self, value: Scalar) -> bool:
        # Strict inequalities in approx mode read |x| > tolerance: points
        # within tolerance of a constraint surface are deliberately rejected.
        return not self.is_zero(value)

    def eq(self, x: Scalar, y: Scalar) -> bool:
        return self.is_zero(x - y)
