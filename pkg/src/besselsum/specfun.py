"""Bessel functions J_nu, I_nu and spherical j_ell for real order and x >= 0.

Evaluation is backed by scipy.special; this module pins down the edge cases
the rest of the library relies on: exact reflection J_{-n} = (-1)^n J_n for
integer n, the x = 0 limits, overflow signalling for I_nu, and exact
order classification (integer / half-integer detection with tolerance 1e-12,
matching what survives CLI text parsing).

All functions are pure; there is no shared mutable state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .errors import DivergentAtZero, DomainError

#: tolerance for classifying an order as integer or half-integer
INTEGER_TOL = 1e-12


class OrderKind(enum.Enum):
    NEGATIVE_INTEGER = "negative integer"
    NONNEGATIVE_INTEGER = "non-negative integer"
    HALF_INTEGER = "half-integer"
    GENERIC = "generic real"


def classify_order(nu: float) -> OrderKind:
    """Classify a real order, with tolerance INTEGER_TOL for the exact classes."""
    if not math.isfinite(nu):
        raise DomainError(f"order must be finite, got {nu!r}")
    nearest = round(nu)
    if abs(nu - nearest) <= INTEGER_TOL:
        return OrderKind.NEGATIVE_INTEGER if nearest < 0 else OrderKind.NONNEGATIVE_INTEGER
    if abs(nu - (math.floor(nu) + 0.5)) <= INTEGER_TOL:
        return OrderKind.HALF_INTEGER
    return OrderKind.GENERIC


@dataclass(frozen=True)
class Order:
    """A real Bessel order together with its exact classification."""

    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError(f"order must be finite, got {self.value!r}")

    @property
    def kind(self) -> OrderKind:
        return classify_order(self.value)

    @property
    def is_negative_integer(self) -> bool:
        return self.kind is OrderKind.NEGATIVE_INTEGER

    @property
    def is_integer(self) -> bool:
        return self.kind in (OrderKind.NEGATIVE_INTEGER, OrderKind.NONNEGATIVE_INTEGER)

    def as_integer(self) -> int:
        if not self.is_integer:
            raise DomainError(f"order {self.value} is not an integer")
        return int(round(self.value))


def _order_value(nu) -> float:
    return float(nu.value) if isinstance(nu, Order) else float(nu)


def bessel_j(nu, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for real nu, x >= 0.

    Negative integer orders go through the reflection J_{-n} = (-1)^n J_n,
    exactly as computed.  J_nu(0) is 1 for nu = 0, 0 for nu > 0 (and for
    negative integer nu), and raises DivergentAtZero for negative
    non-integer nu.
    """
    v = _order_value(nu)
    x = float(x)
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    kind = classify_order(v)
    if kind is OrderKind.NEGATIVE_INTEGER:
        n = -round(v)
        sign = -1.0 if n % 2 else 1.0
        return sign * bessel_j(float(n), x)
    if x == 0.0:
        if kind is OrderKind.NONNEGATIVE_INTEGER and round(v) == 0:
            return 1.0
        if v > 0:
            return 0.0
        raise DivergentAtZero(f"J_nu(0) diverges for negative non-integer nu={v}")
    return float(_sp.jv(v, x))


def jv_array(nu: float, x: np.ndarray) -> np.ndarray:
    """Vectorized J_nu over strictly positive x, reflecting negative integer orders."""
    v = float(nu)
    if classify_order(v) is OrderKind.NEGATIVE_INTEGER:
        n = -round(v)
        sign = -1.0 if n % 2 else 1.0
        return sign * _sp.jv(float(n), x)
    return _sp.jv(v, x)


def bessel_i(nu, x: float) -> float:
    """Modified Bessel function I_nu(x) for real nu, x >= 0.

    Raises OverflowError once the unscaled value exceeds the double range;
    callers in the growth regime should use bessel_i_scaled.
    """
    v = _order_value(nu)
    x = float(x)
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    if classify_order(v) is OrderKind.NEGATIVE_INTEGER:
        v = float(-round(v))  # I_{-n} = I_n
    if x == 0.0:
        if abs(v) <= INTEGER_TOL:
            return 1.0
        if v > 0:
            return 0.0
        if classify_order(v) is OrderKind.NONNEGATIVE_INTEGER:
            return 0.0
        raise DivergentAtZero(f"I_nu(0) diverges for negative non-integer nu={v}")
    out = float(_sp.iv(v, x))
    if math.isinf(out):
        raise OverflowError(
            f"I_{v}({x}) exceeds the representable range; use bessel_i_scaled"
        )
    return out


def bessel_i_scaled(nu, x: float) -> float:
    """Exponentially scaled modified Bessel function e^{-x} I_nu(x)."""
    v = _order_value(nu)
    x = float(x)
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    if classify_order(v) is OrderKind.NEGATIVE_INTEGER:
        v = float(-round(v))
    return float(_sp.ive(v, x))


def ive_array(nu: float, x: np.ndarray) -> np.ndarray:
    """Vectorized e^{-x} I_nu(x) over x > 0, folding negative integer orders."""
    v = float(nu)
    if classify_order(v) is OrderKind.NEGATIVE_INTEGER:
        v = float(-round(v))
    return _sp.ive(v, x)


def spherical_j(ell: int, x: float) -> float:
    """Spherical Bessel function j_ell(x) = sqrt(pi/(2x)) J_{ell+1/2}(x)."""
    if ell != int(ell) or ell < 0:
        raise DomainError(f"ell must be a non-negative integer, got {ell!r}")
    x = float(x)
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    return float(_sp.spherical_jn(int(ell), x))


def small_argument_coeff(nu: float, a: float) -> float:
    """Leading coefficient of J_nu(a t) as t -> 0.

    (a/2)^nu / Gamma(nu+1) for nu not a negative integer, else
    (-1)^n (a/2)^n / n! with n = |nu| (the first surviving series term).
    """
    v = float(nu)
    if classify_order(v) is OrderKind.NEGATIVE_INTEGER:
        n = -round(v)
        sign = -1.0 if n % 2 else 1.0
        return sign * (a / 2.0) ** n / math.factorial(n)
    return (a / 2.0) ** v / math.gamma(v + 1.0)
