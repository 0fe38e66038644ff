"""Auxiliary functions of the gamma-ratio inequality and their derivatives.

For x, y > 0:

    f(x, y) = [log Gamma(x+y+1) - log Gamma(y+1)] / x - log(x+y) / 2
    g(x, y) = f(x+1, y) - f(x, y)
    h(x, y) = [x + x(x+1) / (2(x+y))] / (x+y+1) - psi(x+y+1) + psi(y+1)
    u(x, y) = h(x, y) / x
    v(x, y) = 1/(2(y+1)^2) + 1/(2(y+1)^3) + 1/(4(y+1)^4)
              + (y-1)/(2(x+y)^2) - (y+2)/(2(x+y+1)^2)

The sign of g decides the direction of the ratio inequality; dg/dy equals
h / (x(x+1)).  Every function takes a ``DomainPoint`` and an arithmetic
backend from :mod:`gammaratio.specfun`; the same formula text runs in
doubles (``NATIVE``) or in extended precision (``EXTENDED``).

Formulas are written as displayed, not simplified, so that the
finite-difference checks in :mod:`gammaratio.verify` can catch a
transcription slip.  The bracketed log-gamma and digamma differences go
through ``log_gamma_diff``/``digamma_diff``, which keep relative accuracy
when y is large next to x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .specfun import NATIVE, DomainError

__all__ = [
    "INV_SQRT2",
    "DomainPoint",
    "dg_dy",
    "dh_dx_closed",
    "du_dx_closed",
    "dv_dx_closed",
    "f",
    "g",
    "h",
    "inv_sqrt2",
    "u",
    "v",
    "v_at_inv_sqrt2",
]

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class DomainPoint:
    """A pair (x, y) with both coordinates finite and strictly positive.

    Coordinates are normally floats; extended-precision callers may store
    mpmath numbers.
    """

    x: float
    y: float

    def __post_init__(self):
        for name in ("x", "y"):
            value = getattr(self, name)
            try:
                ok = value > 0 and value != math.inf
            except TypeError:
                ok = False
            if not ok:
                raise DomainError(f"{name} must be a finite positive real, got {value!r}")

    def shifted(self, dx=0.0, dy=0.0) -> DomainPoint:
        return DomainPoint(self.x + dx, self.y + dy)


def inv_sqrt2(arith=NATIVE):
    """1/sqrt(2) in the backend's number type."""
    return 1 / arith.sqrt(arith.num(2))


def _xy(p: DomainPoint, arith):
    return arith.num(p.x), arith.num(p.y)


def _f(x, y, arith):
    return arith.log_gamma_diff(y + 1, x) / x - arith.log(x + y) / 2


def f(p: DomainPoint, arith=NATIVE):
    x, y = _xy(p, arith)
    return _f(x, y, arith)


def g(p: DomainPoint, arith=NATIVE):
    """f(x+1, y) - f(x, y); positive exactly where the ratio inequality holds."""
    x, y = _xy(p, arith)
    return _f(x + 1, y, arith) - _f(x, y, arith)


def h(p: DomainPoint, arith=NATIVE):
    x, y = _xy(p, arith)
    return (x + x * (x + 1) / (2 * (x + y))) / (x + y + 1) - arith.digamma_diff(y + 1, x)


def dg_dy(p: DomainPoint, arith=NATIVE):
    """Partial derivative of g in y, via h / (x(x+1))."""
    x = arith.num(p.x)
    return h(p, arith) / (x * (x + 1))


def dh_dx_closed(p: DomainPoint, arith=NATIVE):
    x, y = _xy(p, arith)
    s = x + y
    return (
        (y + 1) / (s + 1) ** 2
        + (2 * x * y * (s + 1) + y**2 + y) / (2 * s**2 * (s + 1) ** 2)
        - arith.trigamma(s + 1)
    )


def u(p: DomainPoint, arith=NATIVE):
    return h(p, arith) / arith.num(p.x)


def du_dx_closed(p: DomainPoint, arith=NATIVE):
    x, y = _xy(p, arith)
    return (
        arith.digamma_diff(y + 1, x) / x**2
        - arith.trigamma(x + y + 1) / x
        + (y - 1) / (2 * (x + y) ** 2)
        - (y + 2) / (2 * (x + y + 1) ** 2)
    )


def v(p: DomainPoint, arith=NATIVE):
    """Rational majorant of du/dx; no special functions involved."""
    x, y = _xy(p, arith)
    return (
        1 / (2 * (y + 1) ** 2)
        + 1 / (2 * (y + 1) ** 3)
        + 1 / (4 * (y + 1) ** 4)
        + (y - 1) / (2 * (x + y) ** 2)
        - (y + 2) / (2 * (x + y + 1) ** 2)
    )


def dv_dx_closed(p: DomainPoint, arith=NATIVE):
    x, y = _xy(p, arith)
    s = x + y
    return (3 * x * s * (s + 1) + 3 * x + 2 * y + 1) / (s**3 * (s + 1) ** 3)


def v_at_inv_sqrt2(y, arith=NATIVE):
    """Closed form of v(1/sqrt(2), y); negative for every y > 0."""
    if not y > 0 or y == math.inf:
        raise DomainError(f"y must be a finite positive real, got {y!r}")
    y = arith.num(y)
    r2 = arith.sqrt(arith.num(2))
    c = 5 - 2 * r2
    r = 1 / r2
    numerator = -2 * y**2 - 2 * c * y - c
    denominator = 16 * (y + 1) ** 4 * (r + y) ** 2 * (y + 1 + r) ** 2
    return numerator / denominator
