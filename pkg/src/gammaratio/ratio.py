"""Both sides of the gamma-ratio inequality and the two-sided envelope.

With Q(x, y) = [Gamma(x+y+1) / Gamma(y+1)]^(1/x):

    lhs = Q(x, y) / Q(x+1, y)        rhs = sqrt((x+y) / (x+y+1))

lhs < rhs for x > 1, lhs > rhs for 0 < x < 1, and equality at x = 1.  For
x > 1 the Guo-Qi bound (x+y+1)/(x+y+2) < lhs closes the envelope from below.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .kernels import DomainPoint
from .specfun import NATIVE

__all__ = [
    "EQUALITY_TOLERANCE",
    "BoundVerdict",
    "ExpectedOrder",
    "envelope",
    "guo_qi_lower",
    "log_normalized_ratio",
    "normalized_ratio",
    "theorem1_sides",
]

# |log rhs - log lhs| accepted as equality on the line x = 1.
EQUALITY_TOLERANCE = 1e-10


class ExpectedOrder(enum.Enum):
    LHS_BELOW = "lhs_below"
    EQUAL = "equal"
    LHS_ABOVE = "lhs_above"

    @classmethod
    def for_x(cls, x) -> ExpectedOrder:
        if x > 1:
            return cls.LHS_BELOW
        if x < 1:
            return cls.LHS_ABOVE
        return cls.EQUAL


@dataclass(frozen=True)
class BoundVerdict:
    point: DomainPoint
    lhs: float
    rhs: float
    guo_qi_lower: float
    margin: float
    log_margin: float
    expected_order: ExpectedOrder
    passed: bool


def log_normalized_ratio(p: DomainPoint, arith=NATIVE):
    """log Q(x, y) = [log Gamma(x+y+1) - log Gamma(y+1)] / x."""
    x, y = arith.num(p.x), arith.num(p.y)
    return arith.log_gamma_diff(y + 1, x) / x


def normalized_ratio(p: DomainPoint, arith=NATIVE):
    return arith.exp(log_normalized_ratio(p, arith))


def _log_sides(p: DomainPoint, arith):
    x, y = arith.num(p.x), arith.num(p.y)
    log_lhs = arith.log_gamma_diff(y + 1, x) / x - arith.log_gamma_diff(y + 1, x + 1) / (x + 1)
    log_rhs = -arith.log1p(1 / (x + y)) / 2
    return log_lhs, log_rhs


def theorem1_sides(p: DomainPoint, arith=NATIVE):
    """(lhs, rhs); lhs is formed in log space and exponentiated once."""
    log_lhs, _ = _log_sides(p, arith)
    x, y = arith.num(p.x), arith.num(p.y)
    return arith.exp(log_lhs), arith.sqrt((x + y) / (x + y + 1))


def guo_qi_lower(p: DomainPoint, arith=NATIVE):
    x, y = arith.num(p.x), arith.num(p.y)
    return (x + y + 1) / (x + y + 2)


def envelope(p: DomainPoint, arith=NATIVE) -> BoundVerdict:
    """Evaluate both sides and the lower bound and judge the ordering.

    For x > 1 the verdict requires guo_qi_lower < lhs < rhs; for x < 1 only
    lhs > rhs is claimed; at x = 1 the two sides must agree to
    ``EQUALITY_TOLERANCE`` in log space.
    """
    log_lhs, log_rhs = _log_sides(p, arith)
    lhs, rhs = theorem1_sides(p, arith)
    lower = guo_qi_lower(p, arith)
    log_margin = log_rhs - log_lhs
    order = ExpectedOrder.for_x(p.x)
    if order is ExpectedOrder.LHS_BELOW:
        passed = lower < lhs < rhs
    elif order is ExpectedOrder.LHS_ABOVE:
        passed = lhs > rhs
    else:
        passed = abs(log_margin) <= EQUALITY_TOLERANCE
    return BoundVerdict(
        point=p,
        lhs=lhs,
        rhs=rhs,
        guo_qi_lower=lower,
        margin=rhs - lhs,
        log_margin=log_margin,
        expected_order=order,
        passed=bool(passed),
    )
