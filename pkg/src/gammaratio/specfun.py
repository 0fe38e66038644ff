"""Log-gamma, digamma, trigamma and tetragamma on the positive real axis.

The double-precision path shifts the argument upward with the recurrence
psi(z + 1) = psi(z) + 1/z until it clears ``EvalPolicy.shift_threshold`` and
then sums the Stirling/de Moivre asymptotic series.  Where the result
passes through zero a Taylor series takes over so relative accuracy holds
there too: log-gamma on (0, 3.5] goes through the series about z = 2
(covering the zeros at 1 and 2), digamma near its positive root through
the series about that root.

The ``oracle_*`` functions run the same shift-plus-series scheme in mpmath
arithmetic at ``oracle_precision_bits`` with twice the threshold and twice
the number of series terms.  They are the accuracy referee for the fast path.

``NativeArithmetic`` and ``ExtendedArithmetic`` bundle either family behind
one duck-typed surface so that formula code can be evaluated in doubles or
in extended precision without change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath.ctx_mp import MPContext

from ._coefficients import (
    DIGAMMA_AT_ROOT,
    DIGAMMA_ROOT_HI,
    DIGAMMA_ROOT_LO,
    LGAMMA_AT_2,
)

__all__ = [
    "DEFAULT_POLICY",
    "DomainError",
    "EvalPolicy",
    "ExtendedArithmetic",
    "NativeArithmetic",
    "digamma",
    "digamma_diff",
    "log_gamma",
    "log_gamma_diff",
    "oracle_digamma",
    "oracle_log_gamma",
    "oracle_tetragamma",
    "oracle_trigamma",
    "tetragamma",
    "tetragamma_lower_bound",
    "trigamma",
    "trigamma_lower_bound",
]

NATIVE_MANTISSA_BITS = 53
HALF_LOG_2PI = 0.91893853320467274178

# Half-width of the window around the digamma root served by the root series.
_ROOT_WINDOW = 0.25


class DomainError(ValueError):
    """Raised when an argument is not a finite positive real."""


@dataclass(frozen=True)
class EvalPolicy:
    """Tuning for the special-function evaluators.

    shift_threshold:
        smallest argument at which the asymptotic series is applied.
    series_terms:
        number of Bernoulli correction terms in the asymptotic series.
    oracle_precision_bits:
        working precision of the extended-precision oracle.
    """

    shift_threshold: float = 12.0
    series_terms: int = 6
    oracle_precision_bits: int = 128

    def __post_init__(self):
        if not self.shift_threshold >= 8:
            raise ValueError(f"shift_threshold must be >= 8, got {self.shift_threshold}")
        if self.series_terms < 4:
            raise ValueError(f"series_terms must be >= 4, got {self.series_terms}")
        if self.oracle_precision_bits < 2 * NATIVE_MANTISSA_BITS:
            raise ValueError(
                f"oracle_precision_bits must be >= {2 * NATIVE_MANTISSA_BITS}, "
                f"got {self.oracle_precision_bits}"
            )


DEFAULT_POLICY = EvalPolicy()


def _require_positive(z, name="z"):
    if not z > 0 or z == math.inf:
        raise DomainError(f"{name} must be a finite positive real, got {z!r}")


def _check(z, name="z") -> float:
    try:
        z = float(z)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {z!r}") from None
    _require_positive(z, name)
    return z


# -- Bernoulli-number coefficient tables ------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_even(n: int) -> tuple[Fraction, ...]:
    """B_2, B_4, ..., B_2n as exact fractions."""
    return tuple(Fraction(*map(int, mpmath.bernfrac(2 * k))) for k in range(1, n + 1))


@lru_cache(maxsize=None)
def _series_coefficients(n: int) -> dict[str, tuple[Fraction, ...]]:
    b = _bernoulli_even(n)
    return {
        "log_gamma": tuple(b[k - 1] / (2 * k * (2 * k - 1)) for k in range(1, n + 1)),
        "digamma": tuple(b[k - 1] / (2 * k) for k in range(1, n + 1)),
        "trigamma": b,
        "tetragamma": tuple((2 * k + 1) * b[k - 1] for k in range(1, n + 1)),
    }


@lru_cache(maxsize=None)
def _float_coefficients(n: int, kind: str) -> tuple[float, ...]:
    return tuple(float(c) for c in _series_coefficients(n)[kind])


def _horner(coeffs, w):
    """sum_k coeffs[k] * w**k for k = 0..len-1."""
    s = 0.0
    for c in reversed(coeffs):
        s = s * w + c
    return s


# -- Double-precision evaluators --------------------------------------------


def _lgamma_near_2(t: float) -> float:
    """log Gamma(2 + t) for |t| <= 0.5."""
    return t * _horner(LGAMMA_AT_2, t)


def _stirling_log_gamma(z: float, terms: int) -> float:
    w = 1.0 / (z * z)
    tail = _horner(_float_coefficients(terms, "log_gamma"), w) / z
    return (z - 0.5) * math.log(z) - z + HALF_LOG_2PI + tail


def log_gamma(z, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Natural log of the gamma function for z > 0."""
    z = _check(z)
    if z <= 3.5:
        # Both zeros of log Gamma (z = 1, 2) sit here; the series about 2 keeps
        # relative accuracy.  The offsets z - 1, z - 2, z - 3 are exact.
        if z < 0.5:
            return _lgamma_near_2(z) - math.log(z) - math.log1p(z)
        if z < 1.5:
            t = z - 1.0
            return _lgamma_near_2(t) - math.log1p(t)
        if z <= 2.5:
            return _lgamma_near_2(z - 2.0)
        return _lgamma_near_2(z - 3.0) + math.log(z - 1.0)
    prod = 1.0
    while z < policy.shift_threshold:
        prod *= z
        z += 1.0
    return _stirling_log_gamma(z, policy.series_terms) - math.log(prod)


def _stirling_digamma(z: float, terms: int) -> float:
    w = 1.0 / (z * z)
    return math.log(z) - 0.5 / z - w * _horner(_float_coefficients(terms, "digamma"), w)


def digamma(z, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Logarithmic derivative of the gamma function for z > 0."""
    z = _check(z)
    if abs(z - DIGAMMA_ROOT_HI) <= _ROOT_WINDOW:
        # Sterbenz: z - DIGAMMA_ROOT_HI is exact here.
        d = (z - DIGAMMA_ROOT_HI) - DIGAMMA_ROOT_LO
        return d * _horner(DIGAMMA_AT_ROOT, d)
    acc = 0.0
    while z < policy.shift_threshold:
        acc += 1.0 / z
        z += 1.0
    return _stirling_digamma(z, policy.series_terms) - acc


def trigamma(z, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """First derivative of digamma for z > 0."""
    z = _check(z)
    acc = 0.0
    while z < policy.shift_threshold:
        r = 1.0 / z
        acc += r * r
        z += 1.0
    w = 1.0 / (z * z)
    series = 1.0 / z + 0.5 * w + (w / z) * _horner(_float_coefficients(policy.series_terms, "trigamma"), w)
    return series + acc


def tetragamma(z, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """Second derivative of digamma for z > 0."""
    z = _check(z)
    acc = 0.0
    while z < policy.shift_threshold:
        r = 1.0 / z
        acc += 2.0 * r * r * r
        z += 1.0
    w = 1.0 / (z * z)
    series = -w - w / z - w * w * _horner(_float_coefficients(policy.series_terms, "tetragamma"), w)
    return series - acc


def log_gamma_diff(a, d, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """log Gamma(a + d) - log Gamma(a).

    Evaluated without forming either log-gamma value, so the result keeps
    full relative accuracy when d is small compared with a.
    """
    a = _check(a, "a")
    d = float(d)
    _check(a + d, "a + d")
    if d == 0.0:
        return 0.0
    acc = 0.0
    while min(a, a + d) < policy.shift_threshold:
        acc += math.log1p(d / a)
        a += 1.0
    q = math.log1p(d / a)
    w = 1.0 / (a * a)
    tail = 0.0
    power = 1.0 / a
    for k, c in enumerate(_float_coefficients(policy.series_terms, "log_gamma"), start=1):
        tail += c * power * math.expm1((1 - 2 * k) * q)
        power *= w
    return tail + ((a - 0.5) * q + d * math.log(a + d) - d) - acc


def digamma_diff(a, d, policy: EvalPolicy = DEFAULT_POLICY) -> float:
    """digamma(a + d) - digamma(a), accurate when d is small compared with a."""
    a = _check(a, "a")
    d = float(d)
    _check(a + d, "a + d")
    if d == 0.0:
        return 0.0
    acc = 0.0
    while min(a, a + d) < policy.shift_threshold:
        acc += d / (a * (a + d))
        a += 1.0
    q = math.log1p(d / a)
    w = 1.0 / (a * a)
    tail = 0.0
    power = w
    for k, c in enumerate(_float_coefficients(policy.series_terms, "digamma"), start=1):
        tail += c * power * math.expm1(-2 * k * q)
        power *= w
    return (q + 0.5 * d / (a * (a + d)) - tail) + acc


def trigamma_lower_bound(z):
    """1/z + 1/(2 z^2); a strict lower bound for trigamma on z > 0.

    Works on floats or on mpmath numbers.
    """
    _require_positive(z)
    return 1 / z + 1 / (2 * z * z)


def tetragamma_lower_bound(z):
    """-1/z^2 - 1/z^3 - 1/(2 z^4); a strict lower bound for tetragamma on z > 0."""
    _require_positive(z)
    z2 = z * z
    return -1 / z2 - 1 / (z2 * z) - 1 / (2 * z2 * z2)


# -- Extended-precision oracle ----------------------------------------------


@lru_cache(maxsize=None)
def _oracle_context(bits: int) -> MPContext:
    # Private context: precision is fixed for its lifetime, so callers on other
    # threads never observe a precision change.
    ctx = MPContext()
    ctx.prec = bits
    return ctx


def _oracle_setup(z, policy: EvalPolicy):
    ctx = _oracle_context(policy.oracle_precision_bits)
    try:
        z = ctx.mpf(z)
    except (TypeError, ValueError):
        raise DomainError(f"z must be a real number, got {z!r}") from None
    if not z > 0 or ctx.isinf(z):
        raise DomainError(f"z must be a finite positive real, got {z!r}")
    coeffs = _mp_coefficients(policy.oracle_precision_bits, 2 * policy.series_terms)
    return ctx, z, 2 * policy.shift_threshold, coeffs


@lru_cache(maxsize=None)
def _mp_coefficients(bits: int, n: int) -> dict:
    ctx = _oracle_context(bits)
    return {
        kind: tuple(ctx.mpf(c.numerator) / c.denominator for c in fracs)
        for kind, fracs in _series_coefficients(n).items()
    }


def _mp_horner(ctx, coeffs, w):
    s = ctx.zero
    for c in reversed(coeffs):
        s = s * w + c
    return s


def oracle_log_gamma(z, policy: EvalPolicy = DEFAULT_POLICY):
    """log Gamma(z) in extended precision (mpmath number)."""
    ctx, z, threshold, coeffs = _oracle_setup(z, policy)
    prod = ctx.one
    while z < threshold:
        prod *= z
        z += 1
    w = 1 / (z * z)
    tail = _mp_horner(ctx, coeffs["log_gamma"], w) / z
    return (z - ctx.mpf(1) / 2) * ctx.log(z) - z + ctx.log(2 * ctx.pi) / 2 + tail - ctx.log(prod)


def oracle_digamma(z, policy: EvalPolicy = DEFAULT_POLICY):
    """digamma(z) in extended precision."""
    ctx, z, threshold, coeffs = _oracle_setup(z, policy)
    acc = ctx.zero
    while z < threshold:
        acc += 1 / z
        z += 1
    w = 1 / (z * z)
    return ctx.log(z) - 1 / (2 * z) - w * _mp_horner(ctx, coeffs["digamma"], w) - acc


def oracle_trigamma(z, policy: EvalPolicy = DEFAULT_POLICY):
    """trigamma(z) in extended precision."""
    ctx, z, threshold, coeffs = _oracle_setup(z, policy)
    acc = ctx.zero
    while z < threshold:
        acc += 1 / (z * z)
        z += 1
    w = 1 / (z * z)
    return 1 / z + w / 2 + (w / z) * _mp_horner(ctx, coeffs["trigamma"], w) + acc


def oracle_tetragamma(z, policy: EvalPolicy = DEFAULT_POLICY):
    """tetragamma(z) in extended precision."""
    ctx, z, threshold, coeffs = _oracle_setup(z, policy)
    acc = ctx.zero
    while z < threshold:
        acc += 2 / (z * z * z)
        z += 1
    w = 1 / (z * z)
    return -w - w / z - w * w * _mp_horner(ctx, coeffs["tetragamma"], w) - acc


# -- Arithmetic backends ----------------------------------------------------


@dataclass(frozen=True)
class NativeArithmetic:
    """Double-precision numbers and the fast evaluators."""

    policy: EvalPolicy = DEFAULT_POLICY

    def num(self, value) -> float:
        return float(value)

    def log(self, value):
        return math.log(value)

    def log1p(self, value):
        return math.log1p(value)

    def exp(self, value):
        return math.exp(value)

    def sqrt(self, value):
        return math.sqrt(value)

    def log_gamma(self, z):
        return log_gamma(z, self.policy)

    def digamma(self, z):
        return digamma(z, self.policy)

    def trigamma(self, z):
        return trigamma(z, self.policy)

    def tetragamma(self, z):
        return tetragamma(z, self.policy)

    def log_gamma_diff(self, a, d):
        return log_gamma_diff(a, d, self.policy)

    def digamma_diff(self, a, d):
        return digamma_diff(a, d, self.policy)


@dataclass(frozen=True)
class ExtendedArithmetic:
    """mpmath numbers at the policy's oracle precision and the oracle evaluators.

    Differences are formed literally from two oracle values; the extra
    working precision absorbs the cancellation.
    """

    policy: EvalPolicy = DEFAULT_POLICY

    @property
    def ctx(self) -> MPContext:
        return _oracle_context(self.policy.oracle_precision_bits)

    def num(self, value):
        return self.ctx.mpf(value)

    def log(self, value):
        return self.ctx.log(value)

    def log1p(self, value):
        return self.ctx.log1p(value)

    def exp(self, value):
        return self.ctx.exp(value)

    def sqrt(self, value):
        return self.ctx.sqrt(value)

    def log_gamma(self, z):
        return oracle_log_gamma(z, self.policy)

    def digamma(self, z):
        return oracle_digamma(z, self.policy)

    def trigamma(self, z):
        return oracle_trigamma(z, self.policy)

    def tetragamma(self, z):
        return oracle_tetragamma(z, self.policy)

    def log_gamma_diff(self, a, d):
        a = self.num(a)
        return oracle_log_gamma(a + d, self.policy) - oracle_log_gamma(a, self.policy)

    def digamma_diff(self, a, d):
        a = self.num(a)
        return oracle_digamma(a + d, self.policy) - oracle_digamma(a, self.policy)


NATIVE = NativeArithmetic()
EXTENDED = ExtendedArithmetic()
