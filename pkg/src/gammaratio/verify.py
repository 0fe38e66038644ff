"""Grid sweeps that check the ratio inequality and its supporting lemmas.

Each ``check_*`` function evaluates one claim at every point of a grid and
returns a :class:`CheckReport` with the number of violations and the
smallest margin seen.  Strict inequalities are asserted as ``margin > 0``
with no slack.  Closed-form derivatives are the primary evidence for the
monotonicity claims; central finite differences cross-validate them.

Checks read the functions under test from an ``impl`` namespace (default:
the live library functions), so tests can inject a corrupted kernel and
confirm the check notices.

Points may be evaluated on a thread pool.  Reductions run afterwards in
canonical grid order, so reports do not depend on the thread count.
"""

from __future__ import annotations

import enum
import math
import time
import types
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels, ratio, specfun
from .kernels import INV_SQRT2, DomainPoint
from .specfun import DEFAULT_POLICY, DomainError, EvalPolicy, ExtendedArithmetic, NativeArithmetic

__all__ = [
    "CHECK_NAMES",
    "Axis",
    "CheckReport",
    "FDConfig",
    "GridSpec",
    "Spacing",
    "VerifyConfig",
    "check_alzer_bounds",
    "check_dgdy_identity",
    "check_h_sign",
    "check_lemma1",
    "check_limit_g",
    "check_theorem1",
    "check_u_positive",
    "check_v_closed_form",
    "check_v_monotone",
    "default_impl",
    "fd_agree",
    "fd_partial",
    "fd_slack",
    "map_ordered",
    "run_all",
    "run_check",
]


class Spacing(str, enum.Enum):
    LINEAR = "linear"
    LOG = "log"


@dataclass(frozen=True)
class Axis:
    """One sweep axis.  ``lo == hi`` with ``count == 1`` denotes a single value."""

    lo: float
    hi: float
    count: int
    spacing: Spacing = Spacing.LINEAR

    def __post_init__(self):
        object.__setattr__(self, "spacing", Spacing(self.spacing))
        if not (self.lo > 0 and math.isfinite(self.hi)):
            raise ValueError(f"axis bounds must be finite and positive, got [{self.lo}, {self.hi}]")
        if self.lo == self.hi:
            if self.count != 1:
                raise ValueError("a degenerate axis (lo == hi) must have count 1")
        elif not (self.lo < self.hi and self.count >= 2):
            raise ValueError(f"need lo < hi and count >= 2, got [{self.lo}, {self.hi}] x {self.count}")

    def values(self) -> list[float]:
        if self.count == 1:
            return [float(self.lo)]
        if self.spacing is Spacing.LOG:
            pts = np.geomspace(self.lo, self.hi, self.count)
        else:
            pts = np.linspace(self.lo, self.hi, self.count)
        return [float(t) for t in pts]


@dataclass(frozen=True)
class GridSpec:
    """Rectangular (x, y) sweep; points are ordered y-major (y outer, x inner)."""

    x_min: float = 0.01
    x_max: float = 10.0
    y_min: float = 1e-3
    y_max: float = 1e3
    x_count: int = 200
    y_count: int = 200
    x_spacing: Spacing = Spacing.LINEAR
    y_spacing: Spacing = Spacing.LOG
    x_exclusion_half_width: float = 1e-3

    def __post_init__(self):
        object.__setattr__(self, "x_spacing", Spacing(self.x_spacing))
        object.__setattr__(self, "y_spacing", Spacing(self.y_spacing))
        if not self.x_exclusion_half_width >= 0:
            raise ValueError("x_exclusion_half_width must be >= 0")
        self.x_axis()
        self.y_axis()

    def x_axis(self) -> Axis:
        return Axis(self.x_min, self.x_max, self.x_count, self.x_spacing)

    def y_axis(self) -> Axis:
        return Axis(self.y_min, self.y_max, self.y_count, self.y_spacing)

    def points(self) -> list[DomainPoint]:
        xs = self.x_axis().values()
        return [DomainPoint(x, y) for y in self.y_axis().values() for x in xs]

    def excluded(self, x) -> bool:
        return abs(x - 1) < self.x_exclusion_half_width


@dataclass(frozen=True)
class FDConfig:
    """Second-order central differences.

    The step is ``step * max(1, |coordinate|)``, capped at ``step * (x + y)``:
    every kernel is singular on x + y = 0, and the cap keeps the ratio of
    step to pole distance fixed near that corner.  A finite difference
    agrees with a closed form when
    |fd - closed| <= absolute + relative * |closed|.
    """

    step: float = 1e-5
    relative_tolerance: float = 1e-6
    absolute_tolerance: float = 1e-8

    def __post_init__(self):
        if not 0 < self.step <= 1e-3:
            raise ValueError(f"step must be in (0, 1e-3], got {self.step}")
        if not (self.relative_tolerance > 0 and self.absolute_tolerance > 0):
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    grid: GridSpec | Axis | None
    points_tested: int
    violations: int
    min_margin: float | None
    argmin: tuple[float, ...] | None
    elapsed: float = field(compare=False)

    @property
    def passed(self) -> bool:
        return self.violations == 0


DEFAULT_GRID = GridSpec()
DEFAULT_FD = FDConfig()
DEFAULT_V_AXIS = Axis(1e-3, 1e3, 100, Spacing.LOG)
DEFAULT_Z_AXIS = Axis(1e-2, 1e4, 1000, Spacing.LOG)
DEFAULT_LIMIT_XS = (0.5, 2.0, 5.0)
DEFAULT_LIMIT_EXPONENTS = tuple(range(2, 8))
LIMIT_THRESHOLD = 1e-6


def default_impl() -> types.SimpleNamespace:
    """The functions under test, looked up at call time."""
    names = ["f", "g", "h", "u", "v", "dg_dy", "dh_dx_closed", "du_dx_closed", "dv_dx_closed", "v_at_inv_sqrt2"]
    impl = {name: getattr(kernels, name) for name in names}
    impl["envelope"] = ratio.envelope
    impl["trigamma_lower_bound"] = specfun.trigamma_lower_bound
    impl["tetragamma_lower_bound"] = specfun.tetragamma_lower_bound
    return types.SimpleNamespace(**impl)


# -- finite differences -----------------------------------------------------


def fd_partial(kernel: Callable[[DomainPoint], float], p: DomainPoint, axis: str, cfg: FDConfig = DEFAULT_FD):
    """Central difference of ``kernel`` at ``p`` along axis "x" or "y"."""
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    c = getattr(p, axis)
    step = cfg.step * min(max(1.0, abs(c)), p.x + p.y)
    lo, hi = c - step, c + step
    if not lo > 0:
        raise DomainError(f"finite-difference stencil leaves the domain at {axis}={c!r}")
    if axis == "x":
        minus, plus = DomainPoint(lo, p.y), DomainPoint(hi, p.y)
    else:
        minus, plus = DomainPoint(p.x, lo), DomainPoint(p.x, hi)
    # Divide by the stencil width actually realised, not 2 * step.
    return (kernel(plus) - kernel(minus)) / (hi - lo)


def fd_slack(fd, closed, cfg: FDConfig = DEFAULT_FD) -> float:
    """Tolerance minus discrepancy; non-negative when the two agree."""
    return cfg.absolute_tolerance + cfg.relative_tolerance * abs(closed) - abs(fd - closed)


def fd_agree(fd, closed, cfg: FDConfig = DEFAULT_FD) -> bool:
    return fd_slack(fd, closed, cfg) >= 0


# -- sweep engine -----------------------------------------------------------


def map_ordered(evaluate, items: Sequence, threads: int) -> list:
    """[evaluate(i) for i in items], optionally on a thread pool; order is preserved."""
    if threads <= 1 or len(items) < 2:
        return [evaluate(item) for item in items]
    n_chunks = min(len(items), 4 * threads)
    bounds = np.linspace(0, len(items), n_chunks + 1).astype(int)
    chunks = [items[a:b] for a, b in zip(bounds[:-1], bounds[1:])]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(lambda chunk: [evaluate(item) for item in chunk], chunks)
        return [out for part in parts for out in part]


def _report(name, grid, coords, outcomes, started) -> CheckReport:
    """Reduce per-point (margin, ok) pairs in canonical order."""
    violations = 0
    best = None
    argmin = None
    for where, (margin, ok) in zip(coords, outcomes):
        if not ok:
            violations += 1
        margin = float(margin)
        if best is None or margin < best:
            best, argmin = margin, where
    return CheckReport(
        check_name=name,
        grid=grid,
        points_tested=len(coords),
        violations=violations,
        min_margin=best,
        argmin=argmin,
        elapsed=time.perf_counter() - started,
    )


def _sweep(name, grid, points: list[DomainPoint], evaluate, threads) -> CheckReport:
    started = time.perf_counter()
    outcomes = map_ordered(evaluate, points, threads)
    return _report(name, grid, [(p.x, p.y) for p in points], outcomes, started)


def _native(policy):
    return NativeArithmetic(policy)


# -- checks -----------------------------------------------------------------


def check_theorem1(grid=DEFAULT_GRID, *, impl=None, threads=1, policy=DEFAULT_POLICY) -> CheckReport:
    """sign(g) = sign(x - 1) and the envelope verdict holds at every point.

    Points on x = 1 (reachable when the exclusion band is zero) are the
    equality case: |g| <= EQUALITY_TOLERANCE and an EQUAL verdict.
    The per-point margin is sign(x - 1) * g, or |g| on x = 1.
    """
    impl = impl or default_impl()
    arith = _native(policy)
    points = [p for p in grid.points() if not grid.excluded(p.x)]

    def evaluate(p):
        gv = impl.g(p, arith)
        verdict = impl.envelope(p, arith)
        if p.x == 1:
            ok = (
                abs(gv) <= ratio.EQUALITY_TOLERANCE
                and verdict.expected_order is ratio.ExpectedOrder.EQUAL
                and verdict.passed
            )
            return abs(gv), ok
        margin = gv if p.x > 1 else -gv
        return margin, margin > 0 and verdict.passed

    return _sweep("theorem1", grid, points, evaluate, threads)


def check_lemma1(grid=DEFAULT_GRID, fd=DEFAULT_FD, *, impl=None, threads=1, policy=DEFAULT_POLICY) -> CheckReport:
    """dh/dx < 0 for x >= 1/sqrt(2), with the closed form matching a finite difference of h."""
    impl = impl or default_impl()
    arith = _native(policy)
    points = [p for p in grid.points() if p.x >= INV_SQRT2]

    def evaluate(p):
        closed = impl.dh_dx_closed(p, arith)
        numeric = fd_partial(lambda q: impl.h(q, arith), p, "x", fd)
        return -closed, closed < 0 and fd_agree(numeric, closed, fd)

    return _sweep("lemma1", grid, points, evaluate, threads)


def check_h_sign(grid=DEFAULT_GRID, *, impl=None, threads=1, policy=DEFAULT_POLICY) -> CheckReport:
    """h > 0 on [1/sqrt(2), 1) and h < 0 on (1, inf), outside the exclusion band."""
    impl = impl or default_impl()
    arith = _native(policy)
    points = [p for p in grid.points() if p.x >= INV_SQRT2 and p.x != 1 and not grid.excluded(p.x)]

    def evaluate(p):
        hv = impl.h(p, arith)
        margin = -hv if p.x > 1 else hv
        return margin, margin > 0

    return _sweep("h_sign", grid, points, evaluate, threads)


def check_u_positive(grid=DEFAULT_GRID, fd=DEFAULT_FD, *, impl=None, threads=1, policy=DEFAULT_POLICY) -> CheckReport:
    """On 0 < x <= 1/sqrt(2): u > 0, du/dx < 0 and du/dx < v.

    The margin is the smallest of u, -du/dx and v - du/dx.  The closed-form
    du/dx must also match a finite difference of u.
    """
    impl = impl or default_impl()
    arith = _native(policy)
    points = [p for p in grid.points() if p.x <= INV_SQRT2]

    def evaluate(p):
        uv = impl.u(p, arith)
        du = impl.du_dx_closed(p, arith)
        vv = impl.v(p, arith)
        numeric = fd_partial(lambda q: impl.u(q, arith), p, "x", fd)
        margin = min(uv, -du, vv - du)
        return margin, margin > 0 and fd_agree(numeric, du, fd)

    return _sweep("u_positive", grid, points, evaluate, threads)


def check_v_monotone(grid=DEFAULT_GRID, fd=DEFAULT_FD, *, impl=None, threads=1, policy=DEFAULT_POLICY) -> CheckReport:
    """dv/dx > 0 everywhere, with the closed form matching a finite difference of v."""
    impl = impl or default_impl()
    arith = _native(policy)
    points = grid.points()

    def evaluate(p):
        closed = impl.dv_dx_closed(p, arith)
        numeric = fd_partial(lambda q: impl.v(q, arith), p, "x", fd)
        return closed, closed > 0 and fd_agree(numeric, closed, fd)

    return _sweep("v_monotone", grid, points, evaluate, threads)


def check_v_closed_form(
    y_axis=DEFAULT_V_AXIS, *, rel_tol=1e-11, impl=None, threads=1, policy=DEFAULT_POLICY
) -> CheckReport:
    """v(1/sqrt(2), y) equals its closed form and is negative.

    Runs in extended precision: v cancels to O(y^-6) from O(1/y) terms, far
    below double resolution once y exceeds a few units.  The margin is
    -closed_form.
    """
    impl = impl or default_impl()
    arith = ExtendedArithmetic(policy)
    x = kernels.inv_sqrt2(arith)
    ys = y_axis.values()

    def evaluate(y):
        direct = impl.v(DomainPoint(x, y), arith)
        closed = impl.v_at_inv_sqrt2(y, arith)
        agree = abs(direct - closed) <= rel_tol * abs(closed)
        return -closed, closed < 0 and agree

    started = time.perf_counter()
    outcomes = map_ordered(evaluate, ys, threads)
    return _report("v_closed_form", y_axis, [(INV_SQRT2, y) for y in ys], outcomes, started)


def check_dgdy_identity(grid=DEFAULT_GRID, fd=DEFAULT_FD, *, impl=None, threads=1, policy=DEFAULT_POLICY) -> CheckReport:
    """Finite difference of g in y matches h / (x(x+1)); margin is the tolerance slack."""
    impl = impl or default_impl()
    arith = _native(policy)
    points = grid.points()

    def evaluate(p):
        closed = impl.dg_dy(p, arith)
        numeric = fd_partial(lambda q: impl.g(q, arith), p, "y", fd)
        slack = fd_slack(numeric, closed, fd)
        return slack, slack >= 0

    return _sweep("dgdy_identity", grid, points, evaluate, threads)


def check_limit_g(
    xs=DEFAULT_LIMIT_XS,
    exponents=DEFAULT_LIMIT_EXPONENTS,
    *,
    threshold=LIMIT_THRESHOLD,
    impl=None,
    threads=1,
    policy=DEFAULT_POLICY,
) -> CheckReport:
    """g(x, y) -> 0 as y grows along the ladder y = 10^k.

    At each rung g must carry the sign of x - 1 and |g| must fall strictly
    from the previous rung, so the sequence moves monotonically toward zero.
    At the last rung |g| < threshold.  g decays like 1/y^2, below double
    resolution of f at the top of the ladder, so this runs in extended
    precision.
    """
    impl = impl or default_impl()
    arith = ExtendedArithmetic(policy)
    exponents = list(exponents)
    if any(x == 1 for x in xs):
        raise ValueError("the ladder needs x != 1; g vanishes identically on x = 1")
    coords = [(float(x), float(10**k)) for x in xs for k in exponents]
    started = time.perf_counter()
    values = map_ordered(lambda c: impl.g(DomainPoint(*c), arith), coords, threads)

    outcomes = []
    for i, ((x, _), gv) in enumerate(zip(coords, values)):
        rung = i % len(exponents)
        margins = [gv if x > 1 else -gv]
        if rung > 0:
            margins.append(abs(values[i - 1]) - abs(gv))
        if rung == len(exponents) - 1:
            margins.append(threshold - abs(gv))
        margin = min(margins)
        outcomes.append((margin, margin > 0))
    return _report("limit_g", None, coords, outcomes, started)


def check_alzer_bounds(z_axis=DEFAULT_Z_AXIS, *, impl=None, threads=1, policy=DEFAULT_POLICY) -> CheckReport:
    """trigamma and tetragamma strictly exceed their rational lower bounds.

    Runs in extended precision: the tetragamma margin ~ 1/(6 z^6) drops
    below one ulp of tetragamma itself for large z.
    """
    impl = impl or default_impl()
    arith = ExtendedArithmetic(policy)
    zs = z_axis.values()

    def evaluate(z):
        zz = arith.num(z)
        m1 = arith.trigamma(zz) - impl.trigamma_lower_bound(zz)
        m2 = arith.tetragamma(zz) - impl.tetragamma_lower_bound(zz)
        margin = min(m1, m2)
        return margin, margin > 0

    started = time.perf_counter()
    outcomes = map_ordered(evaluate, zs, threads)
    return _report("alzer_bounds", z_axis, [(z,) for z in zs], outcomes, started)


# -- orchestration ----------------------------------------------------------


@dataclass(frozen=True)
class VerifyConfig:
    grid: GridSpec = DEFAULT_GRID
    fd: FDConfig = DEFAULT_FD
    threads: int = 1
    policy: EvalPolicy = DEFAULT_POLICY
    v_axis: Axis = DEFAULT_V_AXIS
    z_axis: Axis = DEFAULT_Z_AXIS
    limit_xs: tuple[float, ...] = DEFAULT_LIMIT_XS
    limit_exponents: tuple[int, ...] = DEFAULT_LIMIT_EXPONENTS


_RUNNERS = {
    "theorem1": lambda c, impl: check_theorem1(c.grid, impl=impl, threads=c.threads, policy=c.policy),
    "lemma1": lambda c, impl: check_lemma1(c.grid, c.fd, impl=impl, threads=c.threads, policy=c.policy),
    "h_sign": lambda c, impl: check_h_sign(c.grid, impl=impl, threads=c.threads, policy=c.policy),
    "u_positive": lambda c, impl: check_u_positive(c.grid, c.fd, impl=impl, threads=c.threads, policy=c.policy),
    "v_monotone": lambda c, impl: check_v_monotone(c.grid, c.fd, impl=impl, threads=c.threads, policy=c.policy),
    "v_closed_form": lambda c, impl: check_v_closed_form(c.v_axis, impl=impl, threads=c.threads, policy=c.policy),
    "dgdy_identity": lambda c, impl: check_dgdy_identity(c.grid, c.fd, impl=impl, threads=c.threads, policy=c.policy),
    "limit_g": lambda c, impl: check_limit_g(
        c.limit_xs, c.limit_exponents, impl=impl, threads=c.threads, policy=c.policy
    ),
    "alzer_bounds": lambda c, impl: check_alzer_bounds(c.z_axis, impl=impl, threads=c.threads, policy=c.policy),
}

# Canonical report order.
CHECK_NAMES = tuple(_RUNNERS)


def run_check(name: str, config: VerifyConfig = VerifyConfig(), *, impl=None) -> CheckReport:
    if name not in _RUNNERS:
        raise KeyError(f"unknown check {name!r}; choose from {', '.join(CHECK_NAMES)}")
    return _RUNNERS[name](config, impl)


def run_all(config: VerifyConfig = VerifyConfig(), *, impl=None) -> list[CheckReport]:
    return [run_check(name, config, impl=impl) for name in CHECK_NAMES]
