import dataclasses
import math

import pytest

from conftest import mutated_impl
from gammaratio import kernels, verify
from gammaratio.kernels import DomainPoint as P
from gammaratio.specfun import DomainError
from gammaratio.verify import Axis, FDConfig, GridSpec, Spacing, VerifyConfig


# -- configuration types --------------------------------------------------------


def test_grid_defaults():
    g = GridSpec()
    assert (g.x_min, g.x_max, g.x_count, g.x_spacing) == (0.01, 10.0, 200, Spacing.LINEAR)
    assert (g.y_min, g.y_max, g.y_count, g.y_spacing) == (1e-3, 1e3, 200, Spacing.LOG)
    assert g.x_exclusion_half_width == 1e-3


def test_grid_points_y_major():
    g = GridSpec(x_min=1, x_max=2, x_count=2, y_min=1, y_max=100, y_count=3)
    pts = [(p.x, p.y) for p in g.points()]
    assert pts[0] == (1.0, 1.0) and pts[1] == (2.0, 1.0)
    assert math.isclose(pts[2][1], 10.0) and pts[-1] == (2.0, 100.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(x_min=2, x_max=1),
        dict(x_count=1),
        dict(y_min=0),
        dict(x_exclusion_half_width=-1e-3),
        dict(x_min=1, x_max=1, x_count=2),
    ],
)
def test_grid_validation(kwargs):
    with pytest.raises(ValueError):
        GridSpec(**kwargs)


def test_degenerate_axis_allowed_with_one_point():
    assert Axis(1.0, 1.0, 1).values() == [1.0]


def test_log_axis_endpoints_exact():
    values = Axis(1e-3, 1e3, 200, Spacing.LOG).values()
    assert values[0] == 1e-3 and values[-1] == 1e3


@pytest.mark.parametrize("kwargs", [dict(step=0), dict(step=2e-3), dict(relative_tolerance=0), dict(absolute_tolerance=-1)])
def test_fd_config_validation(kwargs):
    with pytest.raises(ValueError):
        FDConfig(**kwargs)


# -- finite differences ------------------------------------------------------------


def test_fd_partial_examples():
    assert math.isclose(verify.fd_partial(kernels.g, P(2, 1), "y"), -1 / 72, rel_tol=1e-7)
    assert verify.fd_partial(lambda p: 3.25, P(2, 1), "x") == 0
    assert math.isclose(verify.fd_partial(kernels.v, P(1, 1), "x"), 1 / 9, rel_tol=1e-8)


def test_fd_partial_domain_error():
    with pytest.raises(DomainError):
        verify.fd_partial(kernels.g, P(1.0, 1e-6), "y")


def test_fd_partial_bad_axis():
    with pytest.raises(ValueError):
        verify.fd_partial(kernels.g, P(1, 1), "z")


def test_fd_agree():
    cfg = FDConfig()
    assert verify.fd_agree(1.0 + 5e-7, 1.0, cfg)
    assert not verify.fd_agree(1.0 + 5e-6, 1.0, cfg)
    assert verify.fd_agree(5e-9, 0.0, cfg)


def test_map_ordered_preserves_order():
    items = list(range(1000))
    assert verify.map_ordered(lambda i: i * i, items, 7) == [i * i for i in items]


# -- checks on reduced grids ----------------------------------------------------------------

GRID_CHECKS = ["theorem1", "lemma1", "h_sign", "u_positive", "v_monotone", "dgdy_identity"]


def small_config(**kw):
    return VerifyConfig(
        grid=GridSpec(x_count=24, y_count=12),
        v_axis=Axis(1e-3, 1e3, 12, Spacing.LOG),
        z_axis=Axis(1e-2, 1e4, 40, Spacing.LOG),
        limit_exponents=(2, 3, 4, 5, 6, 7),
        **kw,
    )


@pytest.mark.parametrize("name", verify.CHECK_NAMES)
def test_check_passes_on_correct_build(name):
    report = verify.run_check(name, small_config())
    assert report.passed, report
    assert report.violations == 0
    assert report.points_tested > 0
    assert report.min_margin > 0


MUTATIONS = {
    "theorem1": ["g"],
    "lemma1": ["dh_dx_closed"],
    "h_sign": ["h"],
    "u_positive": ["u"],
    "v_monotone": ["dv_dx_closed"],
    "v_closed_form": ["v_at_inv_sqrt2"],
    "dgdy_identity": ["dg_dy"],
    "limit_g": ["g"],
    "alzer_bounds": ["tetragamma_lower_bound"],
}


@pytest.mark.parametrize("name", verify.CHECK_NAMES)
def test_check_detects_sign_flip(name):
    report = verify.run_check(name, small_config(), impl=mutated_impl(*MUTATIONS[name]))
    assert not report.passed
    assert report.violations > 0


@pytest.mark.parametrize(
    "name,flipped",
    [
        ("lemma1", "h"),
        ("u_positive", "du_dx_closed"),
        ("v_monotone", "v"),
        ("dgdy_identity", "g"),
        ("v_closed_form", "v"),
    ],
)
def test_secondary_mutations_detected(name, flipped):
    report = verify.run_check(name, small_config(), impl=mutated_impl(flipped))
    assert report.violations > 0


def test_theorem1_detects_wrong_verdict():
    impl = verify.default_impl()
    real = impl.envelope
    impl.envelope = lambda p, arith: dataclasses.replace(real(p, arith), passed=False)
    assert verify.check_theorem1(small_config().grid, impl=impl).violations > 0


def test_unknown_check():
    with pytest.raises(KeyError):
        verify.run_check("nope")


def test_points_tested_accounts_for_exclusion():
    grid = GridSpec(x_min=0.5, x_max=1.5, x_count=5, y_count=4, x_exclusion_half_width=0.01)
    report = verify.check_theorem1(grid)
    assert report.points_tested == 4 * 4  # x = 1.0 falls in the band


def test_equality_line():
    grid = GridSpec(x_min=1, x_max=1, x_count=1, y_count=50, x_exclusion_half_width=0)
    report = verify.check_theorem1(grid)
    assert report.passed
    assert report.points_tested == 50
    assert report.min_margin <= 1e-10


def test_theorem1_min_margin_shrinks_with_band():
    bands = [0.2, 0.1, 0.05, 0.02, 0.01, 0.001]
    margins = []
    for band in bands:
        grid = GridSpec(x_min=0.5, x_max=1.5, x_count=100, y_count=10, x_exclusion_half_width=band)
        report = verify.check_theorem1(grid)
        assert report.passed
        margins.append(report.min_margin)
    assert all(b <= a for a, b in zip(margins, margins[1:]))
    assert margins[-1] < margins[0]


def test_limit_rejects_x_one():
    with pytest.raises(ValueError):
        verify.check_limit_g(xs=(1.0, 2.0))


def test_limit_sign_direction():
    report = verify.check_limit_g()
    assert report.passed and report.points_tested == 18
    assert report.min_margin > 0


@pytest.mark.parametrize("name", ["theorem1", "u_positive", "v_closed_form", "alzer_bounds"])
def test_reports_independent_of_threads(name):
    one = verify.run_check(name, small_config(threads=1))
    many = verify.run_check(name, small_config(threads=5))
    assert one == many  # elapsed is excluded from equality
    assert repr(one.min_margin) == repr(many.min_margin)
