import math

import pytest

from polyheat.coefficients import (
    AngleClass,
    coeff_a_closed,
    coeff_a_integral,
    coeff_b,
    coeff_c,
    coeff_for,
)

PI = math.pi

# Analytic simplification oracles for coeff_c:
#  gamma = pi/2: integrand reduces to 2*sech^2(pi*theta/2), whose
#                antiderivative (4/pi)*tanh(pi*theta/2) gives 4/pi.
#  gamma = 2*pi: integrand reduces to -4*sech(2*pi*theta) and
#                integral of sech(a*theta) over (0,inf) is pi/(2a), so -1.
C_HALF_PI = 4.0 / PI
C_TWO_PI = -1.0


def test_c_vanishes_at_pi():
    assert abs(coeff_c(PI)) <= 1e-12


def test_c_right_angle():
    assert abs(coeff_c(0.5 * PI) - C_HALF_PI) <= 1e-10


def test_c_full_angle():
    assert abs(coeff_c(2.0 * PI) - C_TWO_PI) <= 1e-10


def test_c_sign_and_monotonicity():
    grid = [0.1 + 0.12 * k for k in range(52) if 0.1 + 0.12 * k <= 2.0 * PI]
    vals = [coeff_c(g) for g in grid]
    for g, v in zip(grid, vals):
        if g < PI - 1e-9:
            assert v > 0
        elif g > PI + 1e-9:
            assert v < 0
    for a, b in zip(vals, vals[1:]):
        assert a > b


def test_b_case_split_and_spots():
    assert coeff_b(PI) == 0.0
    assert abs(coeff_b(0.5 * PI) - 1.0 / PI) <= 1e-15
    assert abs(coeff_b(1.5 * PI) - 1.0 / PI) <= 1e-15


def test_b_continuous_through_pi():
    assert abs(coeff_b(PI - 1e-6)) < 1e-5
    assert abs(coeff_b(PI + 1e-6)) < 1e-5


def test_a_spot_values():
    assert abs(coeff_a_integral(PI) - (-0.25)) <= 1e-10
    assert abs(coeff_a_integral(0.5 * PI) - (-3.0 / 8.0 + 1.0 / PI + 0.5 * math.sqrt(2.0))) <= 1e-10
    assert abs(coeff_a_integral(1.5 * PI) - (-3.0 / 8.0 + 1.0 / PI - 0.5 * math.sqrt(2.0))) <= 1e-10


def test_a_closed_matches_integral_on_grid():
    # quadrature oracle across the closed form's window of validity
    for k in range(64):
        alpha = PI * (1.01 + 0.48 * k / 63.0)
        assert abs(coeff_a_closed(alpha) - coeff_a_integral(alpha)) <= 1e-8


def test_a_closed_limit_toward_pi():
    assert abs(coeff_a_closed(PI + 1e-6) - (-0.25)) <= 1e-4


def test_a_closed_window_enforced():
    for bad in (PI, 1.5 * PI, 0.5 * PI, 1.9 * PI):
        with pytest.raises(ValueError):
            coeff_a_closed(bad)


@pytest.mark.parametrize(
    "fn,lo,hi",
    [
        (coeff_c, 0.0, 2.0 * PI),
        (coeff_b, 0.0, 2.0 * PI),
        (coeff_a_integral, 0.0, 2.0 * PI),
    ],
)
def test_domain_rejections(fn, lo, hi):
    with pytest.raises(ValueError):
        fn(lo)
    with pytest.raises(ValueError):
        fn(hi + 0.1)
    with pytest.raises(ValueError):
        fn(-1.0)


def test_c_accepts_two_pi_but_b_a_do_not():
    coeff_c(2.0 * PI)
    with pytest.raises(ValueError):
        coeff_b(2.0 * PI)
    with pytest.raises(ValueError):
        coeff_a_integral(2.0 * PI)


def _max_adjacent_jump(fn, lo, hi, n):
    xs = [lo + (hi - lo) * k / n for k in range(n + 1)]
    vals = [fn(x) for x in xs]
    return max(abs(b - a) for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize(
    "fn,lo,hi",
    [
        (coeff_c, 0.3, 2.0 * PI),
        (coeff_b, 0.3, 2.0 * PI - 0.3),
        (coeff_a_integral, 0.3, 2.0 * PI - 0.3),
    ],
)
def test_continuity_on_refining_grids(fn, lo, hi):
    # all values finite, and adjacent-sample jumps shrink ~2x when the grid
    # is refined 2x (continuity at two resolutions)
    coarse = _max_adjacent_jump(fn, lo, hi, 40)
    fine = _max_adjacent_jump(fn, lo, hi, 80)
    assert math.isfinite(coarse) and math.isfinite(fine)
    assert fine <= 0.75 * coarse


def test_coeff_for_dispatch():
    assert abs(coeff_for(AngleClass.DIRICHLET_DIRICHLET, 0.5 * PI) - C_HALF_PI) <= 1e-10
    assert coeff_for(AngleClass.OPEN_OPEN, PI) == 0.0
    assert abs(coeff_for(AngleClass.DIRICHLET_OPEN, PI) - (-0.25)) <= 1e-10


def test_coeff_for_propagates_domain_errors():
    with pytest.raises(ValueError):
        coeff_for(AngleClass.OPEN_OPEN, 2.0 * PI)
