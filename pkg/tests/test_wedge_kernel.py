import math

import pytest

from polyheat.numerics import QuadConfig
from polyheat.wedge_kernel import (
    PolarPoint,
    WedgeSpec,
    bessel_K_imag,
    check_cosine_transform,
    check_log_ratio,
    check_radial_moment,
    check_tanh_log_coth,
    green_hat_wedge,
)

PI = math.pi
EULER_GAMMA = 0.5772156649015329


def k0_series(x, terms=60):
    """Classical ascending series for the order-zero Macdonald function:

        K_0(x) = -(log(x/2) + gamma) * I_0(x)
                 + sum_{k>=1} (x^2/4)^k / (k!)^2 * H_k

    with H_k the harmonic numbers.  Independent of any quadrature.
    """
    q = 0.25 * x * x
    i0_term = 1.0
    i0 = 1.0
    s = 0.0
    term = 1.0
    h = 0.0
    for k in range(1, terms):
        term *= q / (k * k)
        h += 1.0 / k
        s += term * h
        i0_term *= q / (k * k)
        i0 += i0_term
    return -(math.log(0.5 * x) + EULER_GAMMA) * i0 + s


def test_order_zero_matches_series():
    for x in (0.3, 1.0, 2.0, 3.5):
        assert bessel_K_imag(0.0, x) == pytest.approx(k0_series(x), abs=1e-12)


def test_order_zero_spot_value():
    # K_0(1) = 0.421024... frozen from the series oracle above
    assert k0_series(1.0) == pytest.approx(0.4210244382407085, abs=1e-13)
    assert bessel_K_imag(0.0, 1.0) == pytest.approx(0.4210244382407085, abs=1e-12)


def test_even_in_order():
    for th in (0.4, 1.0, 3.0, 12.0):
        assert bessel_K_imag(th, 1.3) == bessel_K_imag(-th, 1.3)


def test_aggregate_order_transform_pins_intermediate_orders():
    # integral over theta of K_{i*theta}(1) equals (pi/2)*e^{-1}; an
    # aggregate consistency check for orders between the spot values
    res = check_cosine_transform(1.0, 0.0)
    assert res.abs_err <= 1e-8
    assert res.rhs == pytest.approx(0.5 * PI * math.exp(-1.0), rel=1e-15)


def test_order_bound_by_order_zero():
    for x in (0.5, 1.0, 2.0):
        k0 = bessel_K_imag(0.0, x)
        assert k0 > 0
        for th in (0.5, 1.5, 3.0, 6.0, 10.0, 20.0):
            assert abs(bessel_K_imag(th, x)) <= k0


def test_envelope_rejected():
    with pytest.raises(ValueError):
        bessel_K_imag(31.0, 1.0)
    with pytest.raises(ValueError):
        bessel_K_imag(1.0, 0.0)
    with pytest.raises(ValueError):
        bessel_K_imag(1.0, -2.0)


# ----------------------------------------------------------------------
# Green's function of the wedge


def test_green_symmetric():
    spec = WedgeSpec(alpha=2.0 * PI, s=1.0)
    a = PolarPoint(1.0, 1.0)
    b = PolarPoint(1.3, 2.5)
    g1 = green_hat_wedge(a, b, spec)
    g2 = green_hat_wedge(b, a, spec)
    assert abs(g1 - g2) <= 1e-10
    assert g1 >= 0.0


def test_green_vanishes_toward_faces():
    spec = WedgeSpec(alpha=0.5 * PI, s=1.0)
    probe = PolarPoint(1.2, 1.1)
    interior = green_hat_wedge(PolarPoint(1.0, 0.6), probe, spec)
    near_low = green_hat_wedge(PolarPoint(1.0, 1e-4), probe, spec)
    probe2 = PolarPoint(1.2, 0.7)
    near_high = green_hat_wedge(PolarPoint(1.0, 0.5 * PI - 1e-4), probe2, spec)
    assert near_low <= 1e-3 * interior
    assert near_high <= 1e-3 * interior
    assert near_low > 0.0 and near_high > 0.0


def _free_space(spec, a, b):
    d = math.hypot(
        a.a * math.cos(a.phi) - b.a * math.cos(b.phi),
        a.a * math.sin(a.phi) - b.a * math.sin(b.phi),
    )
    return bessel_K_imag(0.0, math.sqrt(spec.s) * d) / (2.0 * PI)


def test_green_dominated_by_free_space():
    spec = WedgeSpec(alpha=2.0 * PI, s=1.0)
    pairs = [
        (PolarPoint(0.5, 0.8), PolarPoint(1.5, 3.0)),
        (PolarPoint(2.0, 5.5), PolarPoint(1.0, 4.0)),
        (PolarPoint(0.4, 2.0), PolarPoint(0.6, 3.1)),
        (PolarPoint(1.1, 1.4), PolarPoint(0.9, 2.2)),
    ]
    for a, b in pairs:
        g = green_hat_wedge(a, b, spec)
        assert 0.0 <= g <= _free_space(spec, a, b)


def test_green_gap_shrinks_away_from_slit():
    # moving both points along a ray away from the Dirichlet half-line, the
    # slit-plane kernel approaches the free one
    spec = WedgeSpec(alpha=2.0 * PI, s=1.0)
    gaps = []
    for rot in (0.6, 1.2, 1.8, 2.4):
        # both points' angular distance to the slit grows with rot, and the
        # rotation is rigid so the free-space kernel stays fixed
        a = PolarPoint(1.0, rot)
        b = PolarPoint(1.4, rot + 0.8)
        gaps.append(_free_space(spec, a, b) - green_hat_wedge(a, b, spec))
    for early, late in zip(gaps, gaps[1:]):
        assert late < early


def test_green_rejects_boundary_and_common_ray():
    spec = WedgeSpec(alpha=PI, s=2.0)
    with pytest.raises(ValueError):
        green_hat_wedge(PolarPoint(1.0, 0.0), PolarPoint(1.0, 1.0), spec)
    with pytest.raises(ValueError):
        green_hat_wedge(PolarPoint(1.0, PI), PolarPoint(1.0, 1.0), spec)
    with pytest.raises(ValueError):
        green_hat_wedge(PolarPoint(1.0, 1.0), PolarPoint(2.0, 1.0), spec)


# ----------------------------------------------------------------------
# identity checks


@pytest.mark.parametrize("theta", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("s", [1.0, 4.0])
def test_radial_moment(theta, s):
    res = check_radial_moment(theta, s)
    assert res.abs_err <= 1e-6


def test_radial_moment_spot_and_scaling():
    res = check_radial_moment(1.0, 1.0)
    assert abs(res.lhs - PI / (2.0 * math.sinh(0.5 * PI))) <= 1e-6
    res4 = check_radial_moment(1.0, 4.0)
    assert res4.lhs == pytest.approx(res.lhs / 4.0, abs=1e-8)
    res24 = check_radial_moment(2.0, 4.0)
    assert res24.rhs == pytest.approx(PI / (4.0 * math.sinh(PI)), rel=1e-15)


def test_radial_moment_envelope():
    with pytest.raises(ValueError):
        check_radial_moment(0.01, 1.0)
    with pytest.raises(ValueError):
        check_radial_moment(1.0, -1.0)


@pytest.mark.parametrize("b", [0.0, 0.5, 1.0])
def test_cosine_transform(b):
    res = check_cosine_transform(1.0, b)
    assert res.abs_err <= 1e-6


def test_log_ratio():
    for a in (0.0, 1.0):
        res = check_log_ratio(a, 0.5 * PI, PI)
        assert res.abs_err <= 1e-8
    res0 = check_log_ratio(0.0, 0.5 * PI, PI)
    expect = 0.5 * math.log((1.0 + math.sin(0.25 * PI)) / (1.0 - math.sin(0.25 * PI)))
    assert res0.rhs == pytest.approx(expect, rel=1e-15)


def test_log_ratio_odd_in_beta():
    res = check_log_ratio(1.0, 1e-9, PI)
    assert abs(res.lhs) < 1e-8
    assert abs(res.rhs) < 1e-8


def test_log_ratio_domain():
    with pytest.raises(ValueError):
        check_log_ratio(1.0, PI, PI)


def test_tanh_log_coth():
    res = check_tanh_log_coth(1.0, PI)
    assert res.abs_err <= 1e-6
    assert res.rhs == pytest.approx(math.log(1.0 / math.tanh(0.25)), rel=1e-14)


def test_tanh_log_coth_large_a():
    # rhs -> 0 as a grows (coth -> 1)
    assert check_tanh_log_coth(40.0, PI).rhs < 1e-4
    res = check_tanh_log_coth(8.0, PI)
    assert res.abs_err <= 1e-6


def test_tanh_log_coth_domain():
    with pytest.raises(ValueError):
        check_tanh_log_coth(0.0, PI)
    with pytest.raises(ValueError):
        check_tanh_log_coth(1.0, 0.0)


def test_identity_checks_accept_quad_config():
    cfg = QuadConfig(abs_tol=1e-9, rel_tol=1e-8)
    assert check_log_ratio(1.0, 0.5 * PI, PI, cfg).abs_err <= 1e-6
