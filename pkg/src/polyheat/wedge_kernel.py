"""Imaginary-order Bessel toolkit and the resolvent kernel of a wedge.

The modified Bessel function of imaginary order is evaluated directly from
its cosine-transform representation

    K_{i*theta}(x) = integral over w >= 0 of cos(w*theta) * exp(-x*cosh(w)),

and the Laplace-transformed heat kernel (Green's function) of an infinite
wedge of opening alpha with Dirichlet faces is assembled from products of
two such factors against a three-term hyperbolic bracket.  A set of
closed-form identities satisfied by these integrals doubles as the numeric
test surface; each check returns (lhs, rhs, abs_err).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .numerics import QuadConfig, integrate_finite, integrate_semi_infinite

__all__ = [
    "IdentityResult",
    "PolarPoint",
    "WedgeSpec",
    "bessel_K_imag",
    "check_cosine_transform",
    "check_log_ratio",
    "check_radial_moment",
    "check_tanh_log_coth",
    "green_hat_wedge",
]

_PI = math.pi
_EULER_GAMMA = 0.5772156649015329

THETA_MAX = 30.0  # supported order envelope for bessel_K_imag

# Lanczos approximation (g = 7, n = 9) for the complex log-gamma used by the
# large-order series path.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


@dataclass(frozen=True)
class PolarPoint:
    """Point (a, phi) in polar coordinates, phi measured from the wedge's first face."""

    a: float
    phi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and self.a >= 0):
            raise ValueError(f"radius must be finite and nonnegative, got {self.a!r}")


@dataclass(frozen=True)
class WedgeSpec:
    """Opening angle alpha in (0, 2*pi] and Laplace parameter s > 0."""

    alpha: float
    s: float

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 2.0 * _PI):
            raise ValueError(f"opening must lie in (0, 2*pi], got {self.alpha!r}")
        if not (self.s > 0):
            raise ValueError(f"Laplace parameter must be positive, got {self.s!r}")


class IdentityResult(NamedTuple):
    lhs: float
    rhs: float
    abs_err: float


def _check(lhs: float, rhs: float) -> IdentityResult:
    return IdentityResult(lhs, rhs, abs(lhs - rhs))


def _lgamma_complex(z: complex) -> complex:
    """Principal log-gamma for Re(z) > 0 (Lanczos)."""
    zz = z - 1.0
    acc = complex(_LANCZOS_C[0])
    for i, c in enumerate(_LANCZOS_C[1:], start=1):
        acc += c / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (zz + 0.5) * _clog(t) - t + _clog(acc)


def _clog(z: complex) -> complex:
    return complex(math.log(abs(z)), math.atan2(z.imag, z.real))


def _bessel_series(theta: float, x: float) -> float:
    """K_{i*theta}(x) from the ascending series of I_{i*theta}.

    K_{i*theta}(x) = -pi * Im(I_{i*theta}(x)) / sinh(pi*theta); the huge
    1/Gamma(1 + i*theta) and 1/sinh(pi*theta) factors carry the e^{-pi*theta/2}
    scale analytically, so this stays at full relative accuracy where direct
    quadrature of the cosine transform would return cancellation noise.
    Well-conditioned for x below roughly theta.
    """
    lg = _lgamma_complex(complex(1.0, theta))
    term = _cexp(complex(0.0, theta * math.log(0.5 * x)) - lg)
    total = term
    q = 0.25 * x * x
    for k in range(1, 400):
        term *= q / (k * complex(k, theta))
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return -math.pi * total.imag / math.sinh(math.pi * theta)


def _cexp(z: complex) -> complex:
    m = math.exp(z.real)
    return complex(m * math.cos(z.imag), m * math.sin(z.imag))


def bessel_K_imag(theta: float, x: float, cfg: QuadConfig | None = None) -> float:
    """K of imaginary order i*theta at argument x > 0, for 0 <= theta <= 30.

    Defined by the cosine transform of exp(-x*cosh(w)); real-valued and even
    in theta.  Evaluated by adaptive quadrature of that transform, truncated
    where the exp(-x*cosh(w)) envelope drops below the absolute tolerance,
    except at large order with x below it, where the function sits
    exponentially far under the quadrature's cancellation noise and the
    equivalent ascending series is used instead.
    """
    cfg = cfg or QuadConfig()
    theta = abs(theta)  # even in the order
    if not (theta <= THETA_MAX):
        raise ValueError(f"order envelope is |theta| <= {THETA_MAX:g}, got {theta!r}")
    if not (x > 0):
        raise ValueError(f"argument must be positive, got {x!r}")
    if theta > 8.0 and x < theta:
        return _bessel_series(theta, x)
    w_max = math.acosh(max(2.0, math.log(100.0 / cfg.abs_tol) / x))
    res = integrate_finite(lambda w: math.cos(w * theta) * math.exp(-x * math.cosh(w)), 0.0, w_max, cfg)
    return res.value


def _wedge_bracket(theta: float, alpha: float, phi1: float, phi2: float) -> float:
    """Hyperbolic angular factor of the wedge kernel; vanishes as theta -> 0."""
    if theta == 0.0:
        return 0.0
    d = phi1 - phi2
    r = math.sinh(_PI * theta) / math.sinh(alpha * theta)
    return (
        math.cosh((_PI - abs(d)) * theta)
        - r * math.cosh((alpha - phi1 - phi2) * theta)
        + math.sinh((_PI - alpha) * theta) / math.sinh(alpha * theta) * math.cosh(d * theta)
    )


def green_hat_wedge(
    A1: PolarPoint, A2: PolarPoint, spec: WedgeSpec, cfg: QuadConfig | None = None
) -> float:
    """Laplace-transformed Dirichlet heat kernel of the wedge, at (A1, A2; s).

    Both points must be strictly inside the wedge and at distinct angular
    coordinates: the integrand decays like exp(-c*theta) with

        c = min(d, 2*pi - d, alpha - |alpha - phi1 - phi2|,
                pi - |pi - alpha| + alpha - d),      d = |phi1 - phi2|,

    and the truncation scheme needs c bounded away from zero (points on a
    common ray leave only an oscillatory 1/theta tail, which this routine
    does not resum).  At alpha = 2*pi the bracket reduces to its slit-plane
    form automatically.
    """
    cfg = cfg or QuadConfig()
    alpha, s = spec.alpha, spec.s
    for p in (A1, A2):
        if not (0.0 < p.phi < alpha):
            raise ValueError(f"point at phi={p.phi!r} is not strictly inside the wedge")
        if not (p.a > 0):
            raise ValueError("points must have positive radius")
    d = abs(A1.phi - A2.phi)
    c = min(
        d,
        2.0 * _PI - d,
        alpha - abs(alpha - A1.phi - A2.phi),
        _PI - abs(_PI - alpha) + alpha - d,
    )
    if c < 0.05:
        raise ValueError(
            "angular separation too small for the exponential truncation "
            f"(decay rate {c:.3g}); points on a common ray are unsupported"
        )
    x1 = math.sqrt(s) * A1.a
    x2 = math.sqrt(s) * A2.a
    pref = 10.0 * (1.0 + bessel_K_imag(0.0, x1, cfg)) * (1.0 + bessel_K_imag(0.0, x2, cfg))
    theta_max = min(THETA_MAX, max(6.0, math.log(pref / cfg.abs_tol) / c))

    inner_cfg = QuadConfig(
        abs_tol=min(1e-13, cfg.abs_tol),
        rel_tol=cfg.rel_tol,
        max_evaluations=cfg.max_evaluations,
        tail_cutoff_policy=cfg.tail_cutoff_policy,
    )

    def f(theta: float) -> float:
        return (
            bessel_K_imag(theta, x1, inner_cfg)
            * bessel_K_imag(theta, x2, inner_cfg)
            * _wedge_bracket(theta, alpha, A1.phi, A2.phi)
        )

    res = integrate_finite(f, 0.0, theta_max, cfg)
    return res.value / (_PI * _PI)


# ----------------------------------------------------------------------
# closed-form identity checks


def check_radial_moment(theta: float, s: float, cfg: QuadConfig | None = None) -> IdentityResult:
    """First radial moment: integral of a*K_{i*theta}(sqrt(s)*a) over a > 0
    against pi*theta/(2*s*sinh(pi*theta/2))."""
    if not (0.1 <= theta <= 10.0):
        raise ValueError(f"theta must lie in [0.1, 10], got {theta!r}")
    if not (s > 0):
        raise ValueError(f"s must be positive, got {s!r}")
    cfg = cfg or QuadConfig(abs_tol=1e-10, rel_tol=1e-9)
    rs = math.sqrt(s)
    # After y = sqrt(s)*a the integrand is y*K_{i*theta}(y)/s with an
    # exp(-y) envelope (K is dominated by its order-zero value).
    res = integrate_semi_infinite(
        lambda y: 0.0 if y == 0.0 else y * bessel_K_imag(theta, y, cfg), 0.9, cfg
    )
    lhs = res.value / s
    rhs = _PI * theta / (2.0 * s * math.sinh(0.5 * _PI * theta))
    return _check(lhs, rhs)


def check_cosine_transform(a: float, b: float, cfg: QuadConfig | None = None) -> IdentityResult:
    """Order transform: integral over theta of cos(b*theta)*K_{i*theta}(a)
    against (pi/2)*exp(-a*cosh(b)), for real b."""
    if not (a > 0):
        raise ValueError(f"a must be positive, got {a!r}")
    cfg = cfg or QuadConfig(abs_tol=1e-10, rel_tol=1e-9)
    res = integrate_semi_infinite(
        lambda th: math.cos(b * th) * bessel_K_imag(min(th, THETA_MAX), a, cfg), 1.4, cfg
    )
    rhs = 0.5 * _PI * math.exp(-a * math.cosh(b))
    return _check(res.value, rhs)


def check_log_ratio(
    a: float, beta: float, gamma: float, cfg: QuadConfig | None = None
) -> IdentityResult:
    """integral of cos(a*theta)/theta * sinh(beta*theta)/cosh(gamma*theta)
    against the closed log-ratio form, for |beta| < gamma, a >= 0."""
    if not (abs(beta) < gamma):
        raise ValueError(f"need |beta| < gamma, got beta={beta!r}, gamma={gamma!r}")
    if not (a >= 0):
        raise ValueError(f"a must be nonnegative, got {a!r}")
    cfg = cfg or QuadConfig()

    def f(theta: float) -> float:
        if theta == 0.0:
            return beta  # sinh(beta*theta)/theta -> beta
        return math.cos(a * theta) / theta * math.sinh(beta * theta) / math.cosh(gamma * theta)

    res = integrate_semi_infinite(f, gamma - abs(beta), cfg)
    ch = math.cosh(0.5 * a * _PI / gamma)
    sn = math.sin(0.5 * beta * _PI / gamma)
    rhs = 0.5 * math.log((ch + sn) / (ch - sn))
    return _check(res.value, rhs)


def _cosine_integral(x: float, cfg: QuadConfig) -> float:
    """Ci(x) for x > 0 via its power-form: gamma + log(x) + int_0^x (cos(u)-1)/u du."""

    def f(u: float) -> float:
        if u == 0.0:
            return 0.0
        return -2.0 * math.sin(0.5 * u) ** 2 / u

    return _EULER_GAMMA + math.log(x) + integrate_finite(f, 0.0, x, cfg).value


def check_tanh_log_coth(a: float, beta: float, cfg: QuadConfig | None = None) -> IdentityResult:
    """integral of cos(a*theta)*tanh(beta*theta)/theta against log(coth(a*pi/(4*beta))).

    tanh has no decaying tail, so beyond a cutoff T the integral is split as
    the analytic remainder of cos(a*theta)/theta (a cosine integral) plus an
    exponentially small tanh(beta*theta) - 1 piece.
    """
    if not (a > 0):
        raise ValueError(f"a must be positive (integral diverges at a = 0), got {a!r}")
    if not (beta > 0):
        raise ValueError(f"beta must be positive, got {beta!r}")
    cfg = cfg or QuadConfig()
    T = max(1.0, math.log(100.0 / cfg.abs_tol) / (2.0 * beta))

    def head(theta: float) -> float:
        if theta == 0.0:
            return beta
        return math.cos(a * theta) * math.tanh(beta * theta) / theta

    def tail(theta: float) -> float:
        # tanh(x) - 1 = -2/(e^{2x} + 1)
        return math.cos(a * theta) * (-2.0 / (math.exp(2.0 * beta * theta) + 1.0)) / theta

    lhs = (
        integrate_finite(head, 0.0, T, cfg).value
        - _cosine_integral(a * T, cfg)
        + integrate_finite(tail, T, T + math.log(1e6) / (2.0 * beta), cfg).value
    )
    rhs = math.log(1.0 / math.tanh(0.25 * a * _PI / beta))
    return _check(lhs, rhs)
