"""Vertex-angle coefficients of the small-time heat-content expansion.

A vertex of a polygon contributes to the linear-in-t term of the expansion
through one of three functions of its interior angle, selected by how its
two incident edges are marked:

* both Dirichlet            -> coeff_c, defined on (0, 2*pi]
* both open                 -> coeff_b, defined on (0, 2*pi)
* one Dirichlet, one open   -> coeff_a, defined on (0, 2*pi)

coeff_c and coeff_a are integrals over a hyperbolic-function kernel and are
evaluated by quadrature; coeff_b is in closed form.  coeff_a additionally
has a closed form valid on the open interval (pi, 3*pi/2), kept here purely
as a cross-check of the quadrature path.
"""

from __future__ import annotations

import enum
import math

from .numerics import QuadConfig, integrate_semi_infinite

__all__ = [
    "AngleClass",
    "coeff_a_closed",
    "coeff_a_integral",
    "coeff_b",
    "coeff_c",
    "coeff_for",
]

_PI = math.pi
_TWO_PI = 2.0 * math.pi

# Near the ends of (0, 2*pi) the tail decay rate of the coeff_a integrand
# degenerates and quadrature slows down without bound; accuracy is only
# guaranteed inside this window.
A_ACCURATE_MIN = 0.01
A_ACCURATE_MAX = _TWO_PI - 0.01


class AngleClass(enum.Enum):
    """Marking of the two edges meeting at a vertex."""

    DIRICHLET_OPEN = "A"
    OPEN_OPEN = "B"
    DIRICHLET_DIRICHLET = "C"


def _check_angle(value: float, lo: float, hi: float, include_hi: bool, name: str) -> None:
    ok = lo < value <= hi if include_hi else lo < value < hi
    if not (math.isfinite(value) and ok):
        hi_b = "]" if include_hi else ")"
        raise ValueError(f"{name} must lie in ({lo:g}, {hi:g}{hi_b}, got {value!r}")


def _c_integrand(theta: float, gamma: float) -> float:
    # 4*sinh((pi-gamma)*theta) / (sinh(pi*theta)*cosh(gamma*theta)) written
    # with the dominant exponentials factored out so it stays finite for
    # arbitrarily large theta.
    if theta == 0.0:
        return 4.0 * (_PI - gamma) / _PI
    s = _PI - gamma
    sign = 1.0 if s >= 0.0 else -1.0
    a = abs(s)
    num = 8.0 * math.exp((a - _PI - gamma) * theta) * (-math.expm1(-2.0 * a * theta))
    den = (-math.expm1(-2.0 * _PI * theta)) * (1.0 + math.exp(-2.0 * gamma * theta))
    return sign * num / den


def coeff_c(gamma: float, cfg: QuadConfig | None = None) -> float:
    """Dirichlet-Dirichlet vertex coefficient, gamma in (0, 2*pi].

    Quadrature of a hyperbolic kernel with a removable zero at theta = 0
    (limit 4*(pi-gamma)/pi).  Positive below pi, zero at pi, negative above.
    """
    _check_angle(gamma, 0.0, _TWO_PI, True, "gamma")
    if gamma == _PI:
        return 0.0
    # Tail exponent is -2*gamma*theta for gamma <= pi but saturates at
    # -2*pi*theta beyond (the sinh in the numerator starts growing).
    rate = 2.0 * min(gamma, _PI)
    res = integrate_semi_infinite(lambda th: _c_integrand(th, gamma), rate, cfg)
    return res.value


def coeff_b(beta: float) -> float:
    """Open-open vertex coefficient, beta in (0, 2*pi): 1/pi + (1 - beta/pi)*cot(beta).

    The apparent pole of cot at beta = pi is cancelled by the vanishing
    prefactor; the value there is exactly 0 by the defining case split.
    """
    _check_angle(beta, 0.0, _TWO_PI, False, "beta")
    if beta == _PI:
        return 0.0
    return 1.0 / _PI + (1.0 - beta / _PI) / math.tan(beta)


def _a_integrand(theta: float, alpha: float) -> float:
    # [4*sinh^2((pi-alpha/2)*theta) - sinh^2((pi-alpha)*theta)]
    #   / [sinh^2(pi*theta/2) * cosh(pi*theta)]
    # in overflow-free form; both numerator exponentials sit below the
    # denominator's e^{2*pi*theta} for every alpha in (0, 2*pi).
    b = _PI - 0.5 * alpha
    c = abs(_PI - alpha)
    if theta == 0.0:
        return 4.0 * (4.0 * b * b - c * c) / (_PI * _PI)
    t1 = math.exp((2.0 * b - 2.0 * _PI) * theta) * (-math.expm1(-2.0 * b * theta)) ** 2
    t2 = 0.0
    if c > 0.0:
        t2 = 0.25 * math.exp((2.0 * c - 2.0 * _PI) * theta) * (-math.expm1(-2.0 * c * theta)) ** 2
    den = (-math.expm1(-_PI * theta)) ** 2 * (1.0 + math.exp(-2.0 * _PI * theta))
    return 8.0 * (t1 - t2) / den


def coeff_a_integral(alpha: float, cfg: QuadConfig | None = None) -> float:
    """Dirichlet-open vertex coefficient by quadrature, alpha in (0, 2*pi).

    -3/4 plus a quarter of an integral whose integrand has a finite limit
    at theta = 0 and decays like exp(-min(alpha, 2*pi - alpha) * theta).
    Accuracy degrades outside [A_ACCURATE_MIN, A_ACCURATE_MAX] as that rate
    collapses; values are still returned on all of (0, 2*pi).
    """
    _check_angle(alpha, 0.0, _TWO_PI, False, "alpha")
    rate = min(alpha, _TWO_PI - alpha)
    res = integrate_semi_infinite(lambda th: _a_integrand(th, alpha), rate, cfg)
    return -0.75 + 0.25 * res.value


def coeff_a_closed(alpha: float) -> float:
    """Closed form of the Dirichlet-open coefficient, valid only on (pi, 3*pi/2).

    Used as an independent cross-check of coeff_a_integral; outside its
    window of validity the defining integrals diverge term by term.
    """
    if not (_PI < alpha < 1.5 * _PI):
        raise ValueError(f"closed form valid only for pi < alpha < 3*pi/2, got {alpha!r}")
    return (
        -3.0 / 8.0
        + 3.0 / (4.0 * _PI)
        - 1.0 / (8.0 * math.cos(alpha))
        + 1.0 / (2.0 * math.cos(0.5 * alpha))
        + (7.0 / 4.0 - 3.0 * alpha / (4.0 * _PI)) / math.tan(alpha)
        + (1.0 / 4.0 - alpha / (4.0 * _PI)) * math.tan(alpha)
    )


def coeff_for(angle_class: AngleClass, angle: float, cfg: QuadConfig | None = None) -> float:
    """Dispatch to the coefficient function for a classified vertex.

    Mixed vertices always go through the integral form of coeff_a (valid on
    all of (0, 2*pi)); the closed form stays a cross-check only.
    """
    if angle_class is AngleClass.DIRICHLET_DIRICHLET:
        return coeff_c(angle, cfg)
    if angle_class is AngleClass.OPEN_OPEN:
        return coeff_b(angle)
    return coeff_a_integral(angle, cfg)
