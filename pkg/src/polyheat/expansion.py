"""Small-time heat-content expansions for polygons, sectors and model regions.

The polygon expansion reads

    area  -  (2*L_dirichlet + L_open)/sqrt(pi) * sqrt(t)  +  (sum of vertex
    coefficients) * t  +  (exponentially small remainder)

where the vertex coefficients come from :mod:`polyheat.coefficients`.  The
remainder is never added to returned values; callers get a computable scale
indicator exp(-decay_rate/t) instead, with the rate taken from the polygon's
partition parameters (or R^2/4 for a sector).

The circular-sector formula and the cusp/rectangle/half-space model terms
that feed it are implemented alongside, restricted to the Dirichlet-open
boundary pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coefficients import coeff_a_integral, coeff_for
from .geometry import (
    BoundaryCondition,
    Polygon,
    VertexAngle,
    area,
    classify_vertices,
    lengths_by_type,
    partition_params,
)
from .numerics import QuadConfig, integrate_finite

__all__ = [
    "ExpansionCoefficients",
    "SectorSpec",
    "cusp_correction",
    "cusp_double_integral",
    "eval_expansion",
    "half_space_solution",
    "heat_content_coeffs",
    "rectangle_correction",
    "remainder_scale",
    "sector_heat_content_DO",
    "sector_terms",
]

_SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients of area + sqrt_t_coeff*sqrt(t) + t_coeff*t for one polygon.

    decay_rate is the heuristic remainder rate from the partition parameters;
    per_vertex records each vertex's contribution to t_coeff.
    """

    area: float
    sqrt_t_coeff: float
    t_coeff: float
    decay_rate: float
    per_vertex: tuple[tuple[VertexAngle, float], ...]


@dataclass(frozen=True)
class SectorSpec:
    """Circular sector of radius R and opening alpha.

    bc gives the marks of the two straight sides; only (Dirichlet, open) is
    implemented here.  The arc carries no condition.
    """

    R: float
    alpha: float
    bc: tuple[BoundaryCondition, BoundaryCondition] = (
        BoundaryCondition.DIRICHLET,
        BoundaryCondition.OPEN,
    )

    def __post_init__(self) -> None:
        if not (self.R > 0):
            raise ValueError(f"sector radius must be positive, got {self.R!r}")
        if not (0.0 < self.alpha < 2.0 * math.pi):
            raise ValueError(f"sector opening must lie in (0, 2*pi), got {self.alpha!r}")


def heat_content_coeffs(polygon: Polygon, cfg: QuadConfig | None = None) -> ExpansionCoefficients:
    """Evaluate the expansion coefficients of a validated polygon."""
    l_minus, l_plus = lengths_by_type(polygon)
    per_vertex = tuple(
        (va, coeff_for(va.angle_class, va.radians, cfg)) for va in classify_vertices(polygon)
    )
    return ExpansionCoefficients(
        area=area(polygon),
        sqrt_t_coeff=-(2.0 * l_minus + l_plus) / _SQRT_PI,
        t_coeff=math.fsum(c for _, c in per_vertex),
        decay_rate=partition_params(polygon).decay_rate,
        per_vertex=per_vertex,
    )


def eval_expansion(coeffs: ExpansionCoefficients, t: float) -> float:
    """area + sqrt_t_coeff*sqrt(t) + t_coeff*t; remainder left out by design."""
    if not (t > 0):
        raise ValueError(f"time must be positive, got {t!r}")
    return coeffs.area + coeffs.sqrt_t_coeff * math.sqrt(t) + coeffs.t_coeff * t


def remainder_scale(coeffs: ExpansionCoefficients, t: float) -> float:
    """exp(-decay_rate/t): the size scale of the truncated remainder."""
    if not (t > 0):
        raise ValueError(f"time must be positive, got {t!r}")
    return math.exp(-coeffs.decay_rate / t)


def _outer_over_w(inner, cfg: QuadConfig) -> float:
    """integral over w in [1, inf) of inner(w)/w^2 via the substitution w = 1/u."""

    def g(u: float) -> float:
        if u == 0.0:
            return 0.0
        return inner(1.0 / u)

    return integrate_finite(g, 0.0, 1.0, cfg).value


def cusp_double_integral(R: float, t: float, cfg: QuadConfig | None = None) -> float:
    """The dimensionless cusp factor in (0, 1), decreasing in R^2/t.

    integral over w in [1, inf) of w^-2 times integral over v in (0, 1) of
    v*(1-v^2)^(-1/2)*exp(-R^2 v^2 w^2/(4 t)); the inner square-root
    singularity is removed by v = sin(phi).
    """
    if not (R >= 0 and t > 0):
        raise ValueError(f"need R >= 0 and t > 0, got R={R!r}, t={t!r}")
    cfg = cfg or QuadConfig()
    q = R * R / (4.0 * t)

    def inner(w: float) -> float:
        qw = q * w * w

        def f(phi: float) -> float:
            s = math.sin(phi)
            return s * math.exp(-qw * s * s)

        return integrate_finite(f, 0.0, 0.5 * math.pi, cfg).value

    return _outer_over_w(inner, cfg)


def sector_terms(spec: SectorSpec, t: float, cfg: QuadConfig | None = None) -> dict[str, float]:
    """Term-by-term breakdown of the sector expansion.

    Keys: area (alpha*R^2/2), edge (-3*R*sqrt(t/pi), the Dirichlet side
    counting twice), angle (mixed-vertex coefficient times t), cusp (the
    double-integral give-back), total, remainder_scale (exp(-R^2/(4 t)),
    the dominant observed remainder rate; the sharp constant is unknown).
    """
    if spec.bc != (BoundaryCondition.DIRICHLET, BoundaryCondition.OPEN) and spec.bc != (
        BoundaryCondition.OPEN,
        BoundaryCondition.DIRICHLET,
    ):
        raise ValueError("only the Dirichlet-open sector is implemented")
    if not (t > 0):
        raise ValueError(f"time must be positive, got {t!r}")
    edge_scale = 3.0 * spec.R * math.sqrt(t) / _SQRT_PI
    terms = {
        "area": 0.5 * spec.alpha * spec.R * spec.R,
        "edge": -edge_scale,
        "angle": coeff_a_integral(spec.alpha, cfg) * t,
        "cusp": edge_scale * cusp_double_integral(spec.R, t, cfg),
    }
    terms["total"] = math.fsum(terms.values())
    terms["remainder_scale"] = math.exp(-spec.R * spec.R / (4.0 * t))
    return terms


def sector_heat_content_DO(spec: SectorSpec, t: float, cfg: QuadConfig | None = None) -> float:
    """Heat content of a Dirichlet-open sector of radius R and opening alpha."""
    return sector_terms(spec, t, cfg)["total"]


def _cusp_area(delta: float, R: float) -> float:
    # integral over x in (0, delta) of R - sqrt(R^2 - x^2)
    return R * delta - 0.5 * (delta * math.sqrt(R * R - delta * delta) + R * R * math.asin(delta / R))


def cusp_correction(
    delta: float,
    R: float,
    t: float,
    bc: BoundaryCondition,
    cfg: QuadConfig | None = None,
) -> float:
    """Heat content of the cusp between a sector of radius R and its boundary strip.

    The cusp is the region 0 < x1 < R, |x| > R, 0 < x2 < delta alongside a
    straight boundary piece; its half-space temperature profile depends only
    on x2, so the heat loss reduces to a double integral truncated at
    v = delta/R plus the exact boundary term of the integration by parts.
    Keeping that boundary term (rather than bounding it away) makes the
    Dirichlet value equal the true cusp integral up to quadrature error.
    The open-edge value halves the loss.
    """
    if not (0 < delta < R):
        raise ValueError(f"need 0 < delta < R, got delta={delta!r}, R={R!r}")
    if not (t > 0):
        raise ValueError(f"time must be positive, got {t!r}")
    cfg = cfg or QuadConfig()
    q = R * R / (4.0 * t)
    phi_max = math.asin(delta / R)

    def inner(w: float) -> float:
        qw = q * w * w

        def f(phi: float) -> float:
            s = math.sin(phi)
            return s * math.exp(-qw * s * s)

        return integrate_finite(f, 0.0, phi_max, cfg).value

    trunc = _outer_over_w(inner, cfg)

    qd = delta * delta / (4.0 * t)
    boundary = (R - math.sqrt(R * R - delta * delta)) * _outer_over_w(
        lambda w: math.exp(-qd * w * w), cfg
    )
    loss = (2.0 * math.sqrt(t) / _SQRT_PI) * (R * trunc - boundary)
    k = 2.0 if bc is BoundaryCondition.DIRICHLET else 1.0
    return _cusp_area(delta, R) - 0.5 * k * loss


def rectangle_correction(L: float, delta: float, t: float, bc: BoundaryCondition) -> float:
    """Heat content of an L-by-delta boundary strip: L*delta - k*L*sqrt(t/pi).

    k = 2 for a Dirichlet strip edge, 1 for an open one; the exp(-delta^2/(4t))
    tail is omitted.
    """
    if not (L > 0 and delta > 0 and t > 0):
        raise ValueError("L, delta and t must all be positive")
    k = 2.0 if bc is BoundaryCondition.DIRICHLET else 1.0
    return L * delta - k * L * math.sqrt(t) / _SQRT_PI


def half_space_solution(x2: float, t: float, bc: BoundaryCondition) -> float:
    """Temperature at height x2 over a straight boundary at time t.

    Dirichlet edge: erf(x2/sqrt(4t)).  Open edge: 1 - erfc(x2/sqrt(4t))/2.
    Consistent with unit diffusivity per the Laplacian generator (increment
    variance 2t per coordinate).
    """
    if not (x2 >= 0 and t > 0):
        raise ValueError(f"need x2 >= 0 and t > 0, got x2={x2!r}, t={t!r}")
    xi = x2 / math.sqrt(4.0 * t)
    if bc is BoundaryCondition.DIRICHLET:
        return math.erf(xi)
    return 1.0 - 0.5 * math.erfc(xi)
