"""Small-time heat-content asymptotics of planar polygons with mixed
Dirichlet/open edges, verified against a killed-Brownian-motion Monte Carlo
oracle and special-function identities."""

from .coefficients import (
    AngleClass,
    coeff_a_closed,
    coeff_a_integral,
    coeff_b,
    coeff_c,
    coeff_for,
)
from .expansion import (
    ExpansionCoefficients,
    SectorSpec,
    cusp_correction,
    cusp_double_integral,
    eval_expansion,
    half_space_solution,
    heat_content_coeffs,
    rectangle_correction,
    remainder_scale,
    sector_heat_content_DO,
)
from .geometry import (
    BoundaryCondition,
    GeometryError,
    Loop,
    PartitionParams,
    Polygon,
    VertexAngle,
    area,
    classify_vertices,
    lengths_by_type,
    partition_params,
    point_in_domain,
    polygon_from_dict,
    polygon_to_dict,
    segment_hits_dirichlet,
    validate,
)
from .mc_oracle import (
    MCConfig,
    MCEstimate,
    PathOutcome,
    estimate_heat_content,
    estimate_sector_heat_content,
    estimate_solution_at,
    simulate_path,
)
from .numerics import (
    NonFiniteSampleError,
    QuadConfig,
    QuadratureBudgetError,
    QuadResult,
    erf,
    erfc,
    integrate_finite,
    integrate_semi_infinite,
)
from .wedge_kernel import (
    PolarPoint,
    WedgeSpec,
    bessel_K_imag,
    check_cosine_transform,
    check_log_ratio,
    check_radial_moment,
    check_tanh_log_coth,
    green_hat_wedge,
)

__version__ = "0.1.0"
